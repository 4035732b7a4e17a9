"""GF(p^2) as F_p[x]/(f) with lookup tables.

Element a + b x is encoded as the integer a + p*b.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

# x^2 = -(c1 x + c0): coefficients (c0, c1) of the monic irreducible x^2 + c1 x + c0
_MODULI = {2: (1, 1), 3: (1, 0), 5: (2, 0)}


@dataclass(frozen=True)
class FqConfig:
    p: int
    add: tuple = field(repr=False, default=())
    mul: tuple = field(repr=False, default=())
    neg: tuple = field(repr=False, default=())
    inv: tuple = field(repr=False, default=())

    @property
    def size(self) -> int:
        return self.p * self.p

    @property
    def q(self) -> int:
        """The value of the indeterminate q matching this field."""
        return self.p

    def name(self) -> str:
        return f"GF({self.size})"


def _build(p: int) -> FqConfig:
    if p not in _MODULI:
        raise ValueError(f"unsupported characteristic {p}; choose 2, 3 or 5")
    c0, c1 = _MODULI[p]
    Q = p * p

    def split(x):
        return x % p, x // p

    def enc(a, b):
        return (a % p) + p * (b % p)

    add = [enc(split(x)[0] + split(y)[0], split(x)[1] + split(y)[1]) for x in range(Q) for y in range(Q)]
    mul = []
    for x in range(Q):
        a, b = split(x)
        for y in range(Q):
            c, d = split(y)
            # (a + b x)(c + d x) = ac + (ad + bc) x + bd x^2,  x^2 = -c1 x - c0
            lo = a * c - b * d * c0
            hi = a * d + b * c - b * d * c1
            mul.append(enc(lo, hi))
    neg = [enc(-split(x)[0], -split(x)[1]) for x in range(Q)]
    inv = [0] * Q
    for x in range(1, Q):
        hits = [y for y in range(1, Q) if mul[x * Q + y] == 1]
        if len(hits) != 1:
            raise AssertionError(f"modulus for p={p} is not irreducible")
        inv[x] = hits[0]
    cfg = FqConfig(p, tuple(add), tuple(mul), tuple(neg), tuple(inv))
    _verify(cfg)
    return cfg


def _verify(cfg: FqConfig) -> None:
    Q = cfg.size
    A, M = cfg.add, cfg.mul
    for x in range(Q):
        if A[x * Q] != x or M[x * Q + 1] != x or A[x * Q + cfg.neg[x]] != 0:
            raise AssertionError("identity or negation table broken")
        for y in range(Q):
            if A[x * Q + y] != A[y * Q + x] or M[x * Q + y] != M[y * Q + x]:
                raise AssertionError("field tables not commutative")
            for z in range(Q):
                if A[A[x * Q + y] * Q + z] != A[x * Q + A[y * Q + z]]:
                    raise AssertionError("addition not associative")
                if M[M[x * Q + y] * Q + z] != M[x * Q + M[y * Q + z]]:
                    raise AssertionError("multiplication not associative")
                if M[x * Q + A[y * Q + z]] != A[M[x * Q + y] * Q + M[x * Q + z]]:
                    raise AssertionError("distributivity fails")


@lru_cache(maxsize=None)
def field_for(p: int) -> FqConfig:
    return _build(p)


def field_from_size(size: int) -> FqConfig:
    for p in _MODULI:
        if p * p == size:
            return field_for(p)
    raise ValueError(f"no supported field of size {size}; choose 4, 9 or 25")
