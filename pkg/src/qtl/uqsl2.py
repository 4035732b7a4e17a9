"""The irreducible module V_d of U_q(sl2) and the involutions omega, sigma.

Vectors are keyed by weight m in {d, d-2, ..., -d}.  ``IrrepVector`` with
``dual=False`` is written in the elementary basis v_m; with ``dual=True`` in
the dual basis v^m = qbinom(d, (d-m)/2)^-1 v_m.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .qlaurent import ONE, ZERO, monomial, qbinom, qint, to_scalar

GENERATORS = ("E", "F", "K", "Ki")


@dataclass(frozen=True)
class IrrepVector:
    d: int
    coeffs: dict = field(default_factory=dict)
    dual: bool = False

    def __post_init__(self):
        if self.d < 0:
            raise ValueError("highest weight must be non-negative")
        clean = {}
        for m, c in self.coeffs.items():
            if abs(m) > self.d or (self.d - m) % 2:
                raise ValueError(f"weight {m} not in V_{self.d}")
            c = to_scalar(c)
            if c:
                clean[m] = c
        object.__setattr__(self, "coeffs", clean)

    def __add__(self, other: "IrrepVector") -> "IrrepVector":
        _same(self, other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, ZERO) + c
        return IrrepVector(self.d, out, self.dual)

    def scale(self, s) -> "IrrepVector":
        return IrrepVector(self.d, {m: s * c for m, c in self.coeffs.items()}, self.dual)

    def __eq__(self, other):
        if not isinstance(other, IrrepVector):
            return NotImplemented
        return (self.d, self.dual, self.coeffs) == (other.d, other.dual, other.coeffs)

    def __hash__(self):
        return hash((self.d, self.dual, frozenset(self.coeffs.items())))

    def to_json(self) -> dict:
        return {"d": self.d, "dual": self.dual,
                "coeffs": {str(m): str(c) for m, c in sorted(self.coeffs.items(), reverse=True)}}


def _same(u, v):
    if u.d != v.d or u.dual != v.dual:
        raise ValueError("vectors live in different modules or bases")


def basis_vector(d: int, m: int, dual: bool = False) -> IrrepVector:
    return IrrepVector(d, {m: ONE}, dual)


def weights(d: int) -> list:
    return list(range(d, -d - 1, -2))


def act_coeff(gen: str, d: int, m: int):
    """Image of v_m under a generator as (new weight, scalar) or None."""
    if gen == "E":
        if m == d:
            return None
        return m + 2, qint((d + m) // 2 + 1)
    if gen == "F":
        if m == -d:
            return None
        return m - 2, qint((d - m) // 2 + 1)
    if gen == "K":
        return m, monomial(m)
    if gen == "Ki":
        return m, monomial(-m)
    raise ValueError(f"unknown generator {gen!r}")


def act(gen: str, v: IrrepVector) -> IrrepVector:
    elementary = from_dual(v) if v.dual else v
    out: dict = {}
    for m, c in elementary.coeffs.items():
        img = act_coeff(gen, v.d, m)
        if img is None:
            continue
        m2, s = img
        out[m2] = out.get(m2, ZERO) + s * c
    res = IrrepVector(v.d, out)
    return to_dual(res) if v.dual else res


def pair(u: IrrepVector, v: IrrepVector):
    """Symmetric form with <v_{d-2k}, v_{d-2l}> = delta_kl qbinom(d,k)."""
    if u.d != v.d:
        raise ValueError("pairing needs equal highest weights")
    u = from_dual(u) if u.dual else u
    v = from_dual(v) if v.dual else v
    total = ZERO
    for m, c in u.coeffs.items():
        c2 = v.coeffs.get(m)
        if c2 is not None:
            total = total + c * c2 * qbinom(u.d, (u.d - m) // 2)
    return total


def to_dual(v: IrrepVector) -> IrrepVector:
    """Rewrite an elementary-basis vector in the dual basis."""
    if v.dual:
        return v
    return IrrepVector(v.d, {m: c * qbinom(v.d, (v.d - m) // 2) for m, c in v.coeffs.items()}, True)


def from_dual(v: IrrepVector) -> IrrepVector:
    if not v.dual:
        return v
    return IrrepVector(v.d, {m: c / qbinom(v.d, (v.d - m) // 2) for m, c in v.coeffs.items()}, False)


# ---------------------------------------------------------------------------
# words


@dataclass(frozen=True)
class GeneratorWord:
    letters: tuple
    scalar: object = ONE

    def __post_init__(self):
        for g in self.letters:
            if g not in GENERATORS:
                raise ValueError(f"unknown generator {g!r}")
        object.__setattr__(self, "letters", tuple(self.letters))
        object.__setattr__(self, "scalar", to_scalar(self.scalar))

    def __str__(self):
        body = "".join("K^-1" if g == "Ki" else g for g in self.letters) or "1"
        return f"({self.scalar})*{body}"


_OMEGA = {"E": "F", "F": "E", "K": "K", "Ki": "Ki"}
_SIGMA = {"E": "E", "F": "F", "K": "Ki", "Ki": "K"}


def omega(w: GeneratorWord) -> GeneratorWord:
    """E<->F, K fixed, products reversed; linear in the scalar."""
    return GeneratorWord(tuple(_OMEGA[g] for g in reversed(w.letters)), w.scalar)


def sigma(w: GeneratorWord) -> GeneratorWord:
    """K<->K^-1 and q->q^-1, products kept in order."""
    return GeneratorWord(tuple(_SIGMA[g] for g in w.letters), w.scalar.bar())


def act_word(w: GeneratorWord, v: IrrepVector) -> IrrepVector:
    for g in reversed(w.letters):
        v = act(g, v)
    return v.scale(w.scalar)
