"""Tensor products V_{d_1} x ... x V_{d_k}.

An elementary tensor is indexed by a composition w with 0 <= w_i <= d_i; its
i-th factor is v_{d_i - 2 w_i}.  Operators are stored sparsely as
``{column w: {row w': coefficient}}``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .qlaurent import ONE, ZERO, monomial, qbinom, qint, to_scalar

DELTA = "delta"
BAR_DELTA = "bar"


def check_shape(d) -> tuple:
    d = tuple(int(x) for x in d)
    if not d or any(x < 0 for x in d):
        raise ValueError(f"invalid shape {d}")
    return d


@lru_cache(maxsize=None)
def compositions(d: tuple, total: int | None = None) -> tuple:
    """All w with 0 <= w_i <= d_i (optionally |w| = total), lexicographic."""
    out = []
    for w in itertools.product(*(range(x + 1) for x in d)):
        if total is None or sum(w) == total:
            out.append(w)
    return tuple(out)


def prefix_sums(a) -> tuple:
    return tuple(itertools.accumulate(a))


def prefix_leq(a, b) -> bool:
    """a <= b iff every prefix sum of a is at most that of b."""
    if len(a) != len(b):
        raise ValueError("compositions of different length")
    sa = sb = 0
    for x, y in zip(a, b):
        sa += x
        sb += y
        if sa > sb:
            return False
    return True


def prefix_less(a, b) -> bool:
    return tuple(a) != tuple(b) and prefix_leq(a, b)


def block_order(d: tuple, total: int) -> list:
    """Compositions of a weight block, listed so that larger elements come first."""
    return sorted(compositions(d, total), key=prefix_sums, reverse=True)


@dataclass(frozen=True)
class TensorVector:
    shape: tuple
    coeffs: dict = field(default_factory=dict)
    dual: bool = False

    def __post_init__(self):
        shape = check_shape(self.shape)
        object.__setattr__(self, "shape", shape)
        clean = {}
        for w, c in self.coeffs.items():
            w = tuple(w)
            if len(w) != len(shape) or any(x < 0 or x > y for x, y in zip(w, shape)):
                raise ValueError(f"composition {w} invalid for shape {shape}")
            c = to_scalar(c)
            if c:
                clean[w] = c
        object.__setattr__(self, "coeffs", clean)

    def __add__(self, other: "TensorVector") -> "TensorVector":
        if self.shape != other.shape or self.dual != other.dual:
            raise ValueError("vectors live in different spaces")
        return TensorVector(self.shape, add_vec(self.coeffs, other.coeffs), self.dual)

    def __sub__(self, other: "TensorVector") -> "TensorVector":
        return self + other.scale(-1)

    def scale(self, s) -> "TensorVector":
        return TensorVector(self.shape, {w: s * c for w, c in self.coeffs.items()}, self.dual)

    def __eq__(self, other):
        if not isinstance(other, TensorVector):
            return NotImplemented
        return (self.shape, self.dual, self.coeffs) == (other.shape, other.dual, other.coeffs)

    def __hash__(self):
        return hash((self.shape, self.dual, frozenset(self.coeffs.items())))

    def to_json(self) -> dict:
        return {
            "shape": list(self.shape),
            "dual": self.dual,
            "coeffs": [[list(w), str(c)] for w, c in sorted(self.coeffs.items())],
        }


def elementary(shape, w) -> TensorVector:
    return TensorVector(tuple(shape), {tuple(w): ONE})


def norm_factor(shape, w):
    """Pairing of an elementary tensor with its reversed partner."""
    out = ONE
    for d, x in zip(shape, w):
        out = out * qbinom(d, x)
    return out


def to_dual(v: TensorVector) -> TensorVector:
    if v.dual:
        return v
    return TensorVector(v.shape, {w: c * norm_factor(v.shape, w) for w, c in v.coeffs.items()}, True)


def from_dual(v: TensorVector) -> TensorVector:
    if not v.dual:
        return v
    return TensorVector(v.shape, {w: c / norm_factor(v.shape, w) for w, c in v.coeffs.items()}, False)


# ---------------------------------------------------------------------------
# sparse helpers shared by the rest of the package


def add_vec(a: dict, b: dict, s=None) -> dict:
    out = dict(a)
    for k, v in b.items():
        nv = out.get(k, ZERO) + (v if s is None else s * v)
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


def apply_op(op: dict, vec: dict) -> dict:
    out: dict = {}
    for col, c in vec.items():
        image = op.get(col)
        if not image:
            continue
        for row, v in image.items():
            nv = out.get(row, ZERO) + c * v
            if nv:
                out[row] = nv
            else:
                out.pop(row, None)
    return out


def compose(a: dict, b: dict) -> dict:
    """a after b."""
    return {col: apply_op(a, image) for col, image in b.items()}


def op_add(a: dict, b: dict, s=None) -> dict:
    keys = set(a) | set(b)
    return {k: add_vec(a.get(k, {}), b.get(k, {}), s) for k in keys}


def op_equal(a: dict, b: dict) -> bool:
    keys = set(a) | set(b)
    return all(a.get(k, {}) == b.get(k, {}) for k in keys)


# ---------------------------------------------------------------------------
# actions


def _image(gen: str, shape: tuple, w: tuple, coproduct: str) -> dict:
    out: dict = {}
    k = len(shape)
    if gen in ("K", "Ki"):
        wt = sum(shape) - 2 * sum(w)
        return {w: monomial(wt if gen == "K" else -wt)}
    sgn = 1 if coproduct == DELTA else -1
    if gen == "E":
        # K (or K^-1) on factors before i, E on factor i
        before = 0
        for i in range(k):
            if w[i] >= 1:
                w2 = w[:i] + (w[i] - 1,) + w[i + 1:]
                out[w2] = monomial(sgn * before) * qint(shape[i] - w[i] + 1)
            before += shape[i] - 2 * w[i]
        return out
    if gen == "F":
        # F on factor i, K^-1 (or K) on factors after i
        after = sum(shape) - 2 * sum(w)
        for i in range(k):
            after -= shape[i] - 2 * w[i]
            if w[i] < shape[i]:
                w2 = w[:i] + (w[i] + 1,) + w[i + 1:]
                out[w2] = monomial(-sgn * after) * qint(w[i] + 1)
        return out
    raise ValueError(f"unknown generator {gen!r}")


@lru_cache(maxsize=None)
def _operator(gen: str, shape: tuple, coproduct: str):
    return {w: _image(gen, shape, w, coproduct) for w in compositions(shape)}


def operator_matrix(gen: str, shape, coproduct: str = DELTA) -> dict:
    """Sparse matrix of a generator acting through the iterated (bar-)coproduct."""
    if coproduct not in (DELTA, BAR_DELTA):
        raise ValueError(f"unknown coproduct {coproduct!r}")
    return _operator(gen, check_shape(shape), coproduct)


def act_tensor(gen: str, v: TensorVector, coproduct: str = DELTA) -> TensorVector:
    vec = from_dual(v) if v.dual else v
    out = TensorVector(vec.shape, apply_op(operator_matrix(gen, vec.shape, coproduct), vec.coeffs))
    return to_dual(out) if v.dual else out


def act_word_tensor(letters, v: TensorVector, coproduct: str = DELTA) -> TensorVector:
    for g in reversed(tuple(letters)):
        v = act_tensor(g, v, coproduct)
    return v


def pair_reversed(u: TensorVector, v: TensorVector):
    """<v_{i1} x ... x v_{ik}, v^{lk} x ... x v^{l1}> = prod delta."""
    if tuple(reversed(u.shape)) != v.shape:
        raise ValueError("pair_reversed needs mutually reversed shapes")
    u = from_dual(u)
    vd = to_dual(v)
    total = ZERO
    for w, c in u.coeffs.items():
        c2 = vd.coeffs.get(tuple(reversed(w)))
        if c2 is not None:
            total = total + c * c2
    return total


def sigma_tensor(v: TensorVector) -> TensorVector:
    return TensorVector(v.shape, {w: c.bar() for w, c in v.coeffs.items()}, v.dual)


def reverse(v: TensorVector) -> TensorVector:
    return TensorVector(tuple(reversed(v.shape)),
                        {tuple(reversed(w)): c for w, c in v.coeffs.items()}, v.dual)
