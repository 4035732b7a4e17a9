"""Strata of the tensor product variety and functions constant on them.

A label (w, r, n) records the graded dimensions of W, im t and ker t with
respect to the flag.  Functions are stored by their value on each stratum;
the basic function f_{w,r,n} equals k_{w,r,n} times the stratum indicator.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

from .qlaurent import ONE, ZERO, LaurentInt, monomial, qint, to_scalar
from .tensorspace import TensorVector, check_shape, compositions


class StratumLabel(NamedTuple):
    w: tuple
    r: tuple
    n: tuple


def label(w, r, n) -> StratumLabel:
    return StratumLabel(tuple(w), tuple(r), tuple(n))


# ---------------------------------------------------------------------------
# which strata exist


def transport_witness(shape, r, n):
    """Arc multiplicities m[i][j] (i < j) with row sums r and column sums d - n.

    Returns None when no such matrix exists.  Rows to the left can serve any
    column to their right, so a greedy sweep decides feasibility.
    """
    k = len(shape)
    m = [[0] * k for _ in range(k)]
    supply: list = []   # stack of [row, remaining]
    for j in range(k):
        need = shape[j] - n[j]
        while need:
            if not supply:
                return None
            row = supply[-1]
            take = min(need, row[1])
            m[row[0]][j] += take
            row[1] -= take
            need -= take
            if not row[1]:
                supply.pop()
        if r[j]:
            supply.append([j, r[j]])
    if supply:
        return None
    return m


def is_realizable_pair(shape, r, n) -> bool:
    shape = tuple(shape)
    if len(r) != len(shape) or len(n) != len(shape):
        return False
    if any(not (0 <= x <= y <= d) for x, y, d in zip(r, n, shape)):
        return False
    if sum(r) + sum(n) != sum(shape):
        return False
    return transport_witness(shape, r, n) is not None


def is_realizable(shape, lab) -> bool:
    w, r, n = lab
    if len(w) != len(shape):
        return False
    if any(not (x <= y <= z) for x, y, z in zip(r, w, n)):
        return False
    return is_realizable_pair(shape, r, n)


@lru_cache(maxsize=None)
def realizable_pairs(shape) -> tuple:
    shape = check_shape(shape)
    out = []
    for r in compositions(shape):
        for n in compositions(shape):
            if is_realizable_pair(shape, r, n):
                out.append((r, n))
    return tuple(out)


def slice_compositions(r, n) -> list:
    return [tuple(x + y for x, y in zip(r, u))
            for u in itertools.product(*(range(b - a + 1) for a, b in zip(r, n)))]


@lru_cache(maxsize=None)
def all_labels(shape) -> tuple:
    shape = check_shape(shape)
    out = []
    for r, n in realizable_pairs(shape):
        for w in slice_compositions(r, n):
            out.append(StratumLabel(w, r, n))
    return tuple(sorted(out))


# ---------------------------------------------------------------------------
# basic functions


def k_exponent(lab) -> int:
    w, r, n = lab
    k = len(w)
    return sum(r[i] * w[j] + w[i] * n[j] - w[i] * w[j] for i in range(k) for j in range(i + 1, k))


def k_factor(lab) -> LaurentInt:
    return monomial(k_exponent(lab))


@dataclass(frozen=True)
class InvariantFunction:
    shape: tuple
    values: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "shape", check_shape(self.shape))
        clean = {}
        for lab, v in self.values.items():
            lab = label(*lab)
            v = to_scalar(v)
            if v:
                clean[lab] = v
        object.__setattr__(self, "values", clean)

    def __add__(self, other: "InvariantFunction") -> "InvariantFunction":
        return self.combine(other, ONE)

    def __sub__(self, other: "InvariantFunction") -> "InvariantFunction":
        return self.combine(other, -ONE)

    def combine(self, other: "InvariantFunction", s) -> "InvariantFunction":
        if self.shape != other.shape:
            raise ValueError("functions on different shapes")
        out = dict(self.values)
        for lab, v in other.values.items():
            out[lab] = out.get(lab, ZERO) + s * v
        return InvariantFunction(self.shape, out)

    def scale(self, s) -> "InvariantFunction":
        return InvariantFunction(self.shape, {lab: s * v for lab, v in self.values.items()})

    def support(self) -> set:
        return set(self.values)

    def value(self, lab):
        return self.values.get(label(*lab), ZERO)

    def f_coefficients(self) -> dict:
        """Coefficients in the basic-function basis."""
        return {lab: v / k_factor(lab) for lab, v in self.values.items()}

    def __eq__(self, other):
        if not isinstance(other, InvariantFunction):
            return NotImplemented
        return self.shape == other.shape and self.values == other.values

    def __hash__(self):
        return hash((self.shape, frozenset(self.values.items())))

    def to_json(self) -> dict:
        return {
            "shape": list(self.shape),
            "values": [[[list(x) for x in lab], str(v)] for lab, v in sorted(self.values.items())],
        }


def from_f_coefficients(shape, coeffs: dict) -> InvariantFunction:
    return InvariantFunction(shape, {lab: c * k_factor(lab) for lab, c in coeffs.items()})


def basic_function(shape, lab) -> InvariantFunction:
    lab = label(*lab)
    if not is_realizable(shape, lab):
        raise ValueError(f"stratum {lab} is empty")
    return InvariantFunction(shape, {lab: k_factor(lab)})


def indicator(shape, labels) -> InvariantFunction:
    return InvariantFunction(shape, {label(*lab): ONE for lab in labels})


def _f_image(gen: str, lab: StratumLabel, total: int) -> dict:
    w, r, n = lab
    k = len(w)
    if gen == "K":
        return {lab: monomial(total - 2 * sum(w))}
    if gen == "Ki":
        return {lab: monomial(2 * sum(w) - total)}
    step = [n[i] - r[i] - 2 * (w[i] - r[i]) for i in range(k)]
    out = {}
    if gen == "E":
        before = 0
        for j in range(k):
            if w[j] > r[j]:
                w2 = w[:j] + (w[j] - 1,) + w[j + 1:]
                out[StratumLabel(w2, r, n)] = monomial(before) * qint(n[j] - w[j] + 1)
            before += step[j]
        return out
    if gen == "F":
        after = sum(step)
        for j in range(k):
            after -= step[j]
            if w[j] < n[j]:
                w2 = w[:j] + (w[j] + 1,) + w[j + 1:]
                out[StratumLabel(w2, r, n)] = monomial(-after) * qint(w[j] - r[j] + 1)
        return out
    raise ValueError(f"unknown generator {gen!r}")


def act_strata(gen: str, f: InvariantFunction) -> InvariantFunction:
    total = sum(f.shape)
    out: dict = {}
    for lab, c in f.f_coefficients().items():
        for lab2, s in _f_image(gen, lab, total).items():
            out[lab2] = out.get(lab2, ZERO) + c * s
    return from_f_coefficients(f.shape, out)


# ---------------------------------------------------------------------------
# slices and the tensor picture


def eta(r, n, f: InvariantFunction) -> TensorVector:
    """f_{w,r,n} -> elementary tensor e_{w-r} of shape n - r."""
    r, n = tuple(r), tuple(n)
    sub = tuple(b - a for a, b in zip(r, n))
    coeffs = {}
    for lab, c in f.f_coefficients().items():
        if lab.r != r or lab.n != n:
            raise ValueError(f"label {lab} outside the slice {(r, n)}")
        coeffs[tuple(x - y for x, y in zip(lab.w, r))] = c
    return TensorVector(sub, coeffs)


def eta_inv(shape, r, n, v: TensorVector) -> InvariantFunction:
    r, n = tuple(r), tuple(n)
    sub = tuple(b - a for a, b in zip(r, n))
    if v.shape != sub or v.dual:
        raise ValueError("vector not in the elementary basis of the slice shape")
    if not is_realizable_pair(shape, r, n):
        raise ValueError(f"slice {(r, n)} is empty")
    coeffs = {StratumLabel(tuple(x + y for x, y in zip(u, r)), r, n): c for u, c in v.coeffs.items()}
    return from_f_coefficients(shape, coeffs)


# ---------------------------------------------------------------------------
# point counts and dimensions


def dim_component(shape, w) -> int:
    d = sum(shape)
    s = sum(w)
    return sum(a * b for a, b in itertools.combinations(shape, 2)) + s * (d - s)


def grassmannian_count(n: int, k: int) -> LaurentInt:
    """Number of k-planes in n-space over the field with q^2 elements."""
    from .qlaurent import qbinom
    return monomial(k * (n - k)) * qbinom(n, k)


def rank_count(m: int, n: int, rho: int) -> LaurentInt:
    """Number of m x n matrices of rank rho over the field with q^2 elements."""
    if rho > min(m, n) or rho < 0:
        return ZERO
    num = ONE
    den = ONE
    for i in range(rho):
        num = num * (monomial(2 * m) - monomial(2 * i)) * (monomial(2 * n) - monomial(2 * i))
        den = den * (monomial(2 * rho) - monomial(2 * i))
    return num.divexact(den)


def pair_count(total: int, omega: int, rho: int) -> LaurentInt:
    """Pairs (W, t) with dim W = omega, rank t = rho, im t in W in ker t."""
    if not 0 <= rho <= omega <= total - rho:
        return ZERO
    return grassmannian_count(total, omega) * rank_count(total - omega, omega, rho)


def stratum_point_count(shape, lab) -> LaurentInt:
    """Number of points of A_{w,r,n} over the field with q^2 elements."""
    from .intertwiners import flag_count
    lab = label(*lab)
    if not is_realizable(shape, lab):
        return ZERO
    return pair_count(sum(shape), sum(lab.w), sum(lab.r)) * flag_count(shape, lab)


def stratum_dim(shape, lab) -> int:
    """Dimension of A_{w,r,n}: half the degree of its point count."""
    c = stratum_point_count(shape, lab)
    if not c:
        raise ValueError(f"stratum {tuple(lab)} is empty")
    return c.high // 2


# ---------------------------------------------------------------------------
# the quiver side


@dataclass(frozen=True)
class QuiverFunction:
    d: int
    values: dict = field(default_factory=dict)   # (w, r) -> scalar

    def __post_init__(self):
        clean = {}
        for (w, r), v in self.values.items():
            if not 0 <= r <= w <= self.d - r:
                raise ValueError(f"quiver label {(w, r)} outside r <= w <= d - r")
            v = to_scalar(v)
            if v:
                clean[(w, r)] = v
        object.__setattr__(self, "values", clean)

    def combine(self, other: "QuiverFunction", s) -> "QuiverFunction":
        if self.d != other.d:
            raise ValueError("quiver functions of different dimension")
        out = dict(self.values)
        for key, v in other.values.items():
            out[key] = out.get(key, ZERO) + s * v
        return QuiverFunction(self.d, out)

    def scale(self, s) -> "QuiverFunction":
        return QuiverFunction(self.d, {k: s * v for k, v in self.values.items()})

    def to_json(self) -> dict:
        return {"d": self.d, "values": [[w, r, str(v)] for (w, r), v in sorted(self.values.items())]}


def act_quiver(gen: str, f: QuiverFunction) -> QuiverFunction:
    d = f.d
    out: dict = {}
    for (w, r), c in f.values.items():
        if gen == "E":
            if w - 1 >= r:
                out[(w - 1, r)] = out.get((w - 1, r), ZERO) + c * qint(d - (w - 1) - r)
        elif gen == "F":
            if w + 1 <= d - r:
                out[(w + 1, r)] = out.get((w + 1, r), ZERO) + c * qint(w + 1 - r)
        elif gen == "K":
            out[(w, r)] = out.get((w, r), ZERO) + c * monomial(d - 2 * w)
        elif gen == "Ki":
            out[(w, r)] = out.get((w, r), ZERO) + c * monomial(2 * w - d)
        else:
            raise ValueError(f"unknown generator {gen!r}")
    return QuiverFunction(d, out)
