"""Bar involution and canonical bases of tensor products.

The involution on V_{d_1} x ... x V_{d_k} is assembled one factor at a time:
for a based module M and the next factor V,

    Psi_{M x V} = Theta o (Psi_M x sigma),   Theta = sum_n a_n F^n x E^n,

where a_0 = 1 and the remaining a_n are the unique scalars making
Delta(x) Theta = Theta barDelta(x) hold for x = E, F on M x V.  They are found
by an exact linear solve, never looked up.  All defining properties of the
resulting operator are re-checked before it is returned.

The canonical basis is the unique bar-invariant family
    dia_w = e_w + sum_{a > w} kappa_a e_a,   kappa_a in q^-1 Z[q^-1],
obtained block by block, largest compositions first.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import linalg
from .qlaurent import LaurentInt, ONE, ZERO, monomial, qint
from .tensorspace import (DELTA, TensorVector, add_vec, apply_op, block_order,
                          check_shape, compose, compositions, op_add, op_equal,
                          operator_matrix, prefix_less)


class ConventionError(AssertionError):
    """A structural identity failed; the chosen conventions are inconsistent."""


def _bar_op(op: dict) -> dict:
    return {c: {r: v.bar() for r, v in col.items()} for c, col in op.items()}


@dataclass(frozen=True)
class BarOperator:
    shape: tuple
    matrix: dict          # column w -> {row a: coefficient}; acts conjugate-linearly
    theta: tuple          # a_n for the last adjoined factor (a_0 first)

    def apply(self, v: TensorVector) -> TensorVector:
        if v.shape != self.shape or v.dual:
            raise ValueError("vector not in the elementary basis of this shape")
        out: dict = {}
        for w, c in v.coeffs.items():
            out = add_vec(out, self.matrix[w], c.bar())
        return TensorVector(self.shape, out)

    def apply_coeffs(self, coeffs: dict) -> dict:
        out: dict = {}
        for w, c in coeffs.items():
            out = add_vec(out, self.matrix[w], c.bar())
        return out


# ---------------------------------------------------------------------------
# Theta solve


def _split_ops(M: tuple, dv: int):
    """Delta and barDelta of E, F on M x V_dv, with M carrying its Delta-action."""
    shape = M + (dv,)
    EM = operator_matrix("E", M)
    FM = operator_matrix("F", M)
    wt = {w: sum(M) - 2 * sum(w) for w in compositions(M)}
    barE: dict = {}
    barF: dict = {}
    for w in compositions(M):
        for x in range(dv + 1):
            col = w + (x,)
            e: dict = {}
            for w2, c in EM[w].items():
                e[w2 + (x,)] = c
            if x >= 1:
                e = add_vec(e, {w + (x - 1,): monomial(-wt[w]) * qint(dv - x + 1)})
            barE[col] = e
            f: dict = {}
            for w2, c in FM[w].items():
                f[w2 + (x,)] = c * monomial(dv - 2 * x)
            if x < dv:
                f = add_vec(f, {w + (x + 1,): qint(x + 1)})
            barF[col] = f
    return {
        "E": (operator_matrix("E", shape), barE),
        "F": (operator_matrix("F", shape), barF),
    }


def _theta_terms(M: tuple, dv: int, nmax: int) -> list:
    """Operators F^n x E^n on M x V_dv for n = 0..nmax."""
    FM = operator_matrix("F", M)
    terms = []
    fpow = {w: {w: ONE} for w in compositions(M)}
    for n in range(nmax + 1):
        op: dict = {}
        for w in compositions(M):
            for x in range(dv + 1):
                if x < n:
                    op[w + (x,)] = {}
                    continue
                epow = ONE
                for s in range(n):
                    epow = epow * qint(dv - (x - s) + 1)
                op[w + (x,)] = {w2 + (x - n,): c * epow for w2, c in fpow[w].items()}
        terms.append(op)
        fpow = {w: apply_op(FM, col) for w, col in fpow.items()}
    return terms


def _solve_theta(M: tuple, dv: int):
    nmax = min(sum(M), dv)
    terms = _theta_terms(M, dv, nmax)
    ops = _split_ops(M, dv)
    if nmax == 0:
        return (ONE,), terms[0], ops
    rows, rhs = [], []
    for delta, bar_delta in ops.values():
        comm = [op_add(compose(delta, t), compose(t, bar_delta), -1) for t in terms]
        keys = set()
        for c in comm:
            for col, image in c.items():
                keys.update((col, row) for row in image)
        for col, row in sorted(keys):
            row_eq = {}
            for n in range(1, nmax + 1):
                v = comm[n].get(col, {}).get(row)
                if v:
                    row_eq[n - 1] = v
            b = comm[0].get(col, {}).get(row)
            if row_eq or b:
                rows.append(row_eq)
                rhs.append(-b if b else ZERO)
    try:
        sol = linalg.solve(rows, rhs, nmax)
    except ValueError as exc:
        raise ConventionError(f"Theta solve failed on {M} x V_{dv}: {exc}") from exc
    coeffs = (ONE,) + tuple(sol.get(n - 1, ZERO) for n in range(1, nmax + 1))
    theta: dict = {}
    for a, t in zip(coeffs, terms):
        if a:
            theta = op_add(theta, t, a)
    return coeffs, theta, ops


@lru_cache(maxsize=None)
def build_bar_operator(shape) -> BarOperator:
    shape = check_shape(shape)
    if len(shape) == 1:
        ident = {w: {w: ONE} for w in compositions(shape)}
        return BarOperator(shape, ident, (ONE,))
    M, dv = shape[:-1], shape[-1]
    prev = build_bar_operator(M)
    coeffs, theta, ops = _solve_theta(M, dv)
    for delta, bar_delta in ops.values():
        if not op_equal(compose(delta, theta), compose(theta, bar_delta)):
            raise ConventionError(f"Theta does not intertwine on {shape}")
    matrix = {}
    for w in compositions(M):
        for x in range(dv + 1):
            src = {w2 + (x,): c for w2, c in prev.matrix[w].items()}
            matrix[w + (x,)] = apply_op(theta, src)
    psi = BarOperator(shape, matrix, coeffs)
    _certify_bar(psi)
    return psi


def _certify_bar(psi: BarOperator) -> None:
    shape = psi.shape
    P = psi.matrix
    top = tuple(0 for _ in shape)
    if P[top] != {top: ONE}:
        raise ConventionError("bar operator moves the highest vector")
    # involution: P * bar(P) = I
    sq = compose(P, _bar_op(P))
    if not op_equal(sq, {w: {w: ONE} for w in compositions(shape)}):
        raise ConventionError(f"bar operator on {shape} is not an involution")
    for gen, sgen in (("E", "E"), ("F", "F"), ("K", "Ki")):
        X = operator_matrix(gen, shape)
        Y = operator_matrix(sgen, shape)
        if not op_equal(compose(P, _bar_op(X)), compose(Y, P)):
            raise ConventionError(f"bar operator on {shape} fails to intertwine {gen}")


# ---------------------------------------------------------------------------
# canonical basis


@dataclass(frozen=True)
class CanonicalTable:
    shape: tuple
    kappa: dict      # w -> {a: kappa^{d,w}_a}
    inverse: dict    # a -> {w: coefficient of dia_w in e_a}

    def vector(self, w) -> TensorVector:
        return TensorVector(self.shape, self.kappa[tuple(w)])

    def to_json(self) -> dict:
        return {
            "shape": list(self.shape),
            "kappa": [
                {"w": list(w), "terms": [[list(a), str(c)] for a, c in sorted(col.items())]}
                for w, col in sorted(self.kappa.items())
            ],
        }


def _negative_part(x) -> LaurentInt:
    return LaurentInt({e: c for e, c in x.coeffs().items() if e < 0})


def _is_bar_antisymmetric(x) -> bool:
    return isinstance(x, LaurentInt) and x.bar() == -x


@lru_cache(maxsize=None)
def canonical_table(shape) -> CanonicalTable:
    shape = check_shape(shape)
    psi = build_bar_operator(shape)
    kappa: dict = {}
    for total in range(sum(shape) + 1):
        order = block_order(shape, total)
        for pos, w in enumerate(order):
            rest = add_vec(psi.matrix[w], {w: ONE}, -1)
            if any(not prefix_less(w, a) for a in rest):
                raise ConventionError(f"bar operator not triangular at {w} in {shape}")
            correction: dict = {w: ONE}
            for a in reversed(order[:pos]):
                r = rest.get(a)
                if not r:
                    continue
                if not _is_bar_antisymmetric(r):
                    raise ConventionError(f"no bar-invariant correction at {w}, {a} in {shape}")
                rest = add_vec(rest, kappa[a], -r)
                p = _negative_part(r)
                if p:
                    correction = add_vec(correction, kappa[a], p)
            if rest:
                raise ConventionError(f"triangular decomposition failed at {w} in {shape}")
            for a, c in correction.items():
                if a == w:
                    continue
                if not isinstance(c, LaurentInt) or c.high >= 0:
                    raise ConventionError(f"coefficient {c} outside q^-1 Z[q^-1] at {w}, {a}")
            if psi.apply_coeffs(correction) != correction:
                raise ConventionError(f"canonical vector {w} of {shape} is not bar-invariant")
            kappa[w] = correction
    return CanonicalTable(shape, kappa, _unitriangular_inverse(shape, kappa))


def _unitriangular_inverse(shape, kappa) -> dict:
    inverse: dict = {}
    for total in range(sum(shape) + 1):
        order = block_order(shape, total)
        # e_a = dia_a - sum_{b > a} kappa^a_b e_b, largest first
        for a in order:
            col: dict = {a: ONE}
            for b, c in kappa[a].items():
                if b != a:
                    col = add_vec(col, inverse[b], -c)
            inverse[a] = col
    return inverse


def kappa(shape, w, a):
    table = canonical_table(tuple(shape))
    return table.kappa.get(tuple(w), {}).get(tuple(a), ZERO)


def is_positive_offdiagonal(x) -> bool:
    """x lies in q^-1 N[q^-1]."""
    if not isinstance(x, LaurentInt) or not x:
        return False
    return all(e < 0 and c > 0 for e, c in x.coeffs().items())


@lru_cache(maxsize=None)
def dual_canonical_table(shape) -> dict:
    """w -> the vector of the reversed space pairing to 1 with dia_w and 0 with
    every other canonical vector, written in the reversed dual basis."""
    shape = check_shape(shape)
    table = canonical_table(shape)
    rshape = tuple(reversed(shape))
    out = {}
    for u in compositions(shape):
        coeffs = {}
        for a in compositions(shape):
            c = table.inverse[a].get(u)
            if c:
                coeffs[tuple(reversed(a))] = c
        out[u] = TensorVector(rshape, coeffs, dual=True)
    return out
