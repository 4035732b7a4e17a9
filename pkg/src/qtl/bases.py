"""The elementary, canonical and decomposition-adapted bases of invariant functions."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from . import linalg
from .canbasis import canonical_table
from .matchings import (DOWN, UP, a_minus, a_plus, enumerate_lcm, leq_match,
                        match_from_weights, rn_of_match, unmatched_arrows)
from .qlaurent import ONE, ZERO, monomial, qint
from .strata import (InvariantFunction, StratumLabel, act_strata, all_labels,
                     dim_component, eta_inv, is_realizable, k_factor,
                     stratum_dim)
from .tensorspace import TensorVector, check_shape, compositions, prefix_leq


@dataclass
class BasisElementReport:
    basis: str
    index: tuple
    support: list
    dense_value: object
    certified: bool
    failures: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "basis": self.basis,
            "index": list(self.index),
            "support": [[list(x) for x in lab] for lab in sorted(self.support)],
            "dense_value": str(self.dense_value),
            "certified": self.certified,
            "failures": list(self.failures),
        }


def _sub(a, b) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def _add(a, b) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def dense_label(shape, w) -> StratumLabel:
    r, n = rn_of_match(match_from_weights(shape, w))
    return StratumLabel(tuple(w), r, n)


# ---------------------------------------------------------------------------
# B_e


@lru_cache(maxsize=None)
def basis_Be(shape) -> dict:
    shape = check_shape(shape)
    zero = tuple(0 for _ in shape)
    return {w: InvariantFunction(shape, {StratumLabel(w, zero, shape): k_factor((w, zero, shape))})
            for w in compositions(shape)}


# ---------------------------------------------------------------------------
# B_c


def matches_below(shape, w) -> list:
    M = match_from_weights(shape, w).unoriented()
    return [S for S in enumerate_lcm(shape) if leq_match(S, M)]


@lru_cache(maxsize=None)
def basis_Bc(shape) -> dict:
    shape = check_shape(shape)
    out = {}
    for w in compositions(shape):
        g = InvariantFunction(shape)
        for S in matches_below(shape, w):
            r, n = rn_of_match(S)
            table = canonical_table(_sub(n, r))
            vec = TensorVector(_sub(n, r), table.kappa[_sub(w, r)])
            g = g + eta_inv(shape, r, n, vec)
        out[w] = g
    return out


def closure_labels(shape, w) -> set:
    """Strata (a + r^S, r^S, n^S) with S <= M(d,w), a + r^S >= w, same total."""
    out = set()
    for S in matches_below(shape, w):
        r, n = rn_of_match(S)
        for a in compositions(_sub(n, r), sum(w) - sum(r)):
            x = _add(a, r)
            if prefix_leq(w, x):
                out.add(StratumLabel(x, r, n))
    return out


def bc_solution_nullity(shape, w) -> int:
    """Dimension of {h in Span(B_c) : h vanishes off the closure set of w}."""
    shape = check_shape(shape)
    basis = basis_Bc(shape)
    index = list(compositions(shape))
    allowed = closure_labels(shape, w)
    rows = []
    for lab in all_labels(shape):
        if lab in allowed:
            continue
        row = {j: basis[u].value(lab) for j, u in enumerate(index) if basis[u].value(lab)}
        if row:
            rows.append(row)
    null = linalg.nullspace(rows, len(index))
    # the solution must be a multiple of g_w itself
    target = index.index(tuple(w))
    for vec in null:
        if set(vec) != {target}:
            return -1
    return len(null)


def certify_Bc(shape) -> list:
    shape = check_shape(shape)
    basis = basis_Bc(shape)
    reports = []
    for w, g in basis.items():
        fails = []
        dense = dense_label(shape, w)
        dv = g.value(dense)
        if not dv:
            fails.append(f"zero on dense stratum {dense}")
        allowed = closure_labels(shape, w)
        for lab in g.support():
            if lab not in allowed:
                fails.append(f"support stratum {lab} outside closure criterion")
        nullity = bc_solution_nullity(shape, w)
        if nullity != 1:
            fails.append(f"solution space has dimension {nullity}, expected 1")
        reports.append(BasisElementReport("c", w, sorted(g.support()), dv, not fails, fails))
    return reports


# ---------------------------------------------------------------------------
# B_s


def kernel_type(shape, a) -> tuple:
    return rn_of_match(match_from_weights(shape, a))[1]


@lru_cache(maxsize=None)
def y_labels(shape, a) -> tuple:
    """Strata making up Y_a: kernel type n^{M(d,a)} and |w| = |a|."""
    n = kernel_type(shape, a)
    return tuple(lab for lab in all_labels(shape) if lab.n == n and sum(lab.w) == sum(a))


@lru_cache(maxsize=None)
def basis_Bs(shape) -> dict:
    shape = check_shape(shape)
    return {a: InvariantFunction(shape, {lab: ONE for lab in y_labels(shape, a)})
            for a in compositions(shape)}


def act_Bs(shape, gen: str, a):
    """Closed-form action on 1_{Y_a}: returns (scalar, a') or None for zero."""
    shape, a = tuple(shape), tuple(a)
    if gen in ("K", "Ki"):
        e = sum(shape) - 2 * sum(a)
        return monomial(e if gen == "K" else -e), a
    if gen == "F":
        a2 = a_plus(shape, a)
        if a2 is None:
            return None
        _, downs = unmatched_arrows(match_from_weights(shape, a2))
        return qint(len(downs)), a2
    if gen == "E":
        a2 = a_minus(shape, a)
        if a2 is None:
            return None
        ups, _ = unmatched_arrows(match_from_weights(shape, a2))
        return qint(len(ups)), a2
    raise ValueError(f"unknown generator {gen!r}")


def isotypic_blocks(shape) -> dict:
    """Unoriented arc set -> list of a with that underlying match."""
    blocks: dict = {}
    for a in compositions(shape):
        M = match_from_weights(shape, a)
        blocks.setdefault(M.arcs, []).append(a)
    return blocks


def isotypic_weight(shape, a) -> tuple:
    """(mu, m) such that 1_{Y_a} corresponds to v_m in V_mu."""
    ups, downs = unmatched_arrows(match_from_weights(shape, a))
    mu = len(ups) + len(downs)
    return mu, mu - 2 * len(downs)


def certify_Bs(shape) -> list:
    shape = check_shape(shape)
    basis = basis_Bs(shape)
    reports = []
    owner: dict = {}
    for a, f in basis.items():
        for lab in f.support():
            owner.setdefault(lab, []).append(a)
    for a, f in basis.items():
        fails = []
        dense = dense_label(shape, a)
        dv = f.value(dense)
        if dv != ONE:
            fails.append(f"value {dv} on dense stratum {dense}")
        top = dim_component(shape, a)
        for lab in f.support():
            if not prefix_leq(a, lab.w):
                fails.append(f"support stratum {lab} has W-type below {a}")
            dim = stratum_dim(shape, lab)
            if lab == dense and dim != top:
                fails.append(f"dense stratum has dimension {dim}, component {top}")
            if lab != dense and dim >= top:
                fails.append(f"support stratum {lab} of dimension {dim} is not smaller than {top}")
            if len(owner[lab]) > 1:
                fails.append(f"support stratum {lab} shared with {owner[lab]}")
        reports.append(BasisElementReport("s", a, sorted(f.support()), dv, not fails, fails))
    covered = set(owner)
    if covered != set(all_labels(shape)):
        missing = set(all_labels(shape)) - covered
        reports.append(BasisElementReport("s", (), sorted(missing), ZERO, False,
                                          ["strata not covered by any Y_a"]))
    return reports


def basis(shape, which: str) -> dict:
    if which == "e":
        return basis_Be(shape)
    if which == "c":
        return basis_Bc(shape)
    if which == "s":
        return basis_Bs(shape)
    raise ValueError(f"unknown basis {which!r}")


def certify(shape, which: str) -> list:
    if which == "c":
        return certify_Bc(shape)
    if which == "s":
        return certify_Bs(shape)
    if which == "e":
        reports = []
        for w, f in basis_Be(shape).items():
            zero = tuple(0 for _ in shape)
            lab = StratumLabel(w, zero, tuple(shape))
            ok = f.support() == {lab} and is_realizable(shape, lab)
            reports.append(BasisElementReport("e", w, sorted(f.support()), f.value(lab), ok,
                                              [] if ok else ["unexpected support"]))
        return reports
    raise ValueError(f"unknown basis {which!r}")


def expand_in_basis(f: InvariantFunction, which: str) -> dict:
    """Coefficients of f in one of the three bases (exact solve)."""
    shape = f.shape
    elems = basis(shape, which)
    index = list(elems)
    labels = sorted(set(f.support()).union(*(e.support() for e in elems.values())))
    rows, rhs = [], []
    for lab in labels:
        row = {j: elems[u].value(lab) for j, u in enumerate(index) if elems[u].value(lab)}
        rows.append(row)
        rhs.append(f.value(lab))
    sol = linalg.solve(rows, rhs, len(index))
    return {index[j]: c for j, c in sol.items()}


def bc_module_map_commutes(shape, gen: str) -> bool:
    """dia_w -> g_w intertwines gen (Delta-action on the tensor side)."""
    from .tensorspace import apply_op, operator_matrix
    shape = check_shape(shape)
    table = canonical_table(shape)
    basis = basis_Bc(shape)
    X = operator_matrix(gen, shape)

    def image(coeffs: dict) -> InvariantFunction:
        # coeffs in the elementary tensor basis -> sum of g's
        out = InvariantFunction(shape)
        dia: dict = {}
        for a, c in coeffs.items():
            for w, s in table.inverse[a].items():
                dia[w] = dia.get(w, ZERO) + c * s
        for w, c in dia.items():
            if c:
                out = out.combine(basis[w], c)
        return out

    for w in compositions(shape):
        lhs = image(apply_op(X, table.kappa[w]))
        rhs = act_strata(gen, basis[w])
        if lhs != rhs:
            return False
    return True
