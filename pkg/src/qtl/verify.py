"""Symbolic identity suites.

Each suite takes a list of shapes and yields records
{suite, shape, field, expected, actual, pass}; ``field`` is None here and a
field size for the finite-field suites in ``fqoracle.oracle``.
"""
from __future__ import annotations

import itertools

from . import linalg
from .bases import (act_Bs, basis_Bc, basis_Bs, certify_Bc, certify_Bs,
                    isotypic_blocks, isotypic_weight)
from .canbasis import build_bar_operator, canonical_table, is_positive_offdiagonal
from .intertwiners import (apply_T, apply_T_on_Bc, c_b, c_b_at_one, c_b_recursive,
                           omega_coeff, xi)
from .matchings import enumerate_lcm, match_from_weights, rn_of_match
from .qlaurent import ONE, ZERO, monomial
from .strata import (InvariantFunction, QuiverFunction, act_quiver, act_strata,
                     all_labels, basic_function, eta, realizable_pairs)
from .tensorspace import (BAR_DELTA, DELTA, check_shape, compose, compositions,
                          op_add, op_equal, operator_matrix, prefix_less)
from .uqsl2 import act, basis_vector, weights

GENS = ("E", "F", "K", "Ki")


def shapes_up_to(max_total: int, max_parts: int | None = None, min_total: int = 1) -> list:
    """Compositions with positive parts, |d| in [min_total, max_total]."""
    out = []
    for total in range(min_total, max_total + 1):
        for k in range(1, total + 1):
            if max_parts is not None and k > max_parts:
                break
            for c in itertools.product(range(1, total + 1), repeat=k):
                if sum(c) == total:
                    out.append(c)
    return out


def _record(suite, shape, expected, actual, ok=None, witness=None) -> dict:
    rec = {"suite": suite, "shape": list(shape), "field": None,
           "expected": str(expected), "actual": str(actual),
           "pass": (expected == actual) if ok is None else bool(ok)}
    if witness is not None:
        rec["witness"] = witness
    return rec


# ---------------------------------------------------------------------------
# U_q relations


def _relations_hold(E, F, K, Ki) -> list:
    """Names of the defining relations that fail for the given sparse matrices."""
    q2, qm2 = monomial(2), monomial(-2)
    bad = []
    if not op_equal(compose(K, Ki), _identity(K)) or not op_equal(compose(Ki, K), _identity(K)):
        bad.append("K K^-1 = 1")
    if not op_equal(compose(K, E), _scale(compose(E, K), q2)):
        bad.append("K E = q^2 E K")
    if not op_equal(compose(K, F), _scale(compose(F, K), qm2)):
        bad.append("K F = q^-2 F K")
    lhs = _scale(op_add(compose(E, F), compose(F, E), -1), monomial(1) - monomial(-1))
    if not op_equal(lhs, op_add(K, Ki, -1)):
        bad.append("(q - q^-1)[E, F] = K - K^-1")
    return bad


def _identity(op) -> dict:
    return {c: {c: ONE} for c in op}


def _scale(op, s) -> dict:
    return {c: {r: s * v for r, v in col.items()} for c, col in op.items()}


def irrep_matrix(gen: str, d: int) -> dict:
    out = {}
    for m in weights(d):
        img = act(gen, basis_vector(d, m))
        out[m] = dict(img.coeffs)
    return out


def suite_relations(shapes, max_irrep: int = 8):
    for d in range(max_irrep + 1):
        bad = _relations_hold(*(irrep_matrix(g, d) for g in GENS))
        yield _record("relations", [d], [], bad, witness={"module": "irrep"})
    for shape in shapes:
        for cop in (DELTA, BAR_DELTA):
            bad = _relations_hold(*(operator_matrix(g, shape, cop) for g in GENS))
            yield _record("relations", shape, [], bad, witness={"coproduct": cop})


# ---------------------------------------------------------------------------
# the quiver module against V_{d - 2r}


def suite_quiver(totals):
    for d in totals:
        for r in range(d // 2 + 1):
            D = d - 2 * r
            for w in range(r, d - r + 1):
                m = D - 2 * (w - r)
                for g in GENS:
                    lhs = act_quiver(g, QuiverFunction(d, {(w, r): ONE}))
                    img = act(g, basis_vector(D, m))
                    rhs = QuiverFunction(d, {((D - m2) // 2 + r, r): c for m2, c in img.coeffs.items()})
                    yield _record("quiver", [d], rhs.to_json(), lhs.to_json(),
                                  witness={"w": w, "r": r, "gen": g})


# ---------------------------------------------------------------------------
# slices


def suite_slices(shapes):
    from .tensorspace import act_tensor
    for shape in shapes:
        for r, n in realizable_pairs(shape):
            sub = tuple(b - a for a, b in zip(r, n))
            bad = []
            for u in compositions(sub):
                w = tuple(x + y for x, y in zip(u, r))
                f = basic_function(shape, (w, r, n))
                for g in GENS:
                    if act_tensor(g, eta(r, n, f)) != eta(r, n, act_strata(g, f)):
                        bad.append([list(w), g])
            yield _record("slices", shape, [], bad, witness={"r": list(r), "n": list(n)})


# ---------------------------------------------------------------------------
# canonical basis


def suite_canonical(shapes):
    for shape in shapes:
        table = canonical_table(shape)
        psi = build_bar_operator(shape)
        bad = []
        for w, col in table.kappa.items():
            if col.get(w) != ONE:
                bad.append(f"diagonal at {w}")
            for a, c in col.items():
                if a == w:
                    continue
                if not prefix_less(w, a):
                    bad.append(f"entry {a} not above {w}")
                if not is_positive_offdiagonal(c):
                    bad.append(f"entry {c} at {w},{a} not in q^-1 N[q^-1]")
            if psi.apply_coeffs(col) != col:
                bad.append(f"vector {w} not bar-invariant")
        yield _record("canonical", shape, [], bad)


# ---------------------------------------------------------------------------
# bases


def suite_bc(shapes):
    for shape in shapes:
        for rep in certify_Bc(shape):
            yield _record("B_c", shape, [], rep.failures, witness={"w": list(rep.index)})


def suite_bs(shapes):
    for shape in shapes:
        Bs = basis_Bs(shape)
        for a, f in Bs.items():
            for g in GENS:
                lhs = act_strata(g, f)
                res = act_Bs(shape, g, a)
                rhs = InvariantFunction(shape) if res is None else Bs[res[1]].scale(res[0])
                yield _record("B_s-action", shape, rhs.to_json(), lhs.to_json(),
                              witness={"a": list(a), "gen": g})
        for arcs, members in isotypic_blocks(shape).items():
            bad = []
            for a in members:
                mu, m = isotypic_weight(shape, a)
                for g in GENS:
                    res = act_Bs(shape, g, a)
                    img = act(g, basis_vector(mu, m))
                    got = {} if res is None else {isotypic_weight(shape, res[1])[1]: res[0]}
                    if res is not None and isotypic_weight(shape, res[1])[0] != mu:
                        bad.append([list(a), g, "left the block"])
                    if got != dict(img.coeffs):
                        bad.append([list(a), g])
            yield _record("B_s-block", shape, [], bad, witness={"arcs": sorted(list(x) for x in arcs)})
        for rep in certify_Bs(shape):
            yield _record("B_s-certify", shape, [], rep.failures, witness={"a": list(rep.index)})


# ---------------------------------------------------------------------------
# intertwiners


def suite_tys(shapes):
    for shape in shapes:
        Bs = basis_Bs(shape)
        total = sum(shape)
        for b in enumerate_lcm(shape):
            cb = c_b(shape, b)
            yield _record("c_b-nonzero", shape, True, bool(cb), witness={"arcs": b.sorted_arcs()})
            yield _record("c_b-recursion", shape, c_b_recursive(shape, b), cb,
                          witness={"arcs": b.sorted_arcs()})
            yield _record("c_b-at-1", shape, c_b_at_one(shape, b), cb.eval_at(1),
                          witness={"arcs": b.sorted_arcs()})
            for a, f in Bs.items():
                got = apply_T(shape, b, f)
                if match_from_weights(shape, a).arcs == b.arcs:
                    exp = QuiverFunction(total, {(sum(a), len(b.arcs)): cb})
                else:
                    exp = QuiverFunction(total)
                yield _record("T_Y-on-B_s", shape, exp.to_json(), got.to_json(),
                              witness={"arcs": b.sorted_arcs(), "a": list(a)})


def suite_omega(shapes):
    for shape in shapes:
        total = sum(shape)
        for b in enumerate_lcm(shape):
            for w in compositions(shape):
                om = omega_coeff(shape, b, w)
                exp = QuiverFunction(total, {(sum(w), len(b.arcs)): om}) if om else QuiverFunction(total)
                got = apply_T_on_Bc(shape, b, w)
                yield _record("omega", shape, exp.to_json(), got.to_json(),
                              witness={"arcs": b.sorted_arcs(), "w": list(w)})


def _irreducible_count(shape) -> int:
    """Number of irreducible summands, read off the weight multiplicities."""
    mult: dict = {}
    for w in compositions(shape):
        m = sum(shape) - 2 * sum(w)
        mult[m] = mult.get(m, 0) + 1
    return sum(c - mult.get(m + 2, 0) for m, c in mult.items() if m >= 0)


def suite_ty_family(shapes):
    for shape in shapes:
        lcm = enumerate_lcm(shape)
        labels = all_labels(shape)
        rows = []
        bad = []
        for b in lcm:
            for lab in labels:
                f = basic_function(shape, lab)
                for g in GENS:
                    lhs = apply_T(shape, b, act_strata(g, f))
                    rhs = act_quiver(g, apply_T(shape, b, f))
                    if lhs != rhs:
                        bad.append([b.sorted_arcs(), [list(x) for x in lab], g])
            # T_{Y_b} as a vector indexed by (label, quiver label)
            row = {}
            for i, lab in enumerate(labels):
                for key, v in apply_T(shape, b, basic_function(shape, lab)).values.items():
                    row[(i, key)] = v
            rows.append(row)
        yield _record("T_Y-commutes", shape, [], bad)
        keys = sorted({k for row in rows for k in row})
        index = {k: j for j, k in enumerate(keys)}
        rank = linalg.rank([{index[k]: v for k, v in row.items()} for row in rows])
        yield _record("T_Y-independent", shape, len(lcm), rank)
        yield _record("T_Y-count", shape, _irreducible_count(shape), len(lcm))


def suite_xi(shapes):
    for shape in shapes:
        Bc = basis_Bc(shape)
        Bs = basis_Bs(shape)
        index = list(compositions(shape))
        bad = []
        rows = []
        for w in index:
            img = xi(shape, Bc[w])
            for g in GENS:
                if xi(shape, act_strata(g, Bc[w])) != act_strata(g, img):
                    bad.append([list(w), g])
            # coordinates in B_s: supports are disjoint and each contains its dense label
            coords = {}
            for j, a in enumerate(index):
                lab = next(iter(sorted(Bs[a].support())))
                v = img.value(lab)
                if v:
                    coords[j] = v
            rows.append(coords)
        yield _record("xi-commutes", shape, [], bad)
        yield _record("xi-invertible", shape, len(index), linalg.rank(rows))


SUITES = {
    "relations": suite_relations,
    "slices": suite_slices,
    "canonical": suite_canonical,
    "B_c": suite_bc,
    "B_s": suite_bs,
    "T_Y": suite_tys,
    "omega": suite_omega,
    "T_Y-family": suite_ty_family,
    "xi": suite_xi,
}


def run_symbolic(max_total: int = 5, suites=None) -> list:
    """All symbolic suites at the default sizes, capped by max_total."""
    suites = list(SUITES) + ["quiver"] if suites is None else list(suites)
    small = shapes_up_to(min(max_total, 6), max_parts=3)
    everything = shapes_up_to(max_total)
    out = []
    for name in suites:
        if name == "quiver":
            out.extend(suite_quiver(range(min(max_total, 6) + 1)))
        elif name == "relations":
            out.extend(suite_relations(small))
        elif name == "slices":
            out.extend(suite_slices(small))
        elif name == "canonical":
            out.extend(suite_canonical([s for s in small if max(s) <= 3]))
        elif name == "B_c":
            out.extend(suite_bc([s for s in ((1, 1), (2, 1), (1, 1, 1), (2, 2), (2, 1, 1))
                                 if sum(s) <= max_total]))
        elif name in SUITES:
            out.extend(SUITES[name](everything))
        else:
            raise ValueError(f"unknown symbolic suite {name!r}")
    return out
