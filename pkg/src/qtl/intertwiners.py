"""The operators T_Y = p_! R_Y, their constants c_b, and the map xi."""
from __future__ import annotations

import math
from functools import lru_cache

from .canbasis import canonical_table
from .matchings import (enumerate_lcm, leq_match, lm_of_match, match_from_weights,
                        rn_of_match)
from .qlaurent import ONE, ZERO, LaurentInt, flag_cell_count
from .strata import (InvariantFunction, QuiverFunction, StratumLabel, all_labels,
                     is_realizable, k_factor, label)
from .tensorspace import check_shape, compositions


def _suffix(x, i) -> int:
    return sum(x[i:])


def _cell(a1, a2) -> LaurentInt:
    if any(y < 0 or y > x for x, y in zip(a1, a2)):
        return ZERO
    return flag_cell_count(a1, a2)


@lru_cache(maxsize=None)
def _flag_count(shape: tuple, lab: StratumLabel) -> LaurentInt:
    if not is_realizable(shape, lab):
        return ZERO
    w, r, n = lab
    k = len(shape)
    wr = [a - b for a, b in zip(w, r)]
    nw = [a - b for a, b in zip(n, w)]
    rest = [d - a - b for d, a, b in zip(shape, n, r)]
    out = ONE
    for i in range(k):
        a1 = (_suffix(r, i), _suffix(wr, i), _suffix(nw, i), _suffix(rest, i))
        a2 = (r[i], wr[i], nw[i], shape[i] - n[i])
        out = out * _cell(a1, a2)
        if not out:
            break
    return out


def flag_count(shape, lab) -> LaurentInt:
    """Flags D with (D, W, t) in A_{w,r,n}, for one fixed pair (W, t)."""
    return _flag_count(check_shape(shape), label(*lab))


def flag_count_table(shape) -> dict:
    shape = check_shape(shape)
    return {lab: flag_count(shape, lab) for lab in all_labels(shape)}


# ---------------------------------------------------------------------------
# c_b


def kernel_of(b) -> tuple:
    return rn_of_match(b)[1]


def c_b_by_total(shape, b, total: int) -> LaurentInt:
    n = kernel_of(b)
    out = ZERO
    for lab in all_labels(shape):
        if lab.n == n and sum(lab.w) == total:
            out = out + flag_count(shape, lab)
    return out


@lru_cache(maxsize=None)
def _c_b(shape: tuple, arcs: frozenset) -> LaurentInt:
    from .matchings import LowerMatch
    b = LowerMatch(shape, arcs)
    l, m = lm_of_match(b)
    values = {c_b_by_total(shape, b, t) for t in range(sum(l), sum(l) + sum(m) + 1)}
    if len(values) != 1:
        raise AssertionError(f"c_b depends on the orientation for {b}")
    return values.pop()


def c_b(shape, b) -> LaurentInt:
    """Number of t-stable flags with kernel type n^b, for fixed (W, t)."""
    return _c_b(check_shape(shape), b.arcs)


def _prefix(x):
    out, s = [0], 0
    for v in x:
        s += v
        out.append(s)
    return out


def c_b_recursive(shape, b) -> LaurentInt:
    """Same count, choosing D_{k-1}, D_{k-2}, ... in turn inside t(D_{j+1}) quotients."""
    D = _prefix(shape)
    N = _prefix(kernel_of(b))
    out = ONE
    for j in range(1, len(shape)):
        kdim = 2 * N[j + 1] - D[j + 1]
        amb = N[j + 1]
        sub = D[j] - D[j + 1] + N[j + 1]
        inter = N[j] + N[j + 1] - D[j + 1]
        out = out * _cell((kdim, amb - kdim), (inter, sub - inter))
    return out


def c_b_at_one(shape, b) -> int:
    D = _prefix(shape)
    N = _prefix(kernel_of(b))
    out = 1
    for j in range(1, len(shape)):
        out *= math.comb(2 * N[j + 1] - D[j + 1], N[j + 1] + N[j] - D[j + 1])
        out *= math.comb(D[j + 1] - N[j + 1], D[j] - N[j])
    return out


# ---------------------------------------------------------------------------
# T_Y


def apply_T(shape, b, f: InvariantFunction) -> QuiverFunction:
    shape = check_shape(shape)
    n = kernel_of(b)
    out: dict = {}
    for lab, v in f.values.items():
        if lab.n != n:
            continue
        key = (sum(lab.w), sum(lab.r))
        out[key] = out.get(key, ZERO) + v * flag_count(shape, lab)
    return QuiverFunction(sum(shape), out)


def _theorem_flag_product(shape, l, m, a) -> LaurentInt:
    k = len(shape)
    ma = [x - y for x, y in zip(m, a)]
    rest = [d - x - 2 * y for d, x, y in zip(shape, m, l)]
    out = ONE
    for i in range(k - 1):
        a1 = (_suffix(l, i), _suffix(a, i), _suffix(ma, i), _suffix(rest, i))
        a2 = (l[i], a[i], m[i] - a[i], shape[i] - m[i] - l[i])
        out = out * _cell(a1, a2)
    return out


def omega_coeff(shape, b, w):
    """Closed form for T_{Y_b}(g_w) as a multiple of the indicator at (|w|, #arcs)."""
    shape = check_shape(shape)
    w = tuple(w)
    M = match_from_weights(shape, w).unoriented()
    if not leq_match(b, M):
        return ZERO
    l, m = lm_of_match(b)
    u = tuple(x - y for x, y in zip(w, l))
    table = canonical_table(m)
    total = ZERO
    for a, kap in table.kappa[u].items():
        lab = (tuple(x + y for x, y in zip(a, l)), l, tuple(x + y for x, y in zip(l, m)))
        total = total + kap * k_factor(lab) * _theorem_flag_product(shape, l, m, a)
    return total


def apply_T_on_Bc(shape, b, w) -> QuiverFunction:
    from .bases import basis_Bc
    return apply_T(shape, b, basis_Bc(check_shape(shape))[tuple(w)])


def intertwiner_table(shape) -> list:
    shape = check_shape(shape)
    rows = []
    for b in enumerate_lcm(shape):
        l, m = lm_of_match(b)
        rows.append({
            "arcs": [list(x) for x in b.sorted_arcs()],
            "mu": sum(m),
            "l": list(l),
            "m": list(m),
            "c_b": str(c_b(shape, b)),
            "omega": [[list(w), str(omega_coeff(shape, b, w))] for w in compositions(shape)],
        })
    return rows


# ---------------------------------------------------------------------------
# xi


def _weights_for(shape, b) -> dict:
    """|a| -> a for the orientations of b."""
    out = {}
    for a in compositions(shape):
        if match_from_weights(shape, a).arcs == b.arcs:
            out[sum(a)] = a
    return out


def _xi(shape, f: InvariantFunction, power: int) -> InvariantFunction:
    from .bases import basis_Bs
    shape = check_shape(shape)
    Bs = basis_Bs(shape)
    out = InvariantFunction(shape)
    for b in enumerate_lcm(shape):
        cb = c_b(shape, b)
        image = apply_T(shape, b, f)
        by_total = _weights_for(shape, b)
        rho = len(b.arcs)
        for (total, r), v in image.values.items():
            if r != rho:
                raise AssertionError("T_Y landed outside its quiver slice")
            out = out.combine(Bs[by_total[total]], v / cb ** power)
    return out


def xi(shape, f: InvariantFunction) -> InvariantFunction:
    """sum_b c_b^-1 (T_{Y_b} restricted to Y_b)^-1 T_{Y_b}; the restricted inverse
    sends the quiver indicator at |a| to 1_{Y_a} / c_b."""
    return _xi(shape, f, 2)


def xi_pointwise(shape, f: InvariantFunction) -> InvariantFunction:
    """Value at a point x: sum of f over flags sharing the kernel type of x."""
    return _xi(shape, f, 0)
