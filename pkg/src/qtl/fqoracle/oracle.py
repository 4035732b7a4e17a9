"""Brute-force point counts over GF(p^2), compared against the symbolic formulas.

Counting strategy for a stratum (w, r, n) of shape d:

    #points = #flags * #{W : alpha(W) = w} * #{t : alpha(im t) = r, alpha(ker t) = n}

where the last two factors are taken for the standard flag, and the last for
the standard W of type w.  GL acts transitively on flags and the stabilizer of
the standard flag acts transitively on each W-cell, so these factors do not
depend on the chosen representatives.  ``naive_stratum_counts`` enumerates
every (W, t) for the standard flag with no such reduction, as a cross-check.
"""
from __future__ import annotations

import itertools
import os
from fractions import Fraction
from dataclasses import dataclass
from functools import lru_cache

from ..qlaurent import eval_at, flag_cell_count, qint, monomial, ZERO
from ..strata import (StratumLabel, all_labels, dim_component, is_realizable,
                      stratum_point_count)
from ..tensorspace import check_shape, compositions, prefix_sums
from . import kernel
from .field import FqConfig, field_for, field_from_size

DEFAULT_CAP = 5


class OracleCapError(ValueError):
    """The requested enumeration exceeds the configured size cap."""


def current_cap() -> int:
    raw = os.environ.get("QTL_CAP")
    return int(raw) if raw else DEFAULT_CAP


def _check_cap(total: int, cap: int | None, projected: int | None = None) -> None:
    cap = current_cap() if cap is None else cap
    if total > cap:
        extra = f" (projected {projected} configurations)" if projected is not None else ""
        raise OracleCapError(f"ambient dimension {total} exceeds cap {cap}{extra}")


def _cuts(shape) -> tuple:
    return (0,) + prefix_sums(shape)


def _as_field(fld) -> FqConfig:
    if isinstance(fld, FqConfig):
        return fld
    return field_from_size(int(fld))


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class SubspaceRep:
    """A subspace of F^n by its reduced row echelon basis (canonical)."""
    n: int
    rows: tuple

    @property
    def dim(self) -> int:
        return len(self.rows)


def _grassmannian_size(n: int, a: int, Q: int) -> int:
    num = den = 1
    for i in range(a):
        num *= Q ** (n - i) - 1
        den *= Q ** (i + 1) - 1
    return num // den


def enum_subspaces(n: int, a: int, fld, cap: int | None = None):
    """Every a-dimensional subspace of F^n exactly once."""
    cfg = _as_field(fld)
    if not 0 <= a <= n:
        raise ValueError(f"need 0 <= {a} <= {n}")
    _check_cap(n, cap, _grassmannian_size(n, a, cfg.size))
    for m in kernel.rref_iter(a, n, cfg):
        yield SubspaceRep(n, tuple(tuple(r) for r in m))


def count_subspaces(n: int, a: int, fld, cap: int | None = None) -> int:
    return sum(1 for _ in enum_subspaces(n, a, fld, cap))


@lru_cache(maxsize=None)
def _profiles(n: int, a: int, cfg: FqConfig) -> dict:
    return kernel.profile_tally(n, a, cfg)


def count_cells(dd, aa, fld, cap: int | None = None) -> int:
    """#{W : alpha(W, D) = aa} for the standard flag D of type dd."""
    cfg = _as_field(fld)
    n = sum(dd)
    _check_cap(n, cap)
    cuts = _cuts(dd)
    target = tuple(aa)
    total = 0
    for prof, c in _profiles(n, sum(aa), cfg).items():
        alpha = tuple(prof[cuts[i + 1]] - prof[cuts[i]] for i in range(len(dd)))
        if alpha == target:
            total += c
    return total


@lru_cache(maxsize=None)
def _count_flags(shape: tuple, cfg: FqConfig) -> int:
    if len(shape) <= 1:
        return 1
    total = sum(shape)
    sub = total - shape[-1]
    return count_subspaces(total, sub, cfg, cap=total) * _count_flags(shape[:-1], cfg)


def count_flags(shape, fld, cap: int | None = None) -> int:
    """Number of flags of type shape, by enumerating one step at a time."""
    shape = check_shape(shape)
    _check_cap(sum(shape), cap)
    return _count_flags(shape, _as_field(fld))


# ---------------------------------------------------------------------------
# strata


@lru_cache(maxsize=None)
def _t_fibers(shape: tuple, w: tuple, cfg: FqConfig) -> dict:
    return kernel.t_fiber_tally(shape, w, cfg)


def count_stratum(shape, lab, fld, cap: int | None = None) -> int:
    """Number of (D, W, t) in the stratum `lab` over the given field."""
    shape = check_shape(shape)
    cfg = _as_field(fld)
    _check_cap(sum(shape), cap)
    w, r, n = (tuple(x) for x in lab)
    if any(len(x) != len(shape) for x in (w, r, n)):
        raise ValueError("label length does not match shape")
    if any(x < 0 or x > d for vec in (w, r, n) for x, d in zip(vec, shape)):
        return 0
    hits = _t_fibers(shape, w, cfg).get((r, n), 0)
    if not hits:
        return 0
    return count_flags(shape, cfg, cap) * count_cells(shape, w, cfg, cap) * hits


def stratum_counts(shape, fld, cap: int | None = None) -> dict:
    """Nonzero stratum counts keyed by label."""
    shape = check_shape(shape)
    cfg = _as_field(fld)
    _check_cap(sum(shape), cap)
    flags = count_flags(shape, cfg, cap)
    out = {}
    for w in compositions(shape):
        cells = count_cells(shape, w, cfg, cap)
        for (r, n), c in _t_fibers(shape, w, cfg).items():
            out[StratumLabel(w, r, n)] = flags * cells * c
    return out


def _alpha(rows, cuts, N, cfg) -> tuple:
    """Graded dimensions of span(rows) against the standard flag with cut points."""
    out = []
    prev = 0
    for c in cuts[1:]:
        # span(rows) cap span(e_0..e_{c-1}) = dim - rank of the tail columns
        cur = len(rows) - kernel.rank([row[c:] for row in rows], N - c, cfg) if rows else 0
        out.append(cur - prev)
        prev = cur
    return tuple(out)


def naive_stratum_counts(shape, fld, cap: int = 3) -> dict:
    """Stratum counts from enumerating every flag-compatible square-zero t and
    every W between im t and ker t, for the standard flag only, times #flags."""
    shape = check_shape(shape)
    cfg = _as_field(fld)
    N = sum(shape)
    _check_cap(N, cap)
    Q = cfg.size
    add, mul = cfg.add, cfg.mul
    cuts = _cuts(shape)
    box = [i for i, x in enumerate(shape) for _ in range(x)]
    slots = [(i, j) for i in range(N) for j in range(N) if box[i] < box[j]]
    subspaces = {a: [list(map(list, s.rows)) for s in enum_subspaces(N, a, cfg, cap)]
                 for a in range(N + 1)}
    out: dict = {}
    for vals in itertools.product(range(Q), repeat=len(slots)):
        t = [[0] * N for _ in range(N)]
        for (i, j), v in zip(slots, vals):
            t[i][j] = v
        # t^2 = 0
        sq_zero = True
        for i in range(N):
            for j in range(N):
                s = 0
                for x in range(N):
                    if t[i][x] and t[x][j]:
                        s = add[s * Q + mul[t[i][x] * Q + t[x][j]]]
                if s:
                    sq_zero = False
                    break
            if not sq_zero:
                break
        if not sq_zero:
            continue
        image = [[t[i][j] for i in range(N)] for j in range(N)]
        rho = kernel.rank(image, N, cfg)
        # the image as a subspace, then its kernel by brute force
        im_sub = next(s for s in subspaces[rho]
                      if kernel.rank(s + image, N, cfg) == rho) if rho else []
        ker_sub = None
        for s in subspaces[N - rho]:
            if all(not any(_apply(t, v, cfg)) for v in s):
                ker_sub = s
                break
        r = _alpha(im_sub, cuts, N, cfg)
        n = _alpha(ker_sub, cuts, N, cfg)
        for a in range(rho, N - rho + 1):
            for W in subspaces[a]:
                if rho and kernel.rank(W + im_sub, N, cfg) != a:
                    continue
                if kernel.rank(W + ker_sub, N, cfg) != N - rho:
                    continue
                lab = StratumLabel(_alpha(W, cuts, N, cfg), r, n)
                out[lab] = out.get(lab, 0) + 1
    flags = count_flags(shape, cfg, cap)
    return {lab: c * flags for lab, c in out.items()}


def _apply(t, v, cfg):
    Q, add, mul = cfg.size, cfg.add, cfg.mul
    out = []
    for row in t:
        s = 0
        for a, b in zip(row, v):
            if a and b:
                s = add[s * Q + mul[a * Q + b]]
        out.append(s)
    return out


# ---------------------------------------------------------------------------
# a fixed (W, t) and the flags around it


def normal_pair(total: int, omega: int, rho: int):
    """W = span(e_0..e_{omega-1}) and t(e_{total-rho+s}) = e_s, as bases/matrix."""
    if not 0 <= rho <= omega <= total - rho:
        raise ValueError(f"no pair with total={total}, dim W={omega}, rank t={rho}")
    unit = [[1 if i == j else 0 for j in range(total)] for i in range(total)]
    W = unit[:omega]
    im = unit[:rho]
    ker = unit[:total - rho]
    t = [[0] * total for _ in range(total)]
    for s in range(rho):
        t[s][total - rho + s] = 1
    return W, im, ker, t


@lru_cache(maxsize=None)
def _flag_fibers(shape: tuple, omega: int, rho: int, cfg: FqConfig) -> dict:
    W, im, ker, t = normal_pair(sum(shape), omega, rho)
    return kernel.flag_tally(shape, W, im, ker, t, cfg)


def flag_fiber_counts(shape, omega: int, rho: int, fld, cap: int | None = None) -> dict:
    """Flags D of type shape with t(D_i) in D_{i-1} for the normal pair,
    tallied by (alpha(W), alpha(im t), alpha(ker t))."""
    shape = check_shape(shape)
    cfg = _as_field(fld)
    _check_cap(sum(shape), cap)
    return _flag_fibers(shape, omega, rho, cfg)


def count_flag_label(shape, lab, fld, cap: int | None = None) -> int:
    """Brute-force value of the flag count of a label."""
    w, r, n = (tuple(x) for x in lab)
    total = sum(check_shape(shape))
    omega, rho = sum(w), sum(r)
    if not 0 <= rho <= omega <= total - rho:
        return 0
    return flag_fiber_counts(shape, omega, rho, fld, cap).get((w, r, n), 0)


def count_c_b(shape, kernel_n, omega: int, fld, cap: int | None = None) -> int:
    """Flags compatible with a normal pair of dim omega, rank |d| - |n|,
    whose kernel has type kernel_n (summed over the type of W and im t)."""
    shape = check_shape(shape)
    total = sum(shape)
    rho = total - sum(kernel_n)
    if not 0 <= rho <= omega <= total - rho:
        raise ValueError("omega out of range for this kernel type")
    tally = flag_fiber_counts(shape, omega, rho, fld, cap)
    return sum(c for (_, _, n), c in tally.items() if n == tuple(kernel_n))


# ---------------------------------------------------------------------------
# fibers of the quiver action


def e_fiber_count(total: int, w: int, r: int, fld, cap: int | None = None) -> int:
    """#{U : W in U in ker t, dim U = w + 1} for a pair with dim W = w, rank t = r."""
    cfg = _as_field(fld)
    W, _, ker, _ = normal_pair(total, w, r)
    count = 0
    for U in enum_subspaces(total, w + 1, cfg, cap):
        rows = [list(x) for x in U.rows]
        if kernel.rank(rows + W, total, cfg) != w + 1:
            continue
        if kernel.rank(rows + ker, total, cfg) != total - r:
            continue
        count += 1
    return count


def f_fiber_count(total: int, w: int, r: int, fld, cap: int | None = None) -> int:
    """#{U : im t in U in W, dim U = w} for a pair with dim W = w + 1, rank t = r."""
    cfg = _as_field(fld)
    W, im, _, _ = normal_pair(total, w + 1, r)
    count = 0
    for U in enum_subspaces(total, w, cfg, cap):
        rows = [list(x) for x in U.rows]
        if kernel.rank(rows + W, total, cfg) != w + 1:
            continue
        if im and kernel.rank(rows + im, total, cfg) != w:
            continue
        count += 1
    return count


# ---------------------------------------------------------------------------
# identity suites


def _plain(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else str(x)
    return x


def _record(suite, shape, cfg, expected, actual, witness=None) -> dict:
    expected, actual = _plain(expected), _plain(actual)
    rec = {"suite": suite, "shape": list(shape) if isinstance(shape, tuple) else shape,
           "field": cfg.size, "expected": expected, "actual": actual,
           "pass": expected == actual}
    if witness is not None:
        rec["witness"] = witness
    return rec


def _suite_projective(shapes, cfg, cap):
    for n in range(0, 4):
        exp = eval_at(sum((monomial(2 * i) for i in range(n + 1)), ZERO), cfg.q)
        yield _record("projective", [n], cfg, exp, count_subspaces(n + 1, 1, cfg, cap))


def _suite_cells(shapes, cfg, cap):
    for dd in shapes:
        for aa in itertools.chain.from_iterable(compositions(dd, s) for s in range(sum(dd) + 1)):
            exp = eval_at(flag_cell_count(dd, aa), cfg.q)
            yield _record("cells", list(dd), cfg, exp, count_cells(dd, aa, cfg, cap),
                          witness={"aa": list(aa)})


def _suite_quiver(shapes, cfg, cap):
    totals = sorted({sum(s) for s in shapes})
    for total in totals:
        for w in range(total + 1):
            for r in range(0, w + 1):
                if w < total and r <= w and w <= total - r - 1:
                    # normalized by q^-(d-w-r-1)
                    cnt = e_fiber_count(total, w, r, cfg, cap)
                    exp = eval_at(qint(total - w - r), cfg.q)
                    act = Fraction(cnt, cfg.q ** (total - w - r - 1))
                    yield _record("quiver-E", [total], cfg, exp, act, witness={"w": w, "r": r, "raw": cnt})
                if w + 1 <= total - r and r <= w:
                    cnt = f_fiber_count(total, w, r, cfg, cap)
                    exp = eval_at(qint(w + 1 - r), cfg.q)
                    scale = cfg.q ** (w - r)
                    act = Fraction(cnt, scale)
                    yield _record("quiver-F", [total], cfg, exp, act, witness={"w": w, "r": r, "raw": cnt})


def _suite_strata(shapes, cfg, cap):
    for shape in shapes:
        counts = stratum_counts(shape, cfg, cap)
        labels = set(all_labels(shape))
        for lab in sorted(labels | set(counts)):
            exp = eval_at(stratum_point_count(shape, lab), cfg.q) if is_realizable(shape, lab) else 0
            yield _record("strata", list(shape), cfg, exp, counts.get(lab, 0),
                          witness={"label": [list(x) for x in lab]})


def _suite_flags(shapes, cfg, cap):
    from ..intertwiners import flag_count
    for shape in shapes:
        for lab in all_labels(shape):
            exp = eval_at(flag_count(shape, lab), cfg.q)
            yield _record("flag-count", list(shape), cfg, exp, count_flag_label(shape, lab, cfg, cap),
                          witness={"label": [list(x) for x in lab]})


def _suite_cb(shapes, cfg, cap):
    from ..intertwiners import c_b
    from ..matchings import enumerate_lcm, rn_of_match
    for shape in shapes:
        total = sum(shape)
        for b in enumerate_lcm(shape):
            _, n = rn_of_match(b)
            rho = total - sum(n)
            exp = eval_at(c_b(shape, b), cfg.q)
            for omega in range(rho, total - rho + 1):
                yield _record("c_b", list(shape), cfg, exp, count_c_b(shape, n, omega, cfg, cap),
                              witness={"arcs": sorted(list(a) for a in b.arcs), "omega": omega})


def _suite_density(shapes, cfg, cap):
    from ..bases import closure_labels
    from ..matchings import match_from_weights, rn_of_match
    for shape in shapes:
        counts = stratum_counts(shape, cfg, cap)
        for w in compositions(shape):
            r, n = rn_of_match(match_from_weights(shape, w))
            dense = StratumLabel(w, r, n)
            poly = stratum_point_count(shape, dense)
            ok = counts.get(dense, 0) == eval_at(poly, cfg.q) and poly.high == 2 * dim_component(shape, w)
            others = [lab for lab in closure_labels(shape, w) if lab != dense and sum(lab.w) == sum(w)]
            for lab in others:
                other = stratum_point_count(shape, lab)
                if counts.get(lab, 0) != eval_at(other, cfg.q) or (other and other.high >= poly.high):
                    ok = False
            yield _record("density", list(shape), cfg, 2 * dim_component(shape, w),
                          poly.high if ok else None, witness={"w": list(w)})


SUITES = {
    "projective": _suite_projective,
    "cells": _suite_cells,
    "quiver": _suite_quiver,
    "strata": _suite_strata,
    "flag-count": _suite_flags,
    "c_b": _suite_cb,
    "density": _suite_density,
}


def verify_identity(suite: str, shapes, fields=(4, 9), cap: int | None = None) -> list:
    """Records {suite, shape, field, expected, actual, pass} for one suite."""
    if suite not in SUITES:
        raise ValueError(f"unknown oracle suite {suite!r}; choose from {sorted(SUITES)}")
    shapes = [check_shape(s) for s in shapes]
    for s in shapes:
        _check_cap(sum(s), cap)
    out = []
    for fld in fields:
        cfg = _as_field(fld)
        out.extend(SUITES[suite](shapes, cfg, cap))
    return out
