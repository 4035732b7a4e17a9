"""Exact Gaussian elimination over any field whose elements support + - * /.

Rows are sparse dicts ``{column: value}``; zero means falsy.  Used with
LaurentInt/RatQ scalars and with ``fractions.Fraction``.
"""
from __future__ import annotations


def _clean(row: dict) -> dict:
    return {c: v for c, v in row.items() if v}


def echelon(rows):
    """Reduced row echelon form.  Returns (pivot rows keyed by pivot column, pivots in order)."""
    pivots: dict = {}
    order = []
    for raw in rows:
        row = _clean(dict(raw))
        # reduce against existing pivots
        for col in order:
            if col in row:
                factor = row[col]
                for c, v in pivots[col].items():
                    nv = row.get(c, 0) - factor * v
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
        if not row:
            continue
        col = min(row)
        inv = row[col]
        row = {c: v / inv for c, v in row.items()}
        # back-substitute into earlier pivot rows
        for pc in order:
            prow = pivots[pc]
            if col in prow:
                factor = prow[col]
                for c, v in row.items():
                    nv = prow.get(c, 0) - factor * v
                    if nv:
                        prow[c] = nv
                    else:
                        prow.pop(c, None)
        pivots[col] = row
        order.append(col)
    return pivots, sorted(order)


def rank(rows) -> int:
    return len(echelon(rows)[1])


def nullspace(rows, ncols: int) -> list:
    """Basis of {x : row . x = 0 for all rows} as sparse dicts."""
    pivots, order = echelon(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = {f: 1}
        for pc in order:
            v = pivots[pc].get(f)
            if v:
                vec[pc] = -v
        basis.append(vec)
    return basis


def solve(rows, rhs, ncols: int) -> dict:
    """Unique solution x of rows . x = rhs; raises ValueError otherwise."""
    aug = []
    for row, b in zip(rows, rhs):
        r = dict(row)
        if b:
            r[ncols] = b
        aug.append(r)
    pivots, order = echelon(aug)
    if ncols in pivots:
        raise ValueError("inconsistent linear system")
    if len(order) != ncols:
        raise ValueError("linear system is underdetermined")
    return {c: pivots[c][ncols] for c in order if pivots[c].get(ncols)}


def inverse(matrix: list) -> list:
    """Inverse of a dense square matrix (list of lists)."""
    n = len(matrix)
    rows = []
    for i, r in enumerate(matrix):
        row = {j: v for j, v in enumerate(r) if v}
        row[n + i] = 1
        rows.append(row)
    pivots, order = echelon(rows)
    if order[:n] != list(range(n)) or any(c >= n for c in order[:n]):
        raise ValueError("matrix is singular")
    return [[pivots[i].get(n + j, 0) for j in range(n)] for i in range(n)]
