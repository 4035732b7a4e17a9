"""Lower crossingless matches on boxes of vertices.

Vertices are numbered 1..|d| globally; box i holds a contiguous run of d_i
vertices.  An arc (p, q) with p < q joins two different boxes; arcs never
cross and no unmatched vertex sits underneath an arc.  An oriented match also
assigns "u" or "d" to each unmatched vertex, with every "d" to the right of
every "u".  Left endpoints of arcs count as down arrows, right endpoints as up
arrows.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

UP = "u"
DOWN = "d"


def box_of(shape) -> tuple:
    """box index (0-based) of each vertex; entry 0 is unused."""
    out = [None]
    for i, size in enumerate(shape):
        out.extend([i] * size)
    return tuple(out)


@dataclass(frozen=True)
class LowerMatch:
    shape: tuple
    arcs: frozenset
    orientation: tuple | None = None   # sorted ((vertex, "u"|"d"), ...)

    def __post_init__(self):
        object.__setattr__(self, "shape", tuple(self.shape))
        object.__setattr__(self, "arcs", frozenset(tuple(a) for a in self.arcs))
        if self.orientation is not None:
            object.__setattr__(self, "orientation", tuple(sorted(dict(self.orientation).items())))
        problem = _violation(self)
        if problem:
            raise ValueError(f"invalid lower match: {problem}")

    @property
    def size(self) -> int:
        return sum(self.shape)

    def matched(self) -> set:
        return {v for a in self.arcs for v in a}

    def unmatched(self) -> list:
        m = self.matched()
        return [v for v in range(1, self.size + 1) if v not in m]

    def unoriented(self) -> "LowerMatch":
        return LowerMatch(self.shape, self.arcs)

    def sorted_arcs(self) -> list:
        return sorted(self.arcs)

    def to_json(self) -> dict:
        out = {"shape": list(self.shape), "arcs": [list(a) for a in self.sorted_arcs()]}
        if self.orientation is not None:
            out["orientation"] = {str(v): o for v, o in self.orientation}
        return out


def _violation(S: LowerMatch) -> str | None:
    box = box_of(S.shape)
    n = S.size
    seen = set()
    for p, q in S.arcs:
        if not (1 <= p < q <= n):
            return f"arc {(p, q)} out of range"
        if box[p] == box[q]:
            return f"arc {(p, q)} joins a box to itself"
        if p in seen or q in seen:
            return "vertex used twice"
        seen.update((p, q))
    arcs = sorted(S.arcs)
    for i, (p, q) in enumerate(arcs):
        for p2, q2 in arcs[i + 1:]:
            if p < p2 < q < q2 or p2 < p < q2 < q:
                return f"arcs {(p, q)} and {(p2, q2)} cross"
    free = [v for v in range(1, n + 1) if v not in seen]
    for v in free:
        for p, q in arcs:
            if p < v < q:
                return f"unmatched vertex {v} lies under arc {(p, q)}"
    if S.orientation is not None:
        orient = dict(S.orientation)
        if set(orient) != set(free) or any(o not in (UP, DOWN) for o in orient.values()):
            return "orientation must cover exactly the unmatched vertices"
        ups = [v for v in free if orient[v] == UP]
        downs = [v for v in free if orient[v] == DOWN]
        if ups and downs and max(ups) > min(downs):
            return "an unmatched down arrow lies left of an unmatched up arrow"
    return None


# ---------------------------------------------------------------------------
# enumeration


@lru_cache(maxsize=None)
def _perfect(shape: tuple, i: int, j: int) -> tuple:
    """Non-crossing perfect matchings of vertices i..j with no intra-box arc."""
    if i > j:
        return (frozenset(),)
    if (j - i + 1) % 2:
        return ()
    box = box_of(shape)
    out = []
    for partner in range(i + 1, j + 1, 2):
        if box[partner] == box[i]:
            continue
        for inner in _perfect(shape, i + 1, partner - 1):
            for rest in _perfect(shape, partner + 1, j):
                out.append(inner | rest | {(i, partner)})
    return tuple(out)


@lru_cache(maxsize=None)
def _top(shape: tuple, i: int) -> tuple:
    n = sum(shape)
    if i > n:
        return (frozenset(),)
    box = box_of(shape)
    out = list(_top(shape, i + 1))   # vertex i unmatched
    for partner in range(i + 1, n + 1, 2):
        if box[partner] == box[i]:
            continue
        for inner in _perfect(shape, i + 1, partner - 1):
            for rest in _top(shape, partner + 1):
                out.append(inner | rest | {(i, partner)})
    return tuple(out)


def enumerate_lcm(shape) -> list:
    shape = tuple(shape)
    found = {frozenset(a) for a in _top(shape, 1)}
    return [LowerMatch(shape, a) for a in sorted(found, key=lambda s: sorted(s))]


def enumerate_olcm(shape) -> list:
    out = []
    for S in enumerate_lcm(shape):
        free = S.unmatched()
        for s in range(len(free) + 1):
            orient = {v: (UP if idx < s else DOWN) for idx, v in enumerate(free)}
            out.append(LowerMatch(S.shape, S.arcs, tuple(orient.items())))
    return out


# ---------------------------------------------------------------------------
# the bijection a <-> oriented match


def arrows_of_weights(shape, a) -> list:
    """Arrow word for a: in box i the rightmost a_i vertices point down."""
    word = []
    for size, x in zip(shape, a):
        if not 0 <= x <= size:
            raise ValueError(f"weight {tuple(a)} invalid for shape {tuple(shape)}")
        word.extend([UP] * (size - x) + [DOWN] * x)
    return word


def match_from_weights(shape, a) -> LowerMatch:
    """M(d, a): match each down arrow, sweeping from the right, to the nearest
    unmatched up arrow on its right."""
    shape = tuple(shape)
    if len(a) != len(shape):
        raise ValueError("weight and shape lengths differ")
    word = arrows_of_weights(shape, a)
    n = len(word)
    free_ups: list = []     # stack of unmatched up arrows seen so far, nearest on top
    arcs = []
    orient = {}
    for v in range(n, 0, -1):
        if word[v - 1] == UP:
            free_ups.append(v)
        elif free_ups:
            arcs.append((v, free_ups.pop()))
        else:
            orient[v] = DOWN
    for v in free_ups:
        orient[v] = UP
    return LowerMatch(shape, arcs, tuple(orient.items()))


def weights_of_match(S: LowerMatch) -> tuple:
    """Inverse of match_from_weights: down arrows per box."""
    if S.orientation is None:
        raise ValueError("weights need an oriented match")
    box = box_of(S.shape)
    a = [0] * len(S.shape)
    for p, _ in S.arcs:
        a[box[p]] += 1
    for v, o in S.orientation:
        if o == DOWN:
            a[box[v]] += 1
    return tuple(a)


def rn_of_match(S: LowerMatch) -> tuple:
    """(r^S, n^S): left endpoints per box, and box size minus right endpoints."""
    box = box_of(S.shape)
    r = [0] * len(S.shape)
    n = list(S.shape)
    for p, q in S.arcs:
        r[box[p]] += 1
        n[box[q]] -= 1
    return tuple(r), tuple(n)


def lm_of_match(b: LowerMatch) -> tuple:
    """(l^b, m^b): left endpoints per box, unmatched vertices per box."""
    box = box_of(b.shape)
    l, _ = rn_of_match(b)
    m = [0] * len(b.shape)
    for v in b.unmatched():
        m[box[v]] += 1
    return l, tuple(m)


def leq_match(S1: LowerMatch, S2: LowerMatch) -> bool:
    if S1.shape != S2.shape:
        raise ValueError("matches on different shapes")
    return S1.arcs <= S2.arcs


def unmatched_arrows(S: LowerMatch) -> tuple:
    orient = dict(S.orientation or ())
    ups = [v for v, o in sorted(orient.items()) if o == UP]
    downs = [v for v, o in sorted(orient.items()) if o == DOWN]
    return ups, downs


def _toggle(shape, a, pick_up: bool):
    M = match_from_weights(shape, a)
    ups, downs = unmatched_arrows(M)
    if pick_up:
        if not ups:
            return None
        v, new = ups[-1], DOWN
    else:
        if not downs:
            return None
        v, new = downs[0], UP
    orient = dict(M.orientation)
    orient[v] = new
    toggled = LowerMatch(M.shape, M.arcs, tuple(orient.items()))
    a2 = weights_of_match(toggled)
    if match_from_weights(shape, a2) != toggled:
        raise AssertionError("toggled diagram is not of the form M(d, a)")
    return a2


def a_plus(shape, a):
    """Flip the rightmost unmatched up arrow of M(d, a); None if there is none."""
    return _toggle(tuple(shape), tuple(a), True)


def a_minus(shape, a):
    """Flip the leftmost unmatched down arrow of M(d, a); None if there is none."""
    return _toggle(tuple(shape), tuple(a), False)


def n_of_weights(shape, a) -> tuple:
    return rn_of_match(match_from_weights(shape, a))[1]


def match_of_kernel(shape, n) -> LowerMatch:
    """Unoriented b with n^b = n (all unmatched vertices forced down)."""
    return match_from_weights(shape, n).unoriented()


# ---------------------------------------------------------------------------
# text picture


def render(S: LowerMatch) -> str:
    """Two rows per box group: arrows (^ up, v down, o unoriented) and arcs
    as parentheses (| for an unmatched vertex)."""
    left = {p for p, _ in S.arcs}
    right = {q for _, q in S.arcs}
    orient = dict(S.orientation or ())
    top, bottom = [], []
    v = 1
    for size in S.shape:
        arrows, parens = [], []
        for _ in range(size):
            if v in left:
                arrows.append("v")
                parens.append("(")
            elif v in right:
                arrows.append("^")
                parens.append(")")
            else:
                arrows.append({UP: "^", DOWN: "v"}.get(orient.get(v), "o"))
                parens.append("|")
            v += 1
        top.append("[" + "".join(arrows) + "]")
        bottom.append("[" + "".join(parens) + "]")
    arcs = ", ".join(f"{p}-{q}" for p, q in S.sorted_arcs()) or "none"
    return "\n".join(["".join(top), "".join(bottom), f"arcs: {arcs}"])
