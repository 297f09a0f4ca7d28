"""Exact k-gon and k-hole counting, with the counters built on top of it.

All counters work on the orientation table of a :class:`PointSet` in general
position, so after the table is built no coordinate arithmetic happens. Counts
are plain Python ints.

Enumeration scheme: k-subsets in increasing index order;
for each subset, cyclic orders with the smallest index fixed first, grown
edge by edge and pruned as soon as a new edge crosses an earlier one. A
reflection is removed by requiring ``cycle[1] < cycle[-1]``.
"""
from __future__ import annotations

import enum
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from math import comb

from .geom import GeometryError, Point, PointSet, subsets_in_convex_position


class GonClass(enum.Enum):
    CONVEX = "convex"
    NONCONVEX = "nonconvex"
    GENERAL = "general"


class InvariantViolation(AssertionError):
    """A structural invariant that the counting argument relies on failed."""


@dataclass(frozen=True)
class GonCount:
    k: int
    cls: GonClass
    empty_only: bool
    count: int

    def __int__(self) -> int:
        return self.count


def _require_gp(S: PointSet) -> None:
    if S.collinear_allowed:
        raise GeometryError("degenerate: counting requires general position")


def _as_class(cls) -> GonClass:
    return cls if isinstance(cls, GonClass) else GonClass(str(cls).lower())


# --- cycle enumeration ------------------------------------------------------

def simple_cycles(O, vs) -> list[tuple[int, ...]]:
    """All simple cyclic orders of the index set ``vs`` (general position).

    Each undirected cycle is returned once, starting at ``vs[0]`` (which must be
    the smallest index) with ``cycle[1] < cycle[-1]``.
    """
    k = len(vs)
    if k == 3:
        return [tuple(vs)]
    first = vs[0]
    rest = list(vs[1:])
    out: list[tuple[int, ...]] = []
    path = [first]
    used = {v: False for v in rest}

    def rec():
        last = path[-1]
        depth = len(path)
        if depth == k:
            if path[1] > last:
                return
            Olf = O[last][first]
            for i in range(1, k - 2):
                a, b = path[i], path[i + 1]
                if Olf[a] * Olf[b] < 0:
                    Oab = O[a][b]
                    if Oab[last] * Oab[first] < 0:
                        return
            out.append(tuple(path))
            return
        Ol = O[last]
        for v in rest:
            if used[v]:
                continue
            Olv = Ol[v]
            for i in range(depth - 2):
                a, b = path[i], path[i + 1]
                if Olv[a] * Olv[b] < 0:
                    Oab = O[a][b]
                    if Oab[last] * Oab[v] < 0:
                        break
            else:
                used[v] = True
                path.append(v)
                rec()
                path.pop()
                used[v] = False

    rec()
    return out


def cycle_sign(O, rank, cyc) -> int:
    """+1 if the cycle runs counter-clockwise, -1 otherwise.

    The lexicographically smallest vertex is a convex corner, so the turn there
    gives the orientation.
    """
    k = len(cyc)
    i = min(range(k), key=lambda t: rank[cyc[t]])
    return O[cyc[i - 1]][cyc[i]][cyc[(i + 1) % k]]


def cycle_is_empty(O, E, cyc, sgn) -> bool:
    """Ear-clip the cycle and test every ear against the empty-triangle table."""
    vs = list(cyc)
    while len(vs) > 3:
        k = len(vs)
        for i in range(k):
            a, b, c = vs[i - 1], vs[i], vs[(i + 1) % k]
            if O[a][b][c] != sgn:
                continue
            Oab, Obc, Oca = O[a][b], O[b][c], O[c][a]
            blocked = False
            for d in vs:
                if d != a and d != b and d != c and Oab[d] == sgn and Obc[d] == sgn and Oca[d] == sgn:
                    blocked = True
                    break
            if blocked:
                continue
            if not E[a][b][c]:
                return False
            del vs[i]
            break
        else:
            raise GeometryError("no ear found; cycle is not simple")
    return E[vs[0]][vs[1]][vs[2]]


def _is_island_subset(O, E, vs) -> bool:
    """True if the convex hull of ``vs`` holds no point outside ``vs``.

    Uses the fact that a point inside the hull lies in a triangle of subset
    points: every triangle empty of *other* points is what we need, and
    E counts subset points too, so we test non-members directly.
    """
    members = set(vs)
    n = len(O)
    for a, b, c in combinations(vs, 3):
        if E[a][b][c]:
            continue
        s = O[a][b][c]
        Oab, Obc, Oca = O[a][b], O[b][c], O[c][a]
        for d in range(n):
            if d not in members and Oab[d] == s and Obc[d] == s and Oca[d] == s:
                return False
    return True


# --- gons and holes -----------------------------------------------------------

def _convex_rec(O, E, n, k, empty_only, cur, start, acc):
    if len(cur) == k:
        acc[0] += 1
        return
    need = k - len(cur)
    for p in range(start, n - need + 1):
        if _can_extend_convex(O, E, cur, p, empty_only):
            cur.append(p)
            _convex_rec(O, E, n, k, empty_only, cur, p + 1, acc)
            cur.pop()


def _can_extend_convex(O, E, cur, p, empty_only) -> bool:
    Op = O[p]
    for a, b in combinations(cur, 2):
        if empty_only and not E[p][a][b]:
            return False
        s = Op[a][b]
        Opa, Oab, Obp = Op[a], O[a][b], O[b][p]
        for c in cur:
            if c != a and c != b and Opa[c] == s and Oab[c] == s and Obp[c] == s:
                return False
    for a, b, c in combinations(cur, 3):
        s = O[a][b][c]
        if O[a][b][p] == s and O[b][c][p] == s and O[c][a][p] == s:
            return False
    return True


def _count_convex(S: PointSet, k: int, empty_only: bool, firsts=None) -> int:
    """Convex k-gons (or k-holes): subsets grown one point at a time and cut as
    soon as the partial set leaves convex position (or, for holes, stops being
    empty, which is inherited by every superset)."""
    O = S.orient_table
    E = S.empty_triangles if empty_only else None
    n = S.n
    acc = [0]
    if k < 3:
        return comb(n, k)
    firsts = range(n - k + 1) if firsts is None else firsts
    for f in firsts:
        _convex_rec(O, E, n, k, empty_only, [f], f + 1, acc)
    return acc[0]


def _gon_counts_chunk(S: PointSet, k: int, empty_only: bool, firsts) -> tuple[int, int]:
    O = S.orient_table
    E = S.empty_triangles if empty_only else None
    rank = S.lex_rank
    n = S.n
    conv = nonconv = 0
    for f in firsts:
        for tail in combinations(range(f + 1, n), k - 1):
            vs = (f,) + tail
            if subsets_in_convex_position(O, vs):
                if not empty_only or _is_island_subset(O, E, vs):
                    conv += 1
                continue
            cycles = simple_cycles(O, vs)
            if not empty_only:
                nonconv += len(cycles)
                continue
            if _is_island_subset(O, E, vs):
                nonconv += len(cycles)
                continue
            for cyc in cycles:
                if cycle_is_empty(O, E, cyc, cycle_sign(O, rank, cyc)):
                    nonconv += 1
    return conv, nonconv


def _split(n: int, k: int, jobs: int) -> list[list[int]]:
    firsts = list(range(n - k + 1))
    return [firsts[i::jobs] for i in range(jobs) if firsts[i::jobs]]


def _resolve_jobs(jobs) -> int:
    if jobs is None or jobs <= 0:
        return os.cpu_count() or 1
    return jobs


def gon_counts(S: PointSet, k: int, empty_only: bool = False, jobs: int = 1) -> dict[GonClass, int]:
    """Per-class k-gon (or k-hole) counts in one pass."""
    _require_gp(S)
    if not 3 <= k <= S.n:
        raise ValueError(f"k must satisfy 3 <= k <= n, got k={k}, n={S.n}")
    jobs = _resolve_jobs(jobs)
    if jobs == 1:
        conv, nonconv = _gon_counts_chunk(S, k, empty_only, range(S.n - k + 1))
    else:
        chunks = _split(S.n, k, jobs)
        with ProcessPoolExecutor(max_workers=len(chunks)) as ex:
            parts = list(ex.map(_gon_counts_chunk, [S] * len(chunks), [k] * len(chunks),
                                [empty_only] * len(chunks), chunks))
        conv = sum(p[0] for p in parts)
        nonconv = sum(p[1] for p in parts)
    return {GonClass.CONVEX: conv, GonClass.NONCONVEX: nonconv, GonClass.GENERAL: conv + nonconv}


def count_gons(S: PointSet, k: int, cls=GonClass.GENERAL, empty_only: bool = False,
               jobs: int = 1) -> GonCount:
    cls = _as_class(cls)
    _require_gp(S)
    if not 3 <= k <= S.n:
        raise ValueError(f"k must satisfy 3 <= k <= n, got k={k}, n={S.n}")
    if cls is GonClass.CONVEX:
        value = _count_convex(S, k, empty_only)
    else:
        value = gon_counts(S, k, empty_only, jobs)[cls]
    return GonCount(k, cls, empty_only, value)


def count_holes(S: PointSet, k: int, cls=GonClass.GENERAL, jobs: int = 1) -> int:
    return count_gons(S, k, cls, True, jobs).count


def crossing_number(S: PointSet) -> int:
    """Number of 4-subsets in convex position."""
    _require_gp(S)
    if S.n < 4:
        return 0
    return _count_convex(S, 4, False)


def edge_crossings(S: PointSet) -> int:
    """Proper crossings between disjoint edges of the complete straight-line
    graph on S. Equal to :func:`crossing_number`, but counted edge by edge."""
    _require_gp(S)
    O = S.orient_table
    edges = list(combinations(range(S.n), 2))
    total = 0
    for (a, b), (c, d) in combinations(edges, 2):
        if a in (c, d) or b in (c, d):
            continue
        if O[a][b][c] != O[a][b][d] and O[c][d][a] != O[c][d][b]:
            total += 1
    return total


def polygonization_count(S: PointSet) -> int:
    if S.n < 3:
        raise ValueError("need at least 3 points")
    return count_gons(S, S.n, GonClass.GENERAL).count


def polygonizations(S: PointSet) -> list[tuple[int, ...]]:
    """Index cycles of all spanning simple polygons of S."""
    _require_gp(S)
    vs = list(range(S.n))
    if subsets_in_convex_position(S.orient_table, vs):
        from .geom import convex_hull
        hull = convex_hull(S.points).vertices
        where = {p: i for i, p in enumerate(S.points)}
        return [tuple(where[p] for p in hull)]
    return simple_cycles(S.orient_table, vs)


# --- islands and empty triangles ---------------------------------------------

def count_islands(S: PointSet, k: int) -> int:
    _require_gp(S)
    n = S.n
    if not 1 <= k <= n:
        raise ValueError(f"k must satisfy 1 <= k <= n, got {k}")
    if k <= 2:
        return comb(n, k)
    O, E = S.orient_table, S.empty_triangles
    return sum(1 for vs in combinations(range(n), k) if _is_island_subset(O, E, vs))


def _index_of(S: PointSet, p) -> int:
    if isinstance(p, int):
        return p
    try:
        return S.points.index(Point(*p))
    except ValueError:
        raise ValueError(f"{p} is not a point of the set") from None


def empty_triangles_on_segment(S: PointSet, p, q) -> int:
    """Number of r in S for which triangle pqr contains no point of S."""
    _require_gp(S)
    i, j = _index_of(S, p), _index_of(S, q)
    E = S.empty_triangles
    return sum(1 for r in range(S.n) if r != i and r != j and E[i][j][r])


# --- representations of non-convex holes ----------------------------------------

def representation_count_nonconvex(S: PointSet, k: int) -> int:
    """Count vertex sequences (v1, ..., vk) of non-convex k-holes.

    A sequence qualifies when v1..v(k-1) is a counter-clockwise simple
    (k-1)-gon and appending vk gives a counter-clockwise simple empty k-gon
    with vk reflex. Every non-convex k-hole has at least one such sequence, and
    each prefix admits at most one completion; a second completion raises
    :class:`InvariantViolation`.
    """
    _require_gp(S)
    if not 4 <= k <= S.n:
        raise ValueError(f"k must satisfy 4 <= k <= n, got {k}")
    O, E, rank, n = S.orient_table, S.empty_triangles, S.lex_rank, S.n
    total = 0
    prefix: list[int] = []
    used = [False] * n

    def prefix_ok() -> bool:
        # last edge against earlier non-adjacent edges
        d = len(prefix)
        last, prev = prefix[-1], prefix[-2]
        Opl = O[prev][last]
        for i in range(d - 3):
            a, b = prefix[i], prefix[i + 1]
            if Opl[a] * Opl[b] < 0 and O[a][b][prev] * O[a][b][last] < 0:
                return False
        return True

    def closes(cyc) -> bool:
        m = len(cyc)
        last, first = cyc[-1], cyc[0]
        Olf = O[last][first]
        for i in range(1, m - 2):
            a, b = cyc[i], cyc[i + 1]
            if Olf[a] * Olf[b] < 0 and O[a][b][last] * O[a][b][first] < 0:
                return False
        return True

    def complete():
        nonlocal total
        cyc = tuple(prefix)
        if not closes(cyc) or cycle_sign(O, rank, cyc) != 1:
            return
        v1, vl = prefix[0], prefix[-1]
        found = 0
        for w in range(n):
            if used[w] or O[vl][w][v1] >= 0:
                continue
            Ow = O[w]
            ok = True
            # edges (vl, w) and (w, v1) against prefix edges not touching them
            for i in range(k - 2):
                a, b = prefix[i], prefix[i + 1]
                if i < k - 3:
                    Ovw = O[vl][w]
                    if Ovw[a] * Ovw[b] < 0 and O[a][b][vl] * O[a][b][w] < 0:
                        ok = False
                        break
                if i > 0:
                    Owv = Ow[v1]
                    if Owv[a] * Owv[b] < 0 and O[a][b][w] * O[a][b][v1] < 0:
                        ok = False
                        break
            if not ok:
                continue
            full = cyc + (w,)
            if cycle_sign(O, rank, full) != 1:
                continue
            if cycle_is_empty(O, E, full, 1):
                found += 1
        if found > 1:
            raise InvariantViolation(f"prefix {cyc} admits {found} reflex completions")
        total += found

    def rec():
        if len(prefix) == k - 1:
            complete()
            return
        for v in range(n):
            if used[v]:
                continue
            prefix.append(v)
            used[v] = True
            if len(prefix) < 3 or prefix_ok():
                rec()
            used[v] = False
            prefix.pop()

    rec()
    return total


# --- quadratic witnesses ----------------------------------------------------------

def min_khole_witnesses(S: PointSet, k: int) -> int:
    """Number of x-sorted pairs (p_i, p_j), j - i >= k - 1, whose k-2 points of
    S_ij nearest the segment p_i p_j complete a k-hole with p_i, p_j as its
    leftmost and rightmost vertices.

    Points are sorted by x with ties broken by y. "Nearest" compares the exact
    value |cross(p_i, p_j, r)|, i.e. the distance to the supporting line scaled
    by the fixed length |p_i p_j|; ties go to the lower sorted position.
    """
    _require_gp(S)
    n = S.n
    if not 3 <= k <= n:
        raise ValueError(f"k must satisfy 3 <= k <= n, got {k}")
    order = sorted(range(n), key=lambda t: S.points[t])
    O, E, rank = S.orient_table, S.empty_triangles, S.lex_rank
    pts = S.points
    found = 0
    for a in range(n):
        for b in range(a + k - 1, n):
            pi, pj = pts[order[a]], pts[order[b]]
            between = order[a + 1:b]

            def dist(t, pi=pi, pj=pj):
                r = pts[t]
                return abs((pj[0] - pi[0]) * (r[1] - pi[1]) - (pj[1] - pi[1]) * (r[0] - pi[0]))

            chosen = sorted(between, key=lambda t: (dist(t), rank[t]))[: k - 2]
            vs = sorted([order[a], order[b]] + chosen)
            if _has_witness(O, E, rank, vs):
                found += 1
    return found


def _has_witness(O, E, rank, vs) -> bool:
    if subsets_in_convex_position(O, vs):
        return _is_island_subset(O, E, vs)
    for cyc in simple_cycles(O, vs):
        if cycle_is_empty(O, E, cyc, cycle_sign(O, rank, cyc)):
            return True
    return False
