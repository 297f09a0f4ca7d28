"""Counting on the integer grid {0..m-1}^2: prime segments, prime k-holes and
interior-empty triangles.

Lengths and distances on the grid are L-infinity throughout.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, permutations

from .geom import (Location, Point, PointSet, Polygon, is_simple_polygon, on_segment, orient,
                   point_in_polygon, segments_intersect, signed_area2)

# Euler-Mascheroni constant to 10 decimals (|error| < 1e-10); only feeds a
# floating-point sanity bound, never an exact count.
EULER_GAMMA = 0.5772156649

DEFAULT_MAX_K = 6


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class SlopeVector:
    dx: int
    dy: int


@dataclass(frozen=True)
class SegmentTriangles:
    nondegenerate: int
    degenerate: int

    @property
    def total(self) -> int:
        return self.nondegenerate + self.degenerate


@dataclass(frozen=True)
class GridSpec:
    m: int

    def __post_init__(self):
        if self.m < 2:
            raise PreconditionError("precondition: grid side m must be at least 2")

    @property
    def n(self) -> int:
        return self.m * self.m

    @cached_property
    def points(self) -> tuple[Point, ...]:
        return tuple(Point(x, y) for x in range(self.m) for y in range(self.m))

    @cached_property
    def pointset(self) -> PointSet:
        return PointSet(self.points, collinear_allowed=True)

    def index(self, p) -> int:
        x, y = p
        if not self.contains(p):
            raise PreconditionError(f"precondition: {p} is outside the {self.m}x{self.m} grid")
        return x * self.m + y

    def contains(self, p) -> bool:
        return 0 <= p[0] < self.m and 0 <= p[1] < self.m

    def central_block(self) -> range:
        """Coordinate range of the central (m//3) x (m//3) subgrid."""
        s = self.m // 3
        lo = (self.m - s) // 2
        return range(lo, lo + s)


def _as_grid(grid) -> GridSpec:
    return grid if isinstance(grid, GridSpec) else GridSpec(int(grid))


def is_prime_segment(p, q) -> bool:
    if tuple(p) == tuple(q):
        raise ValueError("segment endpoints must differ")
    return math.gcd(abs(q[0] - p[0]), abs(q[1] - p[1])) == 1


def slope_vector(p, q) -> SlopeVector:
    dx, dy = q[0] - p[0], q[1] - p[1]
    g = math.gcd(abs(dx), abs(dy))
    if g == 0:
        raise ValueError("segment endpoints must differ")
    dx, dy = dx // g, dy // g
    if dx < 0 or (dx == 0 and dy < 0):
        dx, dy = -dx, -dy
    return SlopeVector(dx, dy)


def linf(p, q) -> int:
    return max(abs(q[0] - p[0]), abs(q[1] - p[1]))


def collinear_grid_points(grid, p, q) -> int:
    """Number of grid points on the line through p and q."""
    g = _as_grid(grid)
    sv = slope_vector(p, q)
    # integer t with 0 <= c + t*st <= m-1 in both coordinates
    lo, hi = None, None
    for c, st in ((p[0], sv.dx), (p[1], sv.dy)):
        if st == 0:
            if not 0 <= c < g.m:
                return 0
            continue
        a, b = Fraction(-c, st), Fraction(g.m - 1 - c, st)
        a, b = min(a, b), max(a, b)
        lo = math.ceil(a) if lo is None else max(lo, math.ceil(a))
        hi = math.floor(b) if hi is None else min(hi, math.floor(b))
    return max(0, hi - lo + 1)


def is_cutting_line(grid, p, q) -> bool:
    """Line through p, q meets both vertical or both horizontal sides of the
    grid's bounding square (closed sides)."""
    g = _as_grid(grid)
    top = g.m - 1
    dx, dy = q[0] - p[0], q[1] - p[1]

    def meets_vertical(xv):
        if dx == 0:
            return p[0] == xv
        y = Fraction(p[1]) + Fraction((xv - p[0]) * dy, dx)
        return 0 <= y <= top

    def meets_horizontal(yv):
        if dy == 0:
            return p[1] == yv
        x = Fraction(p[0]) + Fraction((yv - p[1]) * dx, dy)
        return 0 <= x <= top

    return (meets_vertical(0) and meets_vertical(top)) or (meets_horizontal(0) and meets_horizontal(top))


def euler_phi(d: int) -> int:
    """Euler's totient by trial factorisation."""
    if d < 1:
        raise ValueError("d must be positive")
    result, n, f = d, d, 2
    while f * f <= n:
        if n % f == 0:
            while n % f == 0:
                n //= f
            result -= result // f
        f += 1
    if n > 1:
        result -= result // n
    return result


def phi_lower_bound(d: int) -> float:
    """d / (e^gamma ln ln d + 3 / ln ln d), valid for d >= 3."""
    if d < 3:
        raise ValueError("bound stated for d >= 3")
    ll = math.log(math.log(d))
    return d / (math.exp(EULER_GAMMA) * ll + 3 / ll)


def prime_partners_at_distance(grid, p, d: int) -> int:
    """Grid points q at L-infinity distance d from p with pq prime.

    Requires p in the central subgrid and 1 <= d < m/3; then the answer is
    always 8 * phi(d).
    """
    g = _as_grid(grid)
    block = g.central_block()
    if p[0] not in block or p[1] not in block or not 1 <= d or 3 * d >= g.m:
        raise PreconditionError(f"precondition: need p in the central subgrid and 1 <= d < m/3 (p={p}, d={d})")
    count = 0
    for a in range(-d, d + 1):
        for b in range(-d, d + 1):
            if max(abs(a), abs(b)) != d:
                continue
            q = (p[0] + a, p[1] + b)
            if not g.contains(q):
                raise PreconditionError("precondition: ring leaves the grid")
            if math.gcd(abs(a), abs(b)) == 1:
                count += 1
    return count


def observation_bounds(grid, p, q) -> tuple[int, int | None, int]:
    """(points on line pq, lower bound or None, upper bound) for a prime segment.

    The upper bound ceil(m/d) holds for every prime segment of L-infinity
    length d; the lower bound floor(m/d) is only claimed for cutting lines.
    """
    g = _as_grid(grid)
    if not is_prime_segment(p, q):
        raise ValueError("segment is not prime")
    d = linf(p, q)
    count = collinear_grid_points(g, p, q)
    lower = g.m // d if is_cutting_line(g, p, q) else None
    return count, lower, -(-g.m // d)


# --- interior-empty triangles -------------------------------------------------

def grid_segment_empty_triangles(grid, p, q) -> SegmentTriangles:
    """Third points r forming an interior-empty triangle with segment pq.

    Collinear r (other than p, q) give degenerate triangles and are counted in
    a separate field.
    """
    g = _as_grid(grid)
    i, j = g.index(p), g.index(q)
    if i == j:
        raise ValueError("segment endpoints must differ")
    E = g.pointset.empty_triangles
    O = g.pointset.orient_table
    nondeg = deg = 0
    for r in range(g.n):
        if r == i or r == j:
            continue
        if O[i][j][r] == 0:
            deg += 1
        elif E[i][j][r]:
            nondeg += 1
    return SegmentTriangles(nondeg, deg)


def max_segment_triangles(grid) -> tuple[int, tuple[Point, Point]]:
    """Largest total (degenerate included) over all segments of the grid."""
    g = _as_grid(grid)
    best, arg = -1, None
    pts = g.points
    for a, b in combinations(pts, 2):
        t = grid_segment_empty_triangles(g, a, b).total
        if t > best:
            best, arg = t, (a, b)
    return best, arg


# --- prime k-holes -----------------------------------------------------------------

def _prime_adjacency(g: GridSpec) -> list[list[int]]:
    pts = g.points
    adj = [[] for _ in pts]
    for i, j in combinations(range(len(pts)), 2):
        if is_prime_segment(pts[i], pts[j]):
            adj[i].append(j)
            adj[j].append(i)
    return adj


def _folds(a, b, c) -> bool:
    """Adjacent edges ab, bc overlap (collinear and turning back)."""
    return orient(a, b, c) == 0 and (a[0] - b[0]) * (c[0] - b[0]) + (a[1] - b[1]) * (c[1] - b[1]) > 0


def _interior_empty(g: GridSpec, cyc) -> bool:
    """Ear-clip an index cycle; empty iff every ear has no lattice point strictly
    inside and every diagonal is prime."""
    pts = g.points
    E = g.pointset.empty_triangles
    vs = list(cyc)
    sgn = 1 if signed_area2([pts[v] for v in vs]) > 0 else -1
    changed = True
    while changed and len(vs) > 3:
        changed = False
        for i in range(len(vs)):
            if orient(pts[vs[i - 1]], pts[vs[i]], pts[vs[(i + 1) % len(vs)]]) == 0:
                del vs[i]
                changed = True
                break
    while len(vs) > 3:
        k = len(vs)
        for i in range(k):
            a, b, c = vs[i - 1], vs[i], vs[(i + 1) % k]
            pa, pb, pc = pts[a], pts[b], pts[c]
            if orient(pa, pb, pc) != sgn:
                continue
            clear = True
            for d in vs:
                if d in (a, b, c):
                    continue
                pd = pts[d]
                o1, o2, o3 = orient(pa, pb, pd), orient(pb, pc, pd), orient(pc, pa, pd)
                if sgn * o1 >= 0 and sgn * o2 >= 0 and sgn * o3 >= 0:
                    clear = False
                    break
            if not clear:
                continue
            if not E[a][b][c] or not is_prime_segment(pa, pc):
                return False
            del vs[i]
            break
        else:
            return False
    return bool(E[vs[0]][vs[1]][vs[2]])


def prime_hole_cycles(grid, k: int, max_k: int = DEFAULT_MAX_K) -> list[tuple[int, ...]]:
    """Index cycles of all prime k-holes of the grid.

    Cycles start at their smallest index with ``cycle[1] < cycle[-1]``; they are
    grown along prime edges only and cut as soon as a new edge touches a
    non-adjacent earlier edge. Straight-angle vertices are allowed.
    """
    g = _as_grid(grid)
    if k < 3:
        raise ValueError("k must be at least 3")
    if k > max_k:
        raise PreconditionError(f"precondition: k={k} exceeds max_k={max_k}; pass max_k to override")
    pts = g.points
    adj = _prime_adjacency(g)
    adjset = [set(a) for a in adj]
    out: list[tuple[int, ...]] = []

    def edge_ok(path, v) -> bool:
        last = path[-1]
        pl, pv = pts[last], pts[v]
        if len(path) >= 2 and _folds(pts[path[-2]], pl, pv):
            return False
        for i in range(len(path) - 2):
            if segments_intersect(pts[path[i]], pts[path[i + 1]], pl, pv):
                return False
        return True

    def rec(path):
        if len(path) == k:
            first, last = path[0], path[-1]
            if path[1] > last or first not in adjset[last]:
                return
            pf, pl = pts[first], pts[last]
            if _folds(pts[path[-2]], pl, pf) or _folds(pl, pf, pts[path[1]]):
                return
            for i in range(1, k - 2):
                if segments_intersect(pts[path[i]], pts[path[i + 1]], pl, pf):
                    return
            if signed_area2([pts[v] for v in path]) == 0:
                return
            if _interior_empty(g, path):
                out.append(tuple(path))
            return
        for v in adj[path[-1]]:
            if v <= path[0] or v in path:
                continue
            if edge_ok(path, v):
                path.append(v)
                rec(path)
                path.pop()

    for s in range(g.n):
        rec([s])
    return out


def count_prime_k_holes(grid, k: int, max_k: int = DEFAULT_MAX_K) -> int:
    return len(prime_hole_cycles(grid, k, max_k))


def is_prime_k_hole(grid, verts) -> bool:
    """Independent check of one polygon: simple, prime edges, no grid point
    strictly inside. Uses only the coordinate routines of :mod:`kholes.geom`."""
    g = _as_grid(grid)
    verts = [Point(*v) for v in verts]
    if len(verts) < 3 or len(set(verts)) != len(verts):
        return False
    if not all(g.contains(v) for v in verts):
        return False
    poly = Polygon(tuple(verts))
    if poly.area2 == 0 or not is_simple_polygon(poly):
        return False
    if not all(is_prime_segment(a, b) for a, b in poly.edges()):
        return False
    xs = [v.x for v in verts]
    ys = [v.y for v in verts]
    vset = set(verts)
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            if (x, y) in vset:
                continue
            if point_in_polygon((x, y), poly) is Location.INSIDE:
                return False
    return True


def count_prime_k_holes_oracle(grid, k: int) -> int:
    """Brute force over k-subsets and all vertex orders, deduplicated by
    canonical polygon. Slow; meant for m <= 5."""
    g = _as_grid(grid)
    seen = set()
    for sub in combinations(g.points, k):
        first, rest = sub[0], sub[1:]
        for perm in permutations(rest):
            poly = Polygon((first,) + perm)
            if poly in seen:
                continue
            if is_prime_k_hole(g, poly.vertices):
                seen.add(poly)
    return len(seen)


# --- row-structured prime holes ----------------------------------------------------

def row_hole_lower_bound(m: int, k: int) -> int:
    return (m - k // 2) * (m - 1) ** (k // 2 + 1)


def row_structured_candidates(grid, k: int):
    """Yield vertex lists of the row-structured polygons.

    Rows r0 < r0+1 < ... < r0+h with h = floor(k/2): one point in the lowest row,
    two horizontally adjacent points in each middle row, and one (k even) or two
    adjacent (k odd) points in the top row. The polygon climbs the right-hand
    points and descends the left-hand ones.
    """
    g = _as_grid(grid)
    m = g.m
    if k < 3:
        raise ValueError("k must be at least 3")
    h = k // 2
    mids = (k - 2) // 2 if k % 2 == 0 else (k - 3) // 2
    top_pair = k % 2 == 1
    if h + 1 > m:
        return

    def choose(rows_left, acc):
        if rows_left == 0:
            yield list(acc)
            return
        for x in range(m - 1):
            acc.append(x)
            yield from choose(rows_left - 1, acc)
            acc.pop()

    for r0 in range(m - h):
        for low in range(m):
            for mid in choose(mids, []):
                tops = range(m - 1) if top_pair else range(m)
                for top in tops:
                    right = [(x + 1, r0 + 1 + i) for i, x in enumerate(mid)]
                    left = [(x, r0 + 1 + i) for i, x in enumerate(mid)]
                    ty = r0 + h
                    if top_pair:
                        crown = [(top + 1, ty), (top, ty)]
                    else:
                        crown = [(top, ty)]
                    yield [(low, r0)] + right + crown + left[::-1]


def count_row_structured_prime_holes(grid, k: int) -> tuple[int, int]:
    """(valid, candidates): every candidate is checked with :func:`is_prime_k_hole`."""
    g = _as_grid(grid)
    valid = total = 0
    for verts in row_structured_candidates(g, k):
        total += 1
        if is_prime_k_hole(g, verts):
            valid += 1
    return valid, total


def prime_holes_transfer(grid, perturbed: PointSet, k: int) -> tuple[int, int]:
    """(holes kept, prime holes) when the grid's prime k-holes are carried over
    index-for-index to a perturbed copy of the grid."""
    from .census import cycle_is_empty, cycle_sign
    g = _as_grid(grid)
    if perturbed.n != g.n:
        raise ValueError("perturbed set must have m^2 points in grid order")
    O, E, rank = perturbed.orient_table, perturbed.empty_triangles, perturbed.lex_rank
    cycles = prime_hole_cycles(g, k)
    kept = 0
    for cyc in cycles:
        poly = [perturbed.points[v] for v in cyc]
        if not is_simple_polygon(poly):
            continue
        if cycle_is_empty(O, E, cyc, cycle_sign(O, rank, cyc)):
            kept += 1
    return kept, len(cycles)
