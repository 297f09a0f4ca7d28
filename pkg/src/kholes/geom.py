"""Exact planar primitives on integer points.

Everything here works on Python integers, so predicates are exact for any
coordinate magnitude. Orientation tables are built with numpy in int64 when the
coordinates are small enough for the 2x2 determinant to fit, and with object
arrays of Python ints otherwise.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

import numpy as np


class GeometryError(ValueError):
    """Raised for degenerate or otherwise invalid geometric input."""


class Point(NamedTuple):
    x: int
    y: int


class Orientation(enum.IntEnum):
    CW = -1
    COLLINEAR = 0
    CCW = 1


class Location(enum.Enum):
    INSIDE = "inside"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


def cross(p: Point, q: Point, r: Point) -> int:
    """Twice the signed area of triangle pqr."""
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def orient(p: Point, q: Point, r: Point) -> int:
    d = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (d > 0) - (d < 0)


def orientation(p: Point, q: Point, r: Point) -> Orientation:
    return Orientation(orient(p, q, r))


def on_segment(p: Point, a: Point, b: Point) -> bool:
    """True if p lies on the closed segment ab."""
    if orient(a, b, p) != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Closed-segment intersection test, collinear overlaps included."""
    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return (
        (o1 == 0 and on_segment(c, a, b))
        or (o2 == 0 and on_segment(d, a, b))
        or (o3 == 0 and on_segment(a, c, d))
        or (o4 == 0 and on_segment(b, c, d))
    )


# int64 holds the determinant as long as coordinate differences stay below 2**30
_FAST_LIMIT = 1 << 29


def orientation_array(points: Sequence[Point]) -> np.ndarray:
    """Array ``O[i, j, l] = orient(points[i], points[j], points[l])`` as int8."""
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    big = any(abs(v) >= _FAST_LIMIT for v in xs + ys)
    dtype = object if big else np.int64
    x = np.array(xs, dtype=dtype)
    y = np.array(ys, dtype=dtype)
    dx = x[None, :] - x[:, None]  # dx[i, j] = x_j - x_i
    dy = y[None, :] - y[:, None]
    det = dx[:, :, None] * dy[:, None, :] - dy[:, :, None] * dx[:, None, :]
    if big:
        return np.vectorize(lambda v: (v > 0) - (v < 0), otypes=[np.int8])(det)
    return np.sign(det).astype(np.int8)


@dataclass(frozen=True)
class PointSet:
    """An ordered collection of distinct integer points.

    General position (no three collinear) is enforced unless
    ``collinear_allowed`` is set, which only the grid code uses.
    """

    points: tuple[Point, ...]
    collinear_allowed: bool = False

    def __init__(self, points: Iterable[Sequence[int]], collinear_allowed: bool = False):
        pts = tuple(Point(int(p[0]), int(p[1])) for p in points)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "collinear_allowed", collinear_allowed)
        if len(set(pts)) != len(pts):
            raise GeometryError("degenerate: repeated point")
        if not collinear_allowed and len(pts) >= 3:
            triple = find_collinear_triple(self)
            if triple is not None:
                raise GeometryError(f"degenerate: collinear triple {triple}")

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    @property
    def n(self) -> int:
        return len(self.points)

    @cached_property
    def orient_array(self) -> np.ndarray:
        return orientation_array(self.points)

    @cached_property
    def orient_table(self) -> list:
        """Nested-list copy of :attr:`orient_array` for fast scalar lookups."""
        return self.orient_array.tolist()

    @cached_property
    def lex_rank(self) -> list[int]:
        order = sorted(range(len(self.points)), key=lambda i: self.points[i])
        rank = [0] * len(order)
        for r, i in enumerate(order):
            rank[i] = r
        return rank

    @cached_property
    def empty_triangles(self) -> list:
        """``E[i][j][l]`` is True iff triangle (i, j, l) is non-degenerate and has no
        point of the set strictly inside."""
        return empty_triangle_array(self.orient_array).tolist()


def empty_triangle_array(O: np.ndarray) -> np.ndarray:
    n = O.shape[0]
    out = np.zeros((n, n, n), dtype=bool)
    O_li_r = O.transpose(1, 0, 2)  # [i, l, r] -> O[l, i, r]
    for i in range(n):
        s = O[i]                                # s[j, l] = O[i, j, l]
        inside = (
            (O[i][:, None, :] == s[:, :, None])          # O[i, j, r]
            & (O[:, :, :] == s[:, :, None])              # O[j, l, r]
            & (O_li_r[i][None, :, :] == s[:, :, None])   # O[l, i, r]
        )
        out[i] = (s != 0) & ~inside.any(axis=2)
    return out


def find_collinear_triple(ps: PointSet | Sequence[Point]):
    pts = ps.points if isinstance(ps, PointSet) else list(ps)
    if len(pts) < 3:
        return None
    O = ps.orient_array if isinstance(ps, PointSet) else orientation_array(pts)
    i, j, l = np.nonzero(O == 0)
    mask = (i < j) & (j < l)
    if not mask.any():
        return None
    a, b, c = int(i[mask][0]), int(j[mask][0]), int(l[mask][0])
    return (pts[a], pts[b], pts[c])


def is_general_position(points) -> bool:
    pts = points.points if isinstance(points, PointSet) else [Point(*p) for p in points]
    if len(set(pts)) != len(pts):
        return False
    return find_collinear_triple(pts) is None


@dataclass(frozen=True)
class Polygon:
    """A cyclic vertex sequence kept in canonical form.

    Canonical form starts at the lexicographically smallest vertex and runs
    counter-clockwise. When the signed area is zero (self-overlapping cycles)
    the lexicographically smaller of the two directions is used, so equal
    undirected cycles always compare equal.
    """

    vertices: tuple[Point, ...] = field()

    def __post_init__(self):
        verts = tuple(Point(int(v[0]), int(v[1])) for v in self.vertices)
        object.__setattr__(self, "vertices", _canonical_cycle(verts))

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def edges(self):
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    @property
    def area2(self) -> int:
        return signed_area2(self.vertices)


def signed_area2(vertices: Sequence[Point]) -> int:
    s = 0
    k = len(vertices)
    for i in range(k):
        x1, y1 = vertices[i]
        x2, y2 = vertices[(i + 1) % k]
        s += x1 * y2 - x2 * y1
    return s


def _canonical_cycle(verts: tuple[Point, ...]) -> tuple[Point, ...]:
    if not verts:
        return verts
    k = len(verts)
    m = min(range(k), key=lambda i: verts[i])
    fwd = verts[m:] + verts[:m]
    bwd = (fwd[0],) + tuple(reversed(fwd[1:]))
    a = signed_area2(fwd)
    if a > 0:
        return fwd
    if a < 0:
        return bwd
    return min(fwd, bwd)


def canonicalize_polygon(poly: Polygon | Sequence[Sequence[int]]) -> Polygon:
    if isinstance(poly, Polygon):
        return poly
    return Polygon(tuple(poly))


def convex_hull(points) -> Polygon:
    """Counter-clockwise hull of the extreme points (Andrew's monotone chain)."""
    hull, _ = _hull_with_boundary(points)
    return Polygon(tuple(hull))


def hull_boundary_points(points) -> list[Point]:
    """Points lying on the hull boundary that are not hull vertices."""
    return _hull_with_boundary(points)[1]


def _hull_with_boundary(points):
    pts = sorted(set(Point(*p) for p in points))
    if len(pts) < 3:
        raise GeometryError("degenerate: fewer than 3 points")

    def chain(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and orient(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise GeometryError("degenerate: all points collinear")
    hv = set(hull)
    boundary = []
    for p in pts:
        if p in hv:
            continue
        for i in range(len(hull)):
            if on_segment(p, hull[i], hull[(i + 1) % len(hull)]):
                boundary.append(p)
                break
    return hull, boundary


def is_convex_position(points: Sequence[Sequence[int]]) -> bool:
    pts = [Point(*p) for p in points]
    if len(pts) < 3:
        raise GeometryError("degenerate: fewer than 3 points")
    if not is_general_position(pts):
        raise GeometryError("degenerate: collinear triple")
    return len(convex_hull(pts)) == len(pts)


def is_simple_polygon(poly: Polygon | Sequence[Sequence[int]]) -> bool:
    """Exact simplicity test, valid for collinear vertices as well.

    Non-adjacent edges may not touch at all; adjacent edges may only share
    their common vertex. A vertex with a straight angle is allowed.
    """
    vs = poly.vertices if isinstance(poly, Polygon) else tuple(Point(*v) for v in poly)
    k = len(vs)
    if k < 3 or len(set(vs)) != k:
        return False
    for i in range(k):
        a, b, c = vs[i - 1], vs[i], vs[(i + 1) % k]
        # adjacent edges ab, bc overlap iff collinear and folding back
        if orient(a, b, c) == 0 and (a[0] - b[0]) * (c[0] - b[0]) + (a[1] - b[1]) * (c[1] - b[1]) > 0:
            return False
    for i in range(k):
        a, b = vs[i], vs[(i + 1) % k]
        for j in range(i + 2, k):
            if i == 0 and j == k - 1:
                continue
            c, d = vs[j], vs[(j + 1) % k]
            if segments_intersect(a, b, c, d):
                return False
    return True


def reflex_vertices(poly: Polygon) -> set[int]:
    """Indices (into the canonical CCW vertex tuple) with interior angle > pi."""
    vs = poly.vertices
    k = len(vs)
    return {i for i in range(k) if orient(vs[i - 1], vs[i], vs[(i + 1) % k]) < 0}


def _in_closed_triangle(p, a, b, c) -> bool:
    o1, o2, o3 = orient(a, b, p), orient(b, c, p), orient(c, a, p)
    return (o1 >= 0 and o2 >= 0 and o3 >= 0) or (o1 <= 0 and o2 <= 0 and o3 <= 0)


def triangulate(poly: Polygon) -> list[tuple[Point, Point, Point]]:
    """Ear-clipping triangulation of a simple polygon.

    Straight-angle vertices are dropped first; they change neither the region
    nor the triangulation's union.
    """
    vs = list(poly.vertices)
    changed = True
    while changed and len(vs) > 3:
        changed = False
        for i in range(len(vs)):
            if orient(vs[i - 1], vs[i], vs[(i + 1) % len(vs)]) == 0:
                del vs[i]
                changed = True
                break
    tris = []
    while len(vs) > 3:
        k = len(vs)
        for i in range(k):
            a, b, c = vs[i - 1], vs[i], vs[(i + 1) % k]
            if orient(a, b, c) <= 0:
                continue
            if any(_in_closed_triangle(v, a, b, c) for v in vs if v not in (a, b, c)):
                continue
            tris.append((a, b, c))
            del vs[i]
            break
        else:
            raise GeometryError("no ear found; polygon is not simple")
    tris.append(tuple(vs))
    return tris


def point_in_polygon(p: Sequence[int], poly: Polygon) -> Location:
    """Classify p against a simple polygon via ear clipping."""
    p = Point(*p)
    if not is_simple_polygon(poly):
        raise GeometryError("polygon is not simple")
    for a, b in poly.edges():
        if on_segment(p, a, b):
            return Location.BOUNDARY
    for a, b, c in triangulate(poly):
        if _in_closed_triangle(p, a, b, c):
            return Location.INSIDE
    return Location.OUTSIDE


# --- point-set text format -------------------------------------------------

def format_points(points) -> str:
    pts = points.points if isinstance(points, PointSet) else list(points)
    lines = [str(len(pts))] + [f"{p[0]} {p[1]}" for p in pts]
    return "\n".join(lines) + "\n"


def parse_points(text: str) -> list[Point]:
    lines = [ln.strip() for ln in text.split("\n")]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty point file")
    n = int(lines[0])
    if len(lines) - 1 != n:
        raise ValueError(f"expected {n} points, found {len(lines) - 1}")
    pts = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"bad point line: {ln!r}")
        pts.append(Point(int(parts[0]), int(parts[1])))
    return pts


def read_points(path, collinear_allowed: bool = False) -> PointSet:
    with open(path, encoding="ascii") as fh:
        return PointSet(parse_points(fh.read()), collinear_allowed=collinear_allowed)


def write_points(path, points) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(format_points(points))


def subsets_in_convex_position(O, idx: Sequence[int]) -> bool:
    """Convex-position test from an orientation table (general position)."""
    for a, b, c in combinations(idx, 3):
        s = O[a][b][c]
        Oab, Obc, Oca = O[a][b], O[b][c], O[c][a]
        for d in idx:
            if d == a or d == b or d == c:
                continue
            if Oab[d] == s and Obc[d] == s and Oca[d] == s:
                return False
    return True
