"""Brute-force reference counts that use coordinates only.

None of these touch the precomputed tables behind the census search; they go
through every permutation and test each polygon directly.
"""
from itertools import combinations, permutations

from kholes.geom import (Location, Point, Polygon, convex_hull, is_simple_polygon, orient,
                         point_in_polygon, segments_intersect)


def _is_convex_cycle(vs):
    k = len(vs)
    turns = {orient(vs[i - 1], vs[i], vs[(i + 1) % k]) for i in range(k)}
    return len(turns) == 1


def _empty(poly, others):
    return all(point_in_polygon(p, poly) is Location.OUTSIDE for p in others)


def gons(points, k, empty_only=False):
    """{'convex': c, 'nonconvex': nc} over every k-subset and vertex order."""
    pts = [Point(*p) for p in points]
    conv = nonconv = 0
    for sub in combinations(pts, k):
        others = [p for p in pts if p not in sub]
        seen = set()
        for perm in permutations(sub[1:]):
            if perm[0] > perm[-1]:
                continue
            cyc = (sub[0],) + perm
            if not is_simple_polygon(cyc):
                continue
            poly = Polygon(cyc)
            if poly in seen:
                continue
            seen.add(poly)
            if empty_only and not _empty(poly, others):
                continue
            if _is_convex_cycle(poly.vertices):
                conv += 1
            else:
                nonconv += 1
    return {"convex": conv, "nonconvex": nonconv, "general": conv + nonconv}


def crossings(points):
    pts = [Point(*p) for p in points]
    edges = list(combinations(pts, 2))
    return sum(1 for (a, b), (c, d) in combinations(edges, 2)
               if len({a, b, c, d}) == 4 and segments_intersect(a, b, c, d))


def islands(points, k):
    pts = [Point(*p) for p in points]
    count = 0
    for sub in combinations(pts, k):
        if k < 3:
            count += 1
            continue
        hull = convex_hull(sub)
        if all(point_in_polygon(p, hull) is Location.OUTSIDE for p in pts if p not in sub):
            count += 1
    return count


def empty_triangles_through(points, p, q):
    pts = [Point(*x) for x in points]
    p, q = Point(*p), Point(*q)
    total = 0
    for r in pts:
        if r in (p, q):
            continue
        tri = Polygon((p, q, r))
        if _empty(tri, [s for s in pts if s not in (p, q, r)]):
            total += 1
    return total
