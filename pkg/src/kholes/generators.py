"""Deterministic constructions of the point-set families used in the experiments."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .geom import GeometryError, PointSet, is_general_position

FAMILIES = ("convex", "grid", "perturbed_grid", "double_chain", "horton", "cluster_fig5", "random")


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    n: int = 0
    m: int = 0
    k: int = 4
    seed: int = 0
    params: dict = field(default_factory=dict)

    def build(self) -> PointSet:
        f = self.family
        if f == "convex":
            return gen_convex(self.n, self.seed)
        if f == "grid":
            return gen_grid(self.m)
        if f == "perturbed_grid":
            return gen_perturbed_grid(self.m, self.seed)
        if f == "double_chain":
            return gen_double_chain(self.n)
        if f == "horton":
            return gen_horton(self.n)
        if f == "cluster_fig5":
            return gen_cluster_fig5(self.n, self.k)
        if f == "random":
            return gen_random(self.n, self.seed, self.params.get("box"))
        raise ValueError(f"unknown family {f!r}; expected one of {FAMILIES}")


def gen_convex(n: int, seed: int = 0) -> PointSet:
    """n points on the parabola y = x^2 at seed-chosen distinct abscissae."""
    if n < 3:
        raise ValueError("n must be at least 3")
    rng = random.Random(seed)
    xs = sorted(rng.sample(range(-4 * n, 4 * n), n))
    return PointSet([(x, x * x) for x in xs])


def gen_grid(m: int) -> PointSet:
    if m < 2:
        raise ValueError("m must be at least 2")
    return PointSet([(x, y) for x in range(m) for y in range(m)], collinear_allowed=True)


def perturbation_scale(m: int) -> tuple[int, int]:
    """Grid step Q and exclusive bound on the per-coordinate offset."""
    q = 8 * m ** 4
    return q, q // (8 * m * m)


def gen_perturbed_grid(m: int, seed: int = 0) -> PointSet:
    """The m x m grid scaled by Q = 8 m^4, every point shifted by integer offsets
    in [0, Q / (8 m^2)). Point order matches :func:`gen_grid`."""
    if m < 2:
        raise ValueError("m must be at least 2")
    q, bound = perturbation_scale(m)
    rng = random.Random(seed)
    for _ in range(1000):
        pts = [(x * q + rng.randrange(bound), y * q + rng.randrange(bound))
               for x in range(m) for y in range(m)]
        if is_general_position(pts):
            return PointSet(pts)
    raise GeometryError("could not reach general position")  # pragma: no cover


def gen_double_chain(n: int) -> PointSet:
    """Two facing parabolic chains of n/2 points each.

    Chain one is (t, t^2), chain two is (t, -t^2 - 4h^2) for t = 2i - h - 1,
    i = 1..h, h = n/2. Both bend towards each other, so the hull is the four
    chain endpoints and every line through two points of one chain misses the
    other chain.
    """
    if n < 4 or n % 2:
        raise ValueError("double chain needs an even n >= 4")
    h = n // 2
    ts = [2 * i - h - 1 for i in range(1, h + 1)]
    gap = 4 * h * h
    lower = [(t, -t * t - gap) for t in ts]
    upper = [(t, t * t) for t in ts]
    return PointSet(lower + upper)


def gen_horton(n: int) -> PointSet:
    """Horton set of size n = 2^t by recursive even/odd interleaving.

    H(2s) places H(s) on the even abscissae and a copy lifted by ``lift`` on the
    odd ones. ``lift`` exceeds the largest height any line through two points of
    one half can reach over the whole x-range, so each half lies entirely above
    (resp. below) every line spanned by the other.
    """
    if n < 1 or n & (n - 1):
        raise ValueError("Horton sets need n a power of two")
    pts = [(0, 0)]
    while len(pts) < n:
        s = len(pts)
        span = max(y for _, y in pts) - min(y for _, y in pts)
        width = 2 * s
        lift = 3 * width * width * (span + 1)
        pts = [(2 * x, y) for x, y in pts] + [(2 * x + 1, y + lift) for x, y in pts]
    pts.sort()
    return PointSet(pts)


def gen_cluster_fig5(n: int, k: int = 4) -> PointSet:
    """Four groups of n/4 points realising many non-convex k-holes.

    The outline is a large triangle; the hull itself picks up a few points
    of each corner arc.

    Three small arcs sit at the corners of a large right triangle, each running
    across its corner's bisector and bowed outwards, so no cluster point falls
    inside a triangle spanned by one point per corner. The fourth group is a
    short, steep arc just inside the long bottom edge; for any choice of corner
    points its innermost point is the unique dent that keeps the quadrilateral
    empty, which yields one non-convex 4-hole per corner triple.
    This is one concrete layout; the exact shapes of the schematic are not
    prescribed.
    """
    if n % 4 or n < 4 * k:
        raise ValueError("need n divisible by 4 and n >= 4k")
    s = n // 4
    c = 4 * s * s + 16             # cluster half-width scale
    big = 1000 * c * s             # triangle leg length
    half = [2 * i - (s - 1) for i in range(s)]
    pts = []
    # p(t) = corner + t*c*u + t^2*w puts the arc's middle on the -w side, so
    # w points into the triangle to make each arc bulge outwards.
    # corner A = (0, 0): spread along (1, -1), w = (1, 1)
    for t in half:
        pts.append((t * c + t * t, -t * c + t * t))
    # corner B = (big, 0): spread along (5, 12), w = (-12, 5)
    for t in half:
        pts.append((big + 5 * t * c - 12 * t * t, 12 * t * c + 5 * t * t))
    # corner C = (0, big): spread along (12, 5), w = (5, -12)
    for t in half:
        pts.append((12 * t * c + 5 * t * t, big + 5 * t * c - 12 * t * t))
    # dent group above the midpoint of AB, deeper than the corner wobble
    base = 40 * c * s
    for i in range(s):
        pts.append((big // 2 + i * i, base + 8 * c * i))
    return PointSet(pts)


def gen_random(n: int, seed: int = 0, box: int | None = None) -> PointSet:
    """n uniform integer points in [0, box)^2, resampled until in general position."""
    if n < 1:
        raise ValueError("n must be positive")
    box = max(n * n, 16) * 8 if box is None else box
    if box < n * n:
        raise ValueError("box side must be at least n^2")
    rng = random.Random(seed)
    pts: list[tuple[int, int]] = []
    attempts = 0
    while len(pts) < n:
        attempts += 1
        if attempts > 1000 * n:
            raise GeometryError("box too small to reach general position")
        p = (rng.randrange(box), rng.randrange(box))
        if p in pts or not is_general_position(pts + [p]):
            continue
        pts.append(p)
    return PointSet(pts)
