"""Linear relations between k-gon counts and the rectilinear crossing number.

Every k-point configuration has a *profile* (g_conv, g_nonconv, g_gen, cr).
Given a set of profiles, we look for rationals (c1, c2, x) with

    c1 <= g + x * cr <= c2        for every profile,

which lifts to any n-point set S by summing over its k-subsets:

    c1*C(n,k) - x*C(n-4,k-4)*cr(S) <= g_k(S) <= c2*C(n,k) - x*C(n-4,k-4)*cr(S).

All arithmetic on coefficients is done in :class:`fractions.Fraction`.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator

import numpy as np

from .census import GonClass, _as_class, crossing_number, gon_counts
from .geom import GeometryError, PointSet, find_collinear_triple, orientation_array


@dataclass(frozen=True, order=True)
class Profile:
    g_conv: int
    g_nonconv: int
    g_gen: int
    cr: int

    def __post_init__(self):
        if self.g_gen != self.g_conv + self.g_nonconv:
            raise ValueError("g_gen must equal g_conv + g_nonconv")

    def gons(self, cls) -> int:
        cls = _as_class(cls)
        return {GonClass.CONVEX: self.g_conv, GonClass.NONCONVEX: self.g_nonconv,
                GonClass.GENERAL: self.g_gen}[cls]

    def astuple(self) -> tuple[int, int, int, int]:
        return (self.g_conv, self.g_nonconv, self.g_gen, self.cr)


@dataclass(frozen=True)
class ProfileSpace:
    k: int
    profiles: frozenset
    provenance: str
    complete: bool = False
    samples: int = 0

    def __post_init__(self):
        if not self.profiles:
            raise ValueError("profile space must be nonempty")

    def sorted(self) -> list[Profile]:
        return sorted(self.profiles)

    def merged(self, other: "ProfileSpace") -> "ProfileSpace":
        if other.k != self.k:
            raise ValueError("cannot merge spaces of different k")
        return ProfileSpace(self.k, self.profiles | other.profiles,
                            f"{self.provenance}+{other.provenance}", False, self.samples + other.samples)


@dataclass(frozen=True)
class LinearRelation:
    c1: Fraction
    c2: Fraction
    x: Fraction
    k: int
    cls: GonClass

    @property
    def width(self) -> Fraction:
        return self.c2 - self.c1

    def holds_for(self, p: Profile) -> bool:
        v = p.gons(self.cls) + self.x * p.cr
        return self.c1 <= v <= self.c2


@dataclass(frozen=True)
class C4Interval:
    lower: Fraction = Fraction(379972, 1000000)
    upper: Fraction = Fraction(380473, 1000000)

    def __post_init__(self):
        if not self.lower < self.upper:
            raise ValueError("lower end must be below upper end")


C4 = C4Interval()


class OrderTypeDBError(ValueError):
    pass


# Number of realizable order types in general position for n = 3..10.
KNOWN_ORDER_TYPE_COUNTS = {3: 1, 4: 2, 5: 3, 6: 16, 7: 135, 8: 3315, 9: 158817, 10: 14309547}


# --- profiles -------------------------------------------------------------------------

def profile_of(points) -> Profile:
    """Profile of k points via the census counters."""
    S = points if isinstance(points, PointSet) else PointSet(points)
    k = S.n
    counts = gon_counts(S, k)
    conv, nonconv = counts[GonClass.CONVEX], counts[GonClass.NONCONVEX]
    return Profile(conv, nonconv, conv + nonconv, crossing_number(S))


@dataclass(frozen=True)
class _Layout:
    """Index bookkeeping for the batch engine at a fixed k."""
    k: int
    triples: tuple
    tindex: dict
    pairs: tuple
    cross_cols: np.ndarray       # (P, 4, 2): (column, parity) for the four orientations
    orders: np.ndarray           # one row per cyclic order: its non-adjacent edge pairs

    @staticmethod
    def build(k: int) -> "_Layout":
        triples = tuple(itertools.combinations(range(k), 3))
        tindex = {t: i for i, t in enumerate(triples)}

        def col(a, b, c):
            s = sorted((a, b, c))
            perm = [s.index(v) for v in (a, b, c)]
            inversions = sum(1 for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j])
            return tindex[tuple(s)], (-1 if inversions % 2 else 1)

        edges = list(itertools.combinations(range(k), 2))
        pairs = tuple((e, f) for e, f in itertools.combinations(edges, 2) if not set(e) & set(f))
        pidx = {}
        cols = []
        for i, ((a, b), (c, d)) in enumerate(pairs):
            pidx[frozenset([(a, b), (c, d)])] = i
            cols.append([col(a, b, c), col(a, b, d), col(c, d, a), col(c, d, b)])
        orders = []
        for perm in itertools.permutations(range(1, k)):
            if perm[0] > perm[-1]:
                continue
            cyc = (0,) + perm
            es = [tuple(sorted((cyc[i], cyc[(i + 1) % k]))) for i in range(k)]
            row = [pidx[frozenset([es[i], es[j]])]
                   for i in range(k) for j in range(i + 2, k) if not (i == 0 and j == k - 1)]
            orders.append(row)
        width = max(len(r) for r in orders) if orders else 0
        return _Layout(k, triples, tindex, pairs, np.array(cols, dtype=np.int64),
                       np.array(orders, dtype=np.int64).reshape(len(orders), width))


_LAYOUTS: dict[int, _Layout] = {}


def _layout(k: int) -> _Layout:
    if k not in _LAYOUTS:
        _LAYOUTS[k] = _Layout.build(k)
    return _LAYOUTS[k]


def batch_profiles(signs: np.ndarray, k: int) -> np.ndarray:
    """Profiles of many k-point configurations given their triple signs.

    ``signs`` has shape (R, C(k,3)) with the orientation sign (+1/-1) of every
    increasing index triple. Returns an (R, 4) int64 array of profiles.
    """
    lay = _layout(k)
    signs = np.asarray(signs, dtype=np.int8)
    cols, par = lay.cross_cols[..., 0], lay.cross_cols[..., 1].astype(np.int8)
    o = signs[:, cols] * par            # (R, P, 4)
    cross = (o[:, :, 0] != o[:, :, 1]) & (o[:, :, 2] != o[:, :, 3])
    cr = cross.sum(axis=1)
    if lay.orders.shape[1] == 0:        # k = 3
        g = np.ones(len(signs), dtype=np.int64)
    else:
        g = np.zeros(len(signs), dtype=np.int64)
        for row in lay.orders:
            g += ~cross[:, row].any(axis=1)
    conv = (cr == comb(k, 4)).astype(np.int64)
    return np.stack([conv, g - conv, g, cr], axis=1)


def _signs_of_points(P: np.ndarray, k: int) -> np.ndarray:
    """(R, k, 2) integer coordinates -> (R, C(k,3)) orientation signs."""
    lay = _layout(k)
    t = np.array(lay.triples)
    a, b, c = P[:, t[:, 0]], P[:, t[:, 1]], P[:, t[:, 2]]
    det = ((b[..., 0] - a[..., 0]) * (c[..., 1] - a[..., 1])
           - (b[..., 1] - a[..., 1]) * (c[..., 0] - a[..., 0]))
    return np.sign(det).astype(np.int8)


def _to_profiles(rows: np.ndarray) -> set[Profile]:
    return {Profile(*map(int, r)) for r in np.unique(rows, axis=0)}


def grid_profiles(k: int, m: int, chunk: int = 400_000) -> tuple[set[Profile], int]:
    """Profiles of all general-position k-subsets of the m x m grid.

    Subsets are first collapsed to their labelled triple-sign signature, so the
    expensive part only runs once per distinct signature. Returns the profile
    set and the number of distinct signatures.
    """
    pts = [(x, y) for x in range(m) for y in range(m)]
    O = orientation_array(pts)
    lay = _layout(k)
    t = np.array(lay.triples)
    weights = (np.int64(1) << np.arange(len(lay.triples), dtype=np.int64))
    reps: dict[int, np.ndarray] = {}
    it = itertools.combinations(range(len(pts)), k)
    dt = np.dtype((np.int16, k))
    while True:
        block = np.fromiter(itertools.islice(it, chunk), dtype=dt)
        if len(block) == 0:
            break
        s = O[block[:, t[:, 0]], block[:, t[:, 1]], block[:, t[:, 2]]]
        ok = ~(s == 0).any(axis=1)
        s, block = s[ok], block[ok]
        keys = ((s > 0).astype(np.int64) * weights).sum(axis=1)
        uk, first = np.unique(keys, return_index=True)
        for key, i in zip(uk.tolist(), first.tolist()):
            if key not in reps:
                reps[key] = s[i]
    if not reps:
        return set(), 0
    sig = np.stack(list(reps.values()))
    return _to_profiles(batch_profiles(sig, k)), len(reps)


def random_profiles(k: int, patience: int, seed: int, box: int = 1 << 14,
                    batch: int = 20_000, max_draws: int | None = None) -> tuple[set[Profile], int]:
    """Sample uniform k-sets until ``patience`` consecutive draws add no new profile."""
    rng = np.random.default_rng(seed)
    found: set[Profile] = set()
    since_new = draws = 0
    cap = max_draws if max_draws is not None else 50 * patience + batch
    while since_new < patience and draws < cap:
        size = min(batch, max(patience - since_new, 1))
        P = rng.integers(0, box, size=(size, k, 2), dtype=np.int64)
        s = _signs_of_points(P, k)
        s = s[~(s == 0).any(axis=1)]
        draws += size
        if len(s) == 0:
            since_new += size
            continue
        prof = batch_profiles(s, k)
        # walk in draw order so "consecutive draws" is exact
        uniq, first = np.unique(prof, axis=0, return_index=True)
        new_at = [int(i) for r, i in zip(uniq, first) if Profile(*map(int, r)) not in found]
        if new_at:
            last = max(new_at)
            since_new = len(s) - 1 - last
            found |= _to_profiles(uniq)
        else:
            since_new += len(s)
    return found, draws


# --- order-type database --------------------------------------------------------------

def _record_size(n: int) -> tuple[int, np.dtype]:
    if 3 <= n <= 8:
        return 2 * n, np.dtype(np.uint8)
    if n in (9, 10):
        return 4 * n, np.dtype("<u2")
    raise OrderTypeDBError(f"unsupported point count n={n}")


def read_order_type_db(path, n: int, check_count: bool = True) -> Iterator[PointSet]:
    """Stream the point sets of an order-type database file.

    Records hold n (x, y) pairs: unsigned bytes for n <= 8, unsigned 16-bit
    little-endian words for n = 9, 10. The file size and, unless
    ``check_count`` is false, the record count are validated before anything
    is yielded.
    """
    arr = load_order_type_db(path, n, check_count)
    for i, rec in enumerate(arr):
        pts = [tuple(map(int, p)) for p in rec]
        try:
            yield PointSet(pts)
        except GeometryError as e:
            raise OrderTypeDBError(f"record {i}: {e}") from None


def load_order_type_db(path, n: int, check_count: bool = True) -> np.ndarray:
    """The whole database as an (R, n, 2) int64 array, validated."""
    size, dt = _record_size(n)
    raw = open(path, "rb").read() if not isinstance(path, (bytes, bytearray)) else bytes(path)
    if len(raw) % size:
        offset = len(raw) - len(raw) % size
        raise OrderTypeDBError(f"truncated record at byte offset {offset} (record size {size})")
    count = len(raw) // size
    if count == 0:
        raise OrderTypeDBError("database is empty")
    if check_count and KNOWN_ORDER_TYPE_COUNTS.get(n) != count:
        raise OrderTypeDBError(
            f"expected {KNOWN_ORDER_TYPE_COUNTS.get(n)} records for n={n}, found {count}; "
            "wrong file or wrong byte order")
    arr = np.frombuffer(raw, dtype=dt).astype(np.int64).reshape(count, n, 2)
    signs = _signs_of_points(arr, n)
    bad = np.flatnonzero((signs == 0).any(axis=1))
    if len(bad):
        i = int(bad[0])
        trip = find_collinear_triple([tuple(map(int, p)) for p in arr[i]])
        raise OrderTypeDBError(f"record {i} (byte offset {i * size}) has collinear points {trip}")
    return arr


def db_profiles(path, n: int, check_count: bool = True, chunk: int = 2000) -> set[Profile]:
    arr = load_order_type_db(path, n, check_count)
    found: set[Profile] = set()
    for lo in range(0, len(arr), chunk):
        found |= _to_profiles(batch_profiles(_signs_of_points(arr[lo:lo + chunk], n), n))
    return found


def db_records_with_profiles(path, n: int, check_count: bool = True, chunk: int = 2000) -> np.ndarray:
    """(R, 4) profile of every record, in file order."""
    arr = load_order_type_db(path, n, check_count)
    out = [batch_profiles(_signs_of_points(arr[lo:lo + chunk], n), n) for lo in range(0, len(arr), chunk)]
    return np.concatenate(out)


# --- profile spaces -------------------------------------------------------------------

def profile_space(k: int, strategy: str) -> ProfileSpace:
    """Build a profile space from ``grid:M``, ``random:N:SEED`` or ``db:FILE``.

    ``grid:M`` scans every general-position k-subset of the M x M grid. For
    k <= 6 and M >= 6 the space is marked complete: every order type on at
    most six points is realised there, which the tests confirm by checking
    that M = 7 adds nothing. ``random:N:SEED`` stops after N consecutive draws
    without a new profile and is never complete. ``db:FILE`` reads an
    order-type database with k points per record.
    """
    if not 4 <= k <= 10:
        raise ValueError("k must be in 4..10")
    kind, _, rest = strategy.partition(":")
    if kind == "grid":
        m = int(rest)
        profs, _ = grid_profiles(k, m)
        if not profs:
            raise ValueError(f"no general-position {k}-subset in the {m}x{m} grid")
        return ProfileSpace(k, frozenset(profs), f"exhaustive-grid({m})", k <= 6 and m >= 6)
    if kind == "random":
        n_str, _, seed_str = rest.partition(":")
        profs, draws = random_profiles(k, int(n_str), int(seed_str or 0))
        return ProfileSpace(k, frozenset(profs), f"random({n_str},{seed_str or 0})", False, draws)
    if kind == "db":
        if not os.path.exists(rest):
            raise OrderTypeDBError(f"database file not found: {rest}")
        return ProfileSpace(k, frozenset(db_profiles(rest, k)), f"database({rest})", True)
    raise ValueError(f"unknown strategy {strategy!r}")


def space_from_points(sets: Iterable, k: int, provenance: str = "explicit") -> ProfileSpace:
    return ProfileSpace(k, frozenset(profile_of(s) for s in sets), provenance, False)


# --- exact optimisation ---------------------------------------------------------------

def _lines(space: ProfileSpace, cls) -> list[tuple[int, int]]:
    cls = _as_class(cls)
    return sorted({(p.gons(cls), p.cr) for p in space.profiles})


def _breakpoints(lines) -> set[Fraction]:
    xs = set()
    for (g1, c1), (g2, c2) in itertools.combinations(lines, 2):
        if c1 != c2:
            xs.add(Fraction(g2 - g1, c1 - c2))
    return xs


def _envelope(lines, x: Fraction) -> tuple[Fraction, Fraction]:
    vals = [g + x * c for g, c in lines]
    return min(vals), max(vals)


def optimize_tight(space: ProfileSpace, cls) -> LinearRelation:
    """(c1, c2, x) minimising c2 - c1; ties go to the smallest |x|, then smallest x."""
    cls = _as_class(cls)
    lines = _lines(space, cls)
    best = None
    for x in _breakpoints(lines) | {Fraction(0)}:
        lo, hi = _envelope(lines, x)
        key = (hi - lo, abs(x), x)
        if best is None or key < best[0]:
            best = (key, lo, hi, x)
    _, lo, hi, x = best
    return LinearRelation(lo, hi, x, space.k, cls)


def _c4_weight(k: int, c4) -> Fraction:
    return Fraction(c4) * comb(k, 4)


def optimize_upper(space: ProfileSpace, cls, c4=C4.lower) -> tuple[Fraction, Fraction]:
    """(c2, x), x >= 0, minimising c2 - x*c4*C(k,4) with c2 = max(g + x*cr)."""
    lines = _lines(space, cls)
    w = _c4_weight(space.k, c4)
    best = None
    for x in {b for b in _breakpoints(lines) if b >= 0} | {Fraction(0)}:
        hi = _envelope(lines, x)[1]
        key = (hi - x * w, x)
        if best is None or key < best[0]:
            best = (key, hi, x)
    return best[1], best[2]


def optimize_lower(space: ProfileSpace, cls, c4=C4.lower) -> tuple[Fraction, Fraction]:
    """(c1, x), x <= 0, maximising c1 - x*c4*C(k,4) with c1 = min(g + x*cr)."""
    lines = _lines(space, cls)
    w = _c4_weight(space.k, c4)
    best = None
    for x in {b for b in _breakpoints(lines) if b <= 0} | {Fraction(0)}:
        lo = _envelope(lines, x)[0]
        key = (-(lo - x * w), -x)
        if best is None or key < best[0]:
            best = (key, lo, x)
    return best[1], best[2]


def bound_coefficient(c: Fraction, x: Fraction, k: int, c4=C4.lower) -> Fraction:
    """Coefficient of C(n,k) in the crossing-free bound: c - x*c4*C(k,4)."""
    return c - x * _c4_weight(k, c4)


def evaluate_relation(rel: LinearRelation, n: int, cr_S: int) -> tuple[Fraction, Fraction]:
    if n < rel.k:
        raise ValueError("n must be at least k")
    shift = rel.x * comb(n - 4, rel.k - 4) * cr_S
    base = comb(n, rel.k)
    return rel.c1 * base - shift, rel.c2 * base - shift


# --- formatting -----------------------------------------------------------------------

def format_rational(q) -> str:
    """Mixed-number text: ``29 4/9``, ``-3/4``, ``-1 1/4``, ``10``."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    sign = "-" if q < 0 else ""
    a = abs(q)
    whole, rem = divmod(a.numerator, a.denominator)
    frac = f"{rem}/{a.denominator}"
    return f"{sign}{whole} {frac}" if whole else f"{sign}{frac}"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    sign = -1 if text.startswith("-") else 1
    body = text.lstrip("-").split()
    total = sum((Fraction(part) for part in body), Fraction(0))
    return sign * total


def relation_record(rel: LinearRelation) -> dict:
    return {
        "k": rel.k, "class": rel.cls.value,
        "c1": format_rational(rel.c1), "c2": format_rational(rel.c2), "x": format_rational(rel.x),
        "c1_approx": float(rel.c1), "c2_approx": float(rel.c2), "x_approx": float(rel.x),
    }
