from itertools import combinations
from math import comb, factorial

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

import oracles
from kholes import census as C
from kholes.census import GonClass, InvariantViolation
from kholes.generators import gen_convex, gen_double_chain, gen_grid, gen_horton, gen_random
from kholes.geom import GeometryError, PointSet, is_general_position

NONCONVEX_4 = [(0, 0), (6, 0), (0, 6), (1, 1)]


@st.composite
def gp_sets(draw, min_n=4, max_n=7, span=30):
    n = draw(st.integers(min_n, max_n))
    pts = draw(st.lists(st.tuples(st.integers(0, span), st.integers(0, span)),
                        min_size=n, max_size=n, unique=True))
    assume(is_general_position(pts))
    return PointSet(pts)


# --- examples -------------------------------------------------------------------------

def test_count_gons_examples():
    assert C.count_gons(gen_convex(6), 4, GonClass.CONVEX, empty_only=True).count == 15
    assert C.count_gons(PointSet(NONCONVEX_4), 4, GonClass.NONCONVEX).count == 3
    S = gen_random(8, seed=3)
    cr = C.crossing_number(S)
    assert C.count_gons(S, 5, GonClass.NONCONVEX).count == 10 * comb(8, 5) - 2 * 4 * cr


def test_crossing_number_examples():
    assert C.crossing_number(gen_convex(9)) == comb(9, 4)
    assert C.crossing_number(PointSet([(0, 0), (10, 0), (10, 10), (0, 10), (5, 4)])) == 3
    assert C.crossing_number(PointSet([(0, 0), (12, 0), (0, 12), (3, 2), (2, 4)])) == 1


def test_polygonization_examples():
    assert C.polygonization_count(gen_convex(8)) == 1
    assert C.polygonization_count(PointSet(NONCONVEX_4)) == 3
    dc = gen_double_chain(8)
    assert C.polygonization_count(dc) == oracles.gons(dc.points, 8)["general"] > 100


def test_polygonizations_list_is_distinct_and_simple():
    from kholes.geom import Polygon, is_simple_polygon
    S = gen_random(7, seed=1)
    cycles = C.polygonizations(S)
    polys = {Polygon(tuple(S.points[i] for i in c)) for c in cycles}
    assert len(polys) == len(cycles) == C.polygonization_count(S)
    assert all(is_simple_polygon(p) for p in polys)


def test_island_examples():
    S = gen_random(8, seed=2)
    assert C.count_islands(S, 2) == comb(8, 2)
    assert C.count_islands(gen_convex(7), 4) == comb(7, 4)
    assert C.count_islands(S, 4) == oracles.islands(S.points, 4)
    with pytest.raises(ValueError):
        C.count_islands(S, 9)


def test_empty_triangles_on_segment_examples():
    sq = PointSet([(0, 0), (4, 1), (5, 5), (1, 4)])
    assert C.empty_triangles_on_segment(sq, (0, 0), (4, 1)) == 2
    tri = PointSet([(0, 0), (9, 0), (0, 9), (2, 2)])
    assert C.empty_triangles_on_segment(tri, (0, 0), (9, 0)) == 1


def test_empty_triangles_on_segment_perturbed_grid():
    from kholes.generators import gen_perturbed_grid
    P = gen_perturbed_grid(3, seed=0)
    for p, q in combinations(P.points, 2):
        assert C.empty_triangles_on_segment(P, p, q) == oracles.empty_triangles_through(P.points, p, q)


def test_representation_examples():
    S = PointSet(NONCONVEX_4)
    r = C.representation_count_nonconvex(S, 4)
    assert r == 3 and r <= factorial(4)
    assert C.representation_count_nonconvex(gen_convex(7), 5) == 0
    R = gen_random(9, seed=4)
    assert C.representation_count_nonconvex(R, 5) >= C.count_holes(R, 5, GonClass.NONCONVEX)


def test_min_witness_examples():
    assert C.min_khole_witnesses(gen_convex(10), 4) == 28
    assert C.min_khole_witnesses(gen_random(10, seed=6), 5) == 21
    assert C.min_khole_witnesses(gen_random(5, seed=1), 5) == 1


def test_errors():
    with pytest.raises(GeometryError, match="degenerate"):
        C.count_gons(gen_grid(3), 4)
    S = gen_random(6, seed=0)
    with pytest.raises(ValueError):
        C.count_gons(S, 7)
    with pytest.raises(ValueError):
        C.count_gons(S, 2)


# --- brute-force agreement ---------------------------------------------------------------

@given(gp_sets(4, 7), st.integers(3, 6), st.booleans())
def test_counts_match_permutation_oracle(S, k, empty_only):
    assume(k <= S.n)
    got = C.gon_counts(S, k, empty_only)
    want = oracles.gons(S.points, k, empty_only)
    assert got[GonClass.CONVEX] == want["convex"]
    assert got[GonClass.NONCONVEX] == want["nonconvex"]
    assert C.count_gons(S, k, GonClass.CONVEX, empty_only).count == want["convex"]


@given(gp_sets(4, 9))
def test_crossing_number_matches_edge_crossings(S):
    assert C.crossing_number(S) == C.edge_crossings(S) == oracles.crossings(S.points)


@given(gp_sets(4, 8), st.integers(3, 6))
def test_islands_match_oracle(S, k):
    assume(k <= S.n)
    assert C.count_islands(S, k) == oracles.islands(S.points, k)


def test_parallel_counts_equal_serial():
    S = gen_random(11, seed=9)
    for empty in (False, True):
        assert C.gon_counts(S, 5, empty, jobs=1) == C.gon_counts(S, 5, empty, jobs=3)


# --- invariants ----------------------------------------------------------------------------

@given(gp_sets(5, 9), st.integers(3, 6))
def test_class_sum_and_holes_below_gons(S, k):
    assume(k <= S.n)
    gons = C.gon_counts(S, k)
    holes = C.gon_counts(S, k, empty_only=True)
    for d in (gons, holes):
        assert d[GonClass.GENERAL] == d[GonClass.CONVEX] + d[GonClass.NONCONVEX]
    for cls in GonClass:
        assert holes[cls] <= gons[cls]
    assert holes[GonClass.CONVEX] <= comb(S.n, k)


@given(gp_sets(5, 10, span=60))
def test_identities_4_and_5(S):
    n, cr = S.n, C.edge_crossings(S)
    g4 = C.gon_counts(S, 4)
    assert g4[GonClass.CONVEX] == cr
    assert g4[GonClass.NONCONVEX] == 3 * (comb(n, 4) - cr)
    assert g4[GonClass.GENERAL] == 3 * comb(n, 4) - 2 * cr
    assert C.count_gons(S, 5, GonClass.NONCONVEX).count == 10 * comb(n, 5) - 2 * (n - 4) * cr


@given(gp_sets(6, 9, span=60), st.sampled_from([5, 6]))
def test_subset_sum_identity(S, k):
    assume(k <= S.n)
    total = sum(C.crossing_number(PointSet([S.points[i] for i in sub]))
                for sub in combinations(range(S.n), k))
    assert total == comb(S.n - 4, k - 4) * C.crossing_number(S)


@given(gp_sets(4, 8, span=40), st.sampled_from([4, 5]))
def test_representation_sandwich(S, k):
    assume(k <= S.n)
    reps = C.representation_count_nonconvex(S, k)
    assert C.count_holes(S, k, GonClass.NONCONVEX) <= reps <= factorial(S.n) // factorial(S.n - k + 1)


def test_representation_uniqueness_never_fires_on_corpus():
    for seed in range(15):
        for n in (6, 8, 9):
            S = gen_random(n, seed=seed)
            for k in (4, 5):
                C.representation_count_nonconvex(S, k)


def test_invariant_violation_is_an_assertion_error():
    assert issubclass(InvariantViolation, AssertionError)


def test_empty_triangle_floor_on_random_sets():
    for seed in range(5):
        for n in (13, 14):
            S = gen_random(n, seed=seed)
            assert C.count_holes(S, 3, GonClass.CONVEX) >= n * n - 32 * n / 7 + 22 / 7


def test_large_k_reversal_double_chain():
    assert C.count_holes(gen_double_chain(10), 9, GonClass.GENERAL) == 3656 > comb(10, 9)


def test_horton_16_hole_counts_match_oracle():
    """Independent coordinate oracle for the convex 6-hole count of H(16)."""
    from kholes.geom import Location, convex_hull, is_convex_position, point_in_polygon
    H = gen_horton(16)
    pts = H.points
    want = 0
    for sub in combinations(pts, 6):
        if not is_convex_position(sub):
            continue
        hull = convex_hull(sub)
        if all(point_in_polygon(p, hull) is Location.OUTSIDE for p in pts if p not in sub):
            want += 1
    assert C.count_holes(H, 6, GonClass.CONVEX) == want
