from fractions import Fraction
from math import comb

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from kholes import relations as R
from kholes.census import GonClass, count_gons, crossing_number
from kholes.generators import gen_convex, gen_random
from kholes.geom import PointSet, is_general_position
from kholes.harness import TIGHT_ROWS, SEVEN_POINT_ROWS
from kholes.relations import C4, LinearRelation, OrderTypeDBError, Profile, ProfileSpace


@pytest.fixture(scope="module")
def spaces():
    return {k: R.profile_space(k, f"grid:{m}") for k, m in ((4, 3), (5, 6), (6, 6))}


def test_profile_examples():
    assert R.profile_of([(0, 0), (4, 0), (4, 4), (0, 4)]).astuple() == (1, 0, 1, 1)
    assert R.profile_of([(0, 0), (6, 0), (0, 6), (1, 1)]).astuple() == (0, 3, 3, 0)
    assert R.profile_of(gen_convex(5)).astuple() == (1, 0, 1, 5)
    with pytest.raises(ValueError):
        R.profile_of([(0, 0), (1, 1), (2, 2), (0, 5)])
    with pytest.raises(ValueError):
        Profile(1, 1, 3, 0)


@given(st.integers(4, 7).flatmap(lambda k: st.lists(
    st.tuples(st.integers(0, 40), st.integers(0, 40)), min_size=k, max_size=k, unique=True)))
def test_batch_engine_matches_census(pts):
    assume(is_general_position(pts))
    k = len(pts)
    signs = R._signs_of_points(np.array([pts], dtype=np.int64), k)
    got = Profile(*map(int, R.batch_profiles(signs, k)[0]))
    assert got == R.profile_of(pts)


def test_grid_space_examples(spaces):
    assert {p.astuple() for p in spaces[4].profiles} == {(1, 0, 1, 1), (0, 3, 3, 0)}
    k5 = R.profile_space(5, "grid:4")
    assert {p.astuple() for p in k5.profiles} == {(1, 0, 1, 5), (0, 4, 4, 3), (0, 8, 8, 1)}
    assert not k5.complete and spaces[5].complete
    assert spaces[5].provenance == "exhaustive-grid(6)"


def test_max_general_gons(spaces):
    assert max(p.g_gen for p in spaces[5].profiles) == 8
    assert max(p.g_gen for p in spaces[6].profiles) == 29


def test_profile_space_errors():
    with pytest.raises(ValueError):
        R.profile_space(3, "grid:4")
    with pytest.raises(ValueError):
        R.profile_space(5, "spiral:3")
    with pytest.raises(OrderTypeDBError):
        R.profile_space(5, "db:/nonexistent/otypes05.b08")


# --- optimisation ------------------------------------------------------------------

def test_tight_k4_convex(spaces):
    rel = R.optimize_tight(spaces[4], GonClass.CONVEX)
    assert (rel.c1, rel.c2, rel.x) == (0, 0, -1)


@pytest.mark.parametrize("k,cls", sorted(TIGHT_ROWS, key=lambda t: (t[0], t[1].value)))
def test_tight_rows_exact(spaces, k, cls):
    rel = R.optimize_tight(spaces[k], cls)
    assert (rel.c1, rel.c2, rel.x) == TIGHT_ROWS[(k, cls)]


def test_printed_text_forms(spaces):
    rel = R.optimize_tight(spaces[6], GonClass.NONCONVEX)
    assert R.format_rational(rel.c1) == "29 4/9"
    assert R.format_rational(rel.c2) == "36 2/3"
    assert R.format_rational(rel.x) == "2 4/9"


def test_upper_coefficients(spaces):
    c4 = C4.lower
    expect = {(5, GonClass.NONCONVEX): 10 - 10 * c4, (5, GonClass.GENERAL): Fraction(39, 4) - Fraction(35, 4) * c4,
              (6, GonClass.GENERAL): 36 - 35 * c4, (6, GonClass.NONCONVEX): 36 - 35 * c4}
    for (k, cls), want in expect.items():
        c2, x = R.optimize_upper(spaces[k], cls, c4)
        assert x >= 0
        assert R.bound_coefficient(c2, x, k, c4) == want
    assert round(float(36 - 35 * C4.upper), 1) == 22.7


def test_lower_coefficients(spaces):
    c1, x = R.optimize_lower(spaces[4], GonClass.CONVEX, C4.lower)
    assert x <= 0 and R.bound_coefficient(c1, x, 4, C4.lower) == C4.lower
    c1, x = R.optimize_lower(spaces[5], GonClass.CONVEX, C4.lower)
    tight = R.bound_coefficient(Fraction(-3, 4), Fraction(-1, 4), 5, C4.lower)
    assert tight == Fraction(-3, 4) + Fraction(5, 4) * C4.lower
    assert R.bound_coefficient(c1, x, 5, C4.lower) >= tight


def test_evaluate_relation_examples(spaces):
    S = gen_random(8, seed=11)
    cr = crossing_number(S)
    rel = R.optimize_tight(spaces[5], GonClass.NONCONVEX)
    lo, hi = R.evaluate_relation(rel, 8, cr)
    assert lo == hi == 10 * comb(8, 5) - 8 * cr == count_gons(S, 5, GonClass.NONCONVEX).count
    rel6 = R.optimize_tight(spaces[6], GonClass.GENERAL)
    for seed in range(5):
        S = gen_random(9, seed=seed)
        lo, hi = R.evaluate_relation(rel6, 9, crossing_number(S))
        assert lo <= count_gons(S, 6, GonClass.GENERAL).count <= hi
    with pytest.raises(ValueError):
        R.evaluate_relation(rel6, 5, 0)


def test_evaluate_at_n_equals_k(spaces):
    rel = R.optimize_tight(spaces[6], GonClass.CONVEX)
    for p in spaces[6].profiles:
        lo, hi = R.evaluate_relation(rel, 6, p.cr)
        assert lo <= p.g_conv <= hi


@pytest.mark.parametrize("cls", list(GonClass))
def test_printed_seven_point_rows_bracket_sampled_sets(cls):
    rng = np.random.default_rng(5)
    c1, c2, x = SEVEN_POINT_ROWS[cls]
    rel = LinearRelation(c1, c2, x, 7, cls)
    P = rng.integers(0, 1 << 12, size=(400, 7, 2))
    s = R._signs_of_points(P, 7)
    s = s[~(s == 0).any(axis=1)]
    for row in R.batch_profiles(s, 7):
        assert rel.holds_for(Profile(*map(int, row)))


# --- properties ---------------------------------------------------------------------

def test_soundness(spaces):
    for k in (5, 6):
        for cls in GonClass:
            rel = R.optimize_tight(spaces[k], cls)
            assert all(rel.holds_for(p) for p in spaces[k].profiles)


@given(st.data())
def test_monotone_under_added_profiles(spaces, data):
    full = spaces[6].sorted()
    sub = data.draw(st.lists(st.sampled_from(full), min_size=1, unique=True))
    cls = data.draw(st.sampled_from(list(GonClass)))
    small = ProfileSpace(6, frozenset(sub), "subset")
    assert R.optimize_tight(small, cls).width <= R.optimize_tight(spaces[6], cls).width


@given(st.integers(1, 50), st.integers(-100, 100), st.integers(-100, 100), st.integers(0, 2 ** 32))
def test_affine_rescaling_invariance(scale, dx, dy, seed):
    sets = [gen_random(6, seed=seed + i).points for i in range(6)]
    moved = [[(scale * x + dx, scale * y + dy) for x, y in pts] for pts in sets]
    a = R.space_from_points(sets, 6)
    b = R.space_from_points(moved, 6)
    assert a.profiles == b.profiles
    for cls in GonClass:
        assert R.optimize_tight(a, cls).width == R.optimize_tight(b, cls).width


def test_merge_and_empty_space():
    with pytest.raises(ValueError):
        ProfileSpace(5, frozenset(), "none")
    a = R.space_from_points([gen_convex(5)], 5)
    b = R.space_from_points([gen_random(5, seed=1)], 5)
    assert a.merged(b).profiles == a.profiles | b.profiles
    with pytest.raises(ValueError):
        a.merged(R.space_from_points([gen_convex(6)], 6))


def test_c4_interval():
    assert C4.lower == Fraction(379972, 1000000) < C4.upper
    with pytest.raises(ValueError):
        R.C4Interval(Fraction(1, 2), Fraction(1, 3))


# --- database reader ----------------------------------------------------------------

FIVE_POINT_TYPES = [
    [(0, 0), (10, 0), (13, 8), (5, 13), (-3, 8)],
    [(0, 0), (10, 0), (10, 10), (0, 10), (4, 3)],
    [(0, 0), (20, 0), (10, 20), (8, 6), (12, 6)],
]


def _db_bytes(records, dtype):
    return np.asarray(records, dtype=dtype).tobytes()


def test_db_round_trip_n5(tmp_path):
    f = tmp_path / "otypes05.b08"
    shifted = [[(x + 5, y) for x, y in r] for r in FIVE_POINT_TYPES]
    f.write_bytes(_db_bytes(shifted, np.uint8))
    sets = list(R.read_order_type_db(f, 5))
    assert len(sets) == 3 and all(isinstance(s, PointSet) for s in sets)
    assert {p.astuple() for p in R.db_profiles(f, 5)} == {(1, 0, 1, 5), (0, 4, 4, 3), (0, 8, 8, 1)}
    space = R.profile_space(5, f"db:{f}")
    assert space.complete and space.provenance.startswith("database(")


def test_db_truncated(tmp_path):
    f = tmp_path / "bad.b08"
    f.write_bytes(_db_bytes([[(x + 5, y) for x, y in r] for r in FIVE_POINT_TYPES], np.uint8)[:-3])
    with pytest.raises(OrderTypeDBError, match="byte offset 20"):
        list(R.read_order_type_db(f, 5))


def test_db_collinear_record(tmp_path):
    recs = [[(x + 5, y) for x, y in r] for r in FIVE_POINT_TYPES]
    recs[2] = [(0, 0), (1, 1), (2, 2), (9, 0), (0, 9)]
    f = tmp_path / "col.b08"
    f.write_bytes(_db_bytes(recs, np.uint8))
    with pytest.raises(OrderTypeDBError, match="record 2"):
        R.load_order_type_db(f, 5)


def test_db_count_mismatch(tmp_path):
    f = tmp_path / "two.b08"
    f.write_bytes(_db_bytes([[(x + 5, y) for x, y in r] for r in FIVE_POINT_TYPES[:2]], np.uint8))
    with pytest.raises(OrderTypeDBError, match="expected 3"):
        R.load_order_type_db(f, 5)
    assert len(R.load_order_type_db(f, 5, check_count=False)) == 2


def test_db_sixteen_bit_records(tmp_path):
    recs = [gen_random(9, seed=s, box=60000).points for s in range(4)]
    f = tmp_path / "otypes09.b16"
    f.write_bytes(_db_bytes(recs, "<u2"))
    got = [s.points for s in R.read_order_type_db(f, 9, check_count=False)]
    assert [list(map(tuple, p)) for p in got] == [list(p) for p in recs]
    with pytest.raises(OrderTypeDBError, match="expected 158817"):
        R.load_order_type_db(f, 9)


def test_known_counts():
    assert R.KNOWN_ORDER_TYPE_COUNTS[5] == 3 and R.KNOWN_ORDER_TYPE_COUNTS[6] == 16


# --- formatting ---------------------------------------------------------------------

def test_format_examples():
    assert R.format_rational(Fraction(265, 9)) == "29 4/9"
    assert R.format_rational(Fraction(-3, 4)) == "-3/4"
    assert R.format_rational(Fraction(-5, 4)) == "-1 1/4"
    assert R.format_rational(10) == "10"


@given(st.fractions(max_denominator=10 ** 6))
def test_format_parse_round_trip(q):
    assert R.parse_rational(R.format_rational(q)) == q


def test_relation_record(spaces):
    rec = R.relation_record(R.optimize_tight(spaces[5], "convex"))
    assert rec == {"k": 5, "class": "convex", "c1": "-3/4", "c2": "-1/4", "x": "-1/4",
                   "c1_approx": -0.75, "c2_approx": -0.25, "x_approx": -0.25}


# --- slow ---------------------------------------------------------------------------

@pytest.mark.slow
@pytest.mark.parametrize("k", [5, 6])
def test_grid_space_stable_from_6_to_7(spaces, k):
    assert R.profile_space(k, "grid:7").profiles == spaces[k].profiles


def test_seven_points_best_effort_is_not_complete():
    space = R.profile_space(7, "random:2000:1")
    assert not space.complete
    assert space.samples >= 2000
    assert max(p.g_gen for p in space.profiles) <= 92
    rel = R.optimize_tight(space, GonClass.GENERAL)
    assert all(rel.holds_for(p) for p in space.profiles)
