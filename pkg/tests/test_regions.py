from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from minkowski_games.geometry import LinearConstraint, VPolytope, vec
from minkowski_games.regions import (
    Region,
    ResourceError,
    region_complement,
    region_contains_point,
    region_contains_region,
    region_difference,
    region_equal,
    region_erode_polytope,
    region_intersect,
    region_is_empty,
    region_minkowski_polytope,
    region_translate,
    region_union,
)

from oracles import grid, region_member

C = LinearConstraint.make


def iv(lo, hi, strict_lo=False, strict_hi=False):
    return [C([1], ">" if strict_lo else ">=", F(lo)), C([1], "<" if strict_hi else "<=", F(hi))]


def R1(*pieces):
    return Region.from_constraints(1, *pieces)


def seg(*pts):
    return VPolytope.of([[F(p)] for p in pts])


# --- examples ----------------------------------------------------------------


def test_union_examples():
    u = region_union(R1(iv(0, 1)), R1(iv(2, 3)))
    assert len(u) == 2
    r = R1(iv(0, 1))
    assert region_equal(region_union(r, Region.empty(1)), r)
    assert region_equal(region_union(R1(iv(0, 1)), R1(iv("1/2", 2))), R1(iv(0, 2)))


def test_intersect_examples():
    assert region_equal(region_intersect(R1(iv(0, 1)), R1(iv("1/2", 2))), R1(iv("1/2", 1)))
    two = R1(iv(0, 1), iv(2, 3))
    got = region_intersect(two, R1(iv("1/2", "5/2")))
    assert region_equal(got, R1(iv("1/2", 1), iv(2, "5/2")))
    assert region_is_empty(region_intersect(two, Region.empty(1)))


def test_complement_examples():
    assert region_equal(region_complement(R1([C([1], ">=", 0)])), R1([C([1], "<", 0)]))
    assert region_equal(region_complement(R1(iv(0, 1))), R1([C([1], "<", 0)], [C([1], ">", 1)]))
    u = region_complement(Region.empty(2))
    assert len(u) == 1 and u.pieces[0].constraints == ()


def test_translate_examples():
    assert region_equal(region_translate(R1(iv(0, 1)), vec(["1/2"])), R1(iv("1/2", "3/2")))
    r = R1(iv(0, 1), iv(2, 3))
    assert region_equal(region_translate(r, vec([0])), r)
    out = R1([C([1], "<", 0)], [C([1], ">", 1)])
    assert region_equal(region_translate(out, vec([1])), R1([C([1], "<", 1)], [C([1], ">", 2)]))


def test_minkowski_examples():
    got = region_minkowski_polytope(R1(iv(0, 1)), seg("-1/4", "1/4"))
    assert region_equal(got, R1(iv("-1/4", "5/4")))
    got = region_minkowski_polytope(R1(iv(0, 1), iv(3, 4)), seg(0, 1))
    assert region_equal(got, R1(iv(0, 2), iv(3, 5)))
    open_ray = R1([C([1], ">", 0)])
    got = region_minkowski_polytope(open_ray, seg(0))
    assert region_equal(got, open_ray)
    assert not region_contains_point(got, vec([0]))


def test_erode_examples():
    assert region_equal(region_erode_polytope(R1(iv(0, 1)), seg(0, "1/2")), R1(iv(0, "1/2")))
    assert region_is_empty(region_erode_polytope(R1(iv(0, 1), iv(2, 3)), seg(0, "3/2")))
    r = R1(iv(0, 1), iv(2, 3))
    assert region_equal(region_erode_polytope(r, seg("1/3")), region_translate(r, vec(["-1/3"])))


def test_emptiness_and_points():
    assert region_is_empty(R1([C([1], ">", 0), C([1], "<", 0)]))
    assert region_contains_point(R1(iv(0, 1)), vec([1]))
    assert not region_contains_point(R1([C([1], "<", 1)]), vec([1]))
    assert not region_contains_point(Region.empty(1), vec([0]))


def test_containment_examples():
    assert region_contains_region(R1(iv(0, "1/2"), iv("1/3", 1)), R1(iv(0, 1)))
    assert not region_contains_region(R1(iv(0, "1/2"), iv("2/3", 1, strict_lo=True)), R1(iv(0, 1)))
    assert region_contains_region(R1(iv(5, 6)), Region.empty(1))


def test_difference():
    d = region_difference(R1(iv(0, 3)), R1(iv(1, 2)))
    assert region_equal(d, R1(iv(0, 1, strict_hi=True), iv(2, 3, strict_lo=True)))


def test_json_round_trip():
    r = R1(iv(0, "1/2", strict_hi=True), iv(2, 3))
    assert Region.from_json(r.to_json()) == r


def test_piece_ceiling(monkeypatch):
    monkeypatch.setenv("MINKOWSKI_PIECE_CEILING", "2")
    r = R1(iv(0, 1), iv(2, 3), iv(4, 5))
    with pytest.raises(ResourceError):
        region_complement(r)


# --- algebra laws on random instances ------------------------------------------

coef = st.integers(-2, 2)
rhs = st.fractions(min_value=-2, max_value=2, max_denominator=2)


@st.composite
def regions(draw, d):
    pieces = []
    for _ in range(draw(st.integers(0, 3))):
        rows = []
        for _ in range(draw(st.integers(1, 3))):
            a = draw(st.lists(coef, min_size=d, max_size=d))
            if not any(a):
                a[0] = 1
            rows.append(C(a, draw(st.sampled_from(["<=", "<", ">=", ">"])), draw(rhs)))
        pieces.append(rows)
    return Region.from_constraints(d, *pieces)


@st.composite
def polys(draw, d):
    k = draw(st.integers(1, 3))
    return VPolytope.of([[draw(rhs) for _ in range(d)] for _ in range(k)])


dims = st.integers(1, 2)


def _same_on_grid(r, s, d):
    pts = grid(d, -3, 3, F(1, 2))
    return all(region_member(r, p) == region_member(s, p) for p in pts)


@given(dims.flatmap(regions))
def test_complement_involution(r):
    cc = region_complement(region_complement(r))
    assert region_contains_region(r, cc) and region_contains_region(cc, r)
    assert _same_on_grid(r, cc, r.dimension)


@given(dims.flatmap(lambda d: st.tuples(regions(d), regions(d))))
def test_de_morgan(rs):
    r, s = rs
    left = region_complement(region_union(r, s))
    right = region_intersect(region_complement(r), region_complement(s))
    assert region_equal(left, right)
    assert _same_on_grid(left, right, r.dimension)


@given(dims.flatmap(lambda d: st.tuples(regions(d), polys(d), regions(d))))
def test_erosion_adjunction(case):
    r, p, x = case
    lhs = region_contains_region(region_erode_polytope(r, p), x)
    rhs_ = region_contains_region(r, region_minkowski_polytope(x, p))
    assert lhs == rhs_


@given(dims.flatmap(lambda d: st.tuples(regions(d), regions(d), polys(d))))
def test_minkowski_distributes_over_union(case):
    r, s, p = case
    left = region_minkowski_polytope(region_union(r, s), p)
    right = region_union(region_minkowski_polytope(r, p), region_minkowski_polytope(s, p))
    assert region_equal(left, right)


@given(dims.flatmap(lambda d: st.tuples(regions(d), regions(d))))
def test_boolean_ops_match_pointwise(rs):
    r, s = rs
    d = r.dimension
    u, i, c = region_union(r, s), region_intersect(r, s), region_complement(r)
    for p in grid(d, -3, 3, F(1, 2)):
        a, b = region_member(r, p), region_member(s, p)
        assert region_member(u, p) == (a or b)
        assert region_member(i, p) == (a and b)
        assert region_member(c, p) == (not a)
