import warnings

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import lattice_points_bruteforce
from toricq.geometry import (
    DivisibilityError,
    LatticePoint,
    LatticePolytope,
    ParameterWarning,
    RangeError,
    box_polytope,
    divisor_coefficients,
    divisor_of_h0,
    dual_b,
    format_polytope,
    intersection_number,
    lattice_points,
    minkowski_sum,
    normal_fan,
    pairing,
    parse_polytope,
    polytope_contains,
    predicted_lattice_count,
    refine,
    refined_normal_fan,
    segment,
    self_intersection,
    support_function,
    zero_bound,
)


def valid_triples(qs):
    for q in qs:
        for r in range(1, q - 1):
            if (q - 2) % r:
                continue
            for b in range(0, q - 1 - (q - 2) // r):
                yield q, r, b


@pytest.fixture(autouse=True)
def _quiet():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ParameterWarning)
        yield


def verts(P):
    return [tuple(v) for v in P.vertices]


def test_box_vertices():
    assert verts(box_polytope(4, 2, 1)) == [(0, 0), (2, 0), (1, 2), (0, 2)]
    assert verts(box_polytope(4, 2, 0)) == [(0, 0), (1, 0), (0, 2)]


def test_box_errors_are_distinct():
    with pytest.raises(RangeError):
        box_polytope(4, 2, 2)
    with pytest.raises(DivisibilityError):
        box_polytope(8, 4, 0)
    with pytest.raises(RangeError):
        box_polytope(4, 2, -1)


def test_r_not_dividing_q_warns():
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        box_polytope(5, 3, 0)
    assert any(issubclass(x.category, ParameterWarning) for x in w)


def test_lattice_points_small():
    assert lattice_points(box_polytope(4, 2, 0)) == [(0, 0), (0, 1), (0, 2), (1, 0)]
    assert len(lattice_points(box_polytope(4, 2, 1))) == 7
    P = LatticePolytope.hull([(3, -2)])
    assert lattice_points(P) == [(3, -2)]


def test_predicted_counts():
    assert predicted_lattice_count(4, 2, 0) == 4
    assert predicted_lattice_count(4, 2, 1) == 7
    assert predicted_lattice_count(8, 2, 2) == 30


@pytest.mark.parametrize("q, r, b", list(valid_triples([3, 4, 5, 8, 16])))
def test_count_formula_matches_enumeration(q, r, b):
    P = box_polytope(q, r, b)
    pts = lattice_points(P)
    assert len(pts) == predicted_lattice_count(q, r, b)
    assert pts == sorted(lattice_points_bruteforce(verts(P), P.bounding_box()))
    assert set(P.vertices) <= set(pts)


def test_minkowski_examples():
    P0 = box_polytope(4, 2, 0)
    assert minkowski_sum(segment((0, 0), (1, 0)), P0) == box_polytope(4, 2, 1)
    assert minkowski_sum(P0, LatticePolytope.hull([(0, 0)])) == P0
    s = minkowski_sum(segment((0, 0), (1, 1)), segment((0, 0), (2, 2)))
    assert verts(s) == [(0, 0), (3, 3)]


@pytest.mark.parametrize("q, r, b", list(valid_triples([4, 5, 8, 16])))
def test_box_is_segment_plus_triangle(q, r, b):
    assert minkowski_sum(segment((0, 0), (b, 0)), box_polytope(q, r, 0)) == box_polytope(q, r, b)


def test_support_function_examples():
    P0 = box_polytope(4, 2, 0)
    assert support_function(P0, (1, 0)) == 0
    assert support_function(P0, (-1, 0)) == -1
    assert support_function(P0, (-2, -1)) == -2


@pytest.mark.parametrize("q, r, b", list(valid_triples([4, 8])))
def test_support_function_reconstructs_points(q, r, b):
    P = box_polytope(q, r, b)
    pts = lattice_points(P)
    fan = refine(P, normal_fan(P))
    for rho in fan.rays:
        h = support_function(P, rho.generator)
        vals = [pairing(m, rho.generator) for m in pts]
        assert min(vals) == h
    # intersecting the half-planes over the fan rays gives back the points
    lo, hi = -1, q
    rebuilt = [
        (x, y)
        for x in range(lo, hi)
        for y in range(lo, hi)
        if all(pairing((x, y), rho.generator) >= support_function(P, rho.generator) for rho in fan.rays)
    ]
    assert rebuilt == [tuple(m) for m in pts]


def test_refined_fan_small():
    fan = refined_normal_fan(4, 2)
    assert [tuple(r.generator) for r in fan.rays] == [(1, 0), (0, 1), (-1, 0), (-2, -1)]
    assert tuple(fan.cones[3].functional) == (0, 2)
    assert fan.determinants()[0] == 1


@pytest.mark.parametrize("q, r", [(4, 1), (4, 2), (8, 1), (8, 2), (8, 3), (8, 6), (16, 2), (16, 7)])
def test_refined_fan_is_smooth_and_linear(q, r):
    fan = refined_normal_fan(q, r)
    P0 = box_polytope(q, r, 0)
    assert fan.is_refined()
    for cone in fan.cones:
        for i in cone.rays:
            n = fan.rays[i].generator
            assert pairing(cone.functional, n) == support_function(P0, n)


def test_computed_fan_matches_fixed_fan_for_r_above_one():
    P0 = box_polytope(8, 2, 0)
    computed = refine(P0, normal_fan(P0))
    assert [r.generator for r in computed.rays] == [r.generator for r in refined_normal_fan(8, 2).rays]
    assert [c.functional for c in computed.cones] == [c.functional for c in refined_normal_fan(8, 2).cones]


@pytest.mark.parametrize("q, r, b", list(valid_triples([8, 16])))
def test_refine_general_box(q, r, b):
    P = box_polytope(q, r, b)
    fan = refine(P, normal_fan(P))
    assert fan.is_refined()
    for cone in fan.cones:
        for i in cone.rays:
            n = fan.rays[i].generator
            assert pairing(cone.functional, n) == support_function(P, n)


def test_divisor_examples():
    assert divisor_of_h0(4, 2) == {"rho1": 0, "rho2": 0, "rho3": 1, "rho4": 2}
    assert divisor_of_h0(8, 2) == {"rho1": 0, "rho2": 0, "rho3": 3, "rho4": 6}
    fan, P0 = refined_normal_fan(8, 2), box_polytope(8, 2, 0)
    for rho in fan.rays:
        assert divisor_coefficients(fan, P0)[rho.label] == -support_function(P0, rho.generator)


def test_intersection_examples():
    assert intersection_number(refined_normal_fan(4, 2), box_polytope(4, 2, 0), "rho1") == 2
    assert intersection_number(refined_normal_fan(8, 2), box_polytope(8, 2, 0), "rho1") == 6


@given(st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5))
def test_intersection_independent_of_choices(tx, ty, t):
    fan, P0 = refined_normal_fan(8, 2), box_polytope(8, 2, 0)
    base = intersection_number(fan, P0, "rho1")
    shifted = LatticePolytope.hull([v + (tx, ty) for v in P0.vertices])
    assert intersection_number(fan, shifted, "rho1") == base
    # any l_rho agreeing with h on rho1: first coordinate is forced to 0
    assert intersection_number(fan, P0, "rho1", l_rho=(0, t)) == base


def test_intersection_rejects_bad_inputs():
    fan, P0 = refined_normal_fan(4, 2), box_polytope(4, 2, 0)
    with pytest.raises(KeyError):
        intersection_number(fan, P0, (3, 7))
    with pytest.raises(ValueError):
        intersection_number(fan, P0, "rho1", l_rho=(1, 0))


def test_self_intersection():
    assert self_intersection(refined_normal_fan(4, 2), "rho1") == 2
    assert self_intersection(refined_normal_fan(8, 2), "rho1") == 2
    assert LatticePoint(0, 1) + LatticePoint(-2, -1) == LatticePoint(-2, 0)


def test_zero_bound():
    assert zero_bound(4, 2, 0) == 2
    assert zero_bound(4, 2, 1) == 0
    assert zero_bound(8, 2, 2) == 2
    assert zero_bound(4, 2, 3) < 0


def test_dual_b():
    assert dual_b(4, 2, 0) == 1
    assert dual_b(8, 2, 3) == 0
    with pytest.raises(RangeError):
        dual_b(4, 2, 2)


@pytest.mark.parametrize("q, r", [(4, 2), (8, 2), (8, 3), (8, 6), (16, 7)])
def test_dual_b_is_involution_and_fixes_a(q, r):
    top = (r - 1) * (q - 2) // r
    for b in range(top + 1):
        bd = dual_b(q, r, b)
        assert dual_b(q, r, bd) == b
        assert bd + (q - 2) // r == q - 2 - b


def test_polytope_contains_examples():
    assert polytope_contains(box_polytope(8, 2, 1), box_polytope(8, 2, dual_b(8, 2, 3)))
    assert not polytope_contains(box_polytope(4, 2, 0), box_polytope(4, 2, 1))
    P = box_polytope(8, 2, 2)
    assert polytope_contains(P, P)


@pytest.mark.parametrize("q", [4, 8])
def test_hypothesis_gives_polytope_inclusion(q):
    for r in range(1, q - 1):
        if (q - 2) % r:
            continue
        top = (r - 1) * (q - 2) // r
        for b1 in range(top + 1):
            for b2 in range(top + 1):
                if b1 + b2 >= top:
                    assert polytope_contains(box_polytope(q, r, b1), box_polytope(q, r, dual_b(q, r, b2)))


def test_polytope_text_round_trip():
    P = box_polytope(8, 2, 1)
    text = format_polytope(P, 8, 2, 1)
    assert text.splitlines() == ["polytope q=8 r=2 b=1", "0 0", "4 0", "1 6", "0 6"]
    params, P2 = parse_polytope(text)
    assert params == {"q": 8, "r": 2, "b": 1} and P2 == P


def test_noncanonical_vertices_rejected():
    with pytest.raises(ValueError):
        LatticePolytope((LatticePoint(0, 0), LatticePoint(0, 2), LatticePoint(2, 0)))
