import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from finepoly.arith import vector_gcd
from finepoly.fixtures import klein, named_polygon, prism_over_2simplex, scaled_simplex
from finepoly.lattice_maps import (ProjectionMap, affine_normal_form, apply_projection,
                                   directions_of_width_at_most, lattice_width,
                                   unimodular_equivalent, width_in_direction,
                                   width_one_directions)
from finepoly.polytope import LatticePolytope, convex_hull

GL2 = [((1, 1), (0, 1)), ((0, 1), (-1, 0)), ((2, 1), (1, 1)), ((1, 0), (-3, 1)), ((-1, 0), (0, 1))]
GL3 = [((1, 1, 0), (0, 1, 0), (0, 0, 1)), ((0, 0, 1), (1, 0, 0), (0, 1, 0)),
       ((1, 0, 2), (0, 1, -1), (0, 0, 1)), ((2, 1, 0), (1, 1, 0), (0, 0, -1))]


def transform(P, U, t):
    return LatticePolytope([tuple(sum(a * b for a, b in zip(row, v)) + s for row, s in zip(U, t))
                            for v in P.vertices])


def test_apply_projection_examples():
    first = ProjectionMap(((1, 0),), (0,))
    assert apply_projection(scaled_simplex(2, 2), first).vertices == ((0,), (2,))
    second = ProjectionMap(((0, 1),), (0,))
    assert apply_projection(named_polygon(6), second).vertices == ((0,), (1,))
    P3 = klein(2)
    assert P3.vertices == ((0, 0, 1), (0, 1, 2), (1, 2, 0), (2, 0, 0))
    assert apply_projection(P3, ProjectionMap(((1, 0, 1),), (-1,))).vertices == ((0,), (1,))
    with pytest.raises(ValueError, match="not a lattice projection"):
        apply_projection(P3, ProjectionMap(((2, 0, 0),), (0,)))


def test_width_examples():
    w = lattice_width(scaled_simplex(2, 2), 4)
    assert w.width == 2 and (1, 0) in w.directions and w.exhaustive
    w = lattice_width(prism_over_2simplex(), 4)
    assert w.width == 1 and w.directions == ((1, 0, 0),)
    assert lattice_width(klein(3), 4).width == 2
    assert width_in_direction(klein(2), (1, 0, 1)) == 1
    assert width_one_directions(named_polygon(2)) == [(0, 1)]
    assert width_one_directions(named_polygon(1)) == [(0, 1), (1, 0)]


def brute_width(P, B):
    d = P.ambient_dim
    return min(width_in_direction(P, nu) for nu in itertools.product(range(-B, B + 1), repeat=d)
               if vector_gcd(nu) == 1)


def test_width_against_large_box():
    rng = random.Random(21)
    for _ in range(40):
        d = rng.choice((2, 3))
        P = convex_hull([tuple(rng.randint(-4, 4) for _ in range(d)) for _ in range(d + 3)])
        if not P.is_full_dimensional:
            continue
        w = lattice_width(P, 2)
        big = brute_width(P, 6 if d == 3 else 12)
        if w.exhaustive:
            assert w.width == big
        assert w.width >= big


def test_directions_of_width_at_most_complete():
    P = LatticePolytope([(0, 0), (5, 1), (2, 3)])
    found = set(directions_of_width_at_most(P, 3))
    for nu in itertools.product(range(-15, 16), repeat=2):
        if vector_gcd(nu) == 1 and width_in_direction(P, nu) <= 3:
            assert nu in found or tuple(-x for x in nu) in found


def test_normal_form_examples():
    assert affine_normal_form(named_polygon(4)) == affine_normal_form(scaled_simplex(2, 2))
    square2 = LatticePolytope([(0, 0), (2, 0), (0, 2), (2, 2)])
    assert affine_normal_form(square2) != affine_normal_form(scaled_simplex(2, 2))
    key = affine_normal_form(scaled_simplex(2, 2))
    assert len(key.digest()) == 64


def test_normal_form_vertex_cap():
    octagon = LatticePolytope([(1, 0), (2, 0), (3, 1), (3, 2), (2, 3), (1, 3), (0, 2), (0, 1)])
    with pytest.raises(ValueError):
        affine_normal_form(octagon, vertex_cap=6)
    assert affine_normal_form(octagon).ambient_dim == 2


def test_equivalence_errors():
    with pytest.raises(ValueError):
        unimodular_equivalent(scaled_simplex(2, 2), klein(2))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=3, max_size=7),
       st.sampled_from(GL2), st.tuples(st.integers(-5, 5), st.integers(-5, 5)))
def test_normal_form_invariant_2d(pts, U, t):
    P = convex_hull(pts)
    if not P.is_full_dimensional:
        return
    Q = transform(P, U, t)
    assert affine_normal_form(P) == affine_normal_form(Q)
    wp, wq = lattice_width(P, 3), lattice_width(Q, 3)
    # an exhaustive width is the true width, so no box minimum can be smaller
    if wp.exhaustive:
        assert wp.width <= wq.width
    if wq.exhaustive:
        assert wq.width <= wp.width


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(*[st.integers(-2, 2)] * 3), min_size=4, max_size=6),
       st.sampled_from(GL3), st.tuples(*[st.integers(-3, 3)] * 3))
def test_normal_form_invariant_3d(pts, U, t):
    P = convex_hull(pts)
    if not P.is_full_dimensional:
        return
    assert unimodular_equivalent(P, transform(P, U, t))
