import math
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from apollopack.geometry import (Ball, ContactKind, ball_from_ccv, balls_close, contact,
                                 curvature_center, invert_in_sphere)
from apollopack.scalar import Surd

R3 = Surd(0, 1)  # sqrt 3


def test_unit_balls_at_distance_two_are_tangent_at_midpoint():
    c = contact(Ball(1, (0, 0, 0)), Ball(1, (2, 0, 0)))
    assert c.kind is ContactKind.TANGENT
    assert c.point == (1, 0, 0)


def test_opposite_halfspaces_two_apart_touch_at_infinity():
    a = Ball.halfspace((-1, 0, 0), 0)
    b = Ball.halfspace((1, 0, 0), 2)
    c = contact(a, b)
    assert c.tangent and c.at_infinity


def test_halfspaces_sharing_a_boundary_are_not_tangent():
    a = Ball.halfspace((-1, 0, 0), 0)
    b = Ball.halfspace((1, 0, 0), 0)
    assert contact(a, b).kind is ContactKind.BOUNDARY_SHARING


def test_non_antipodal_halfspaces_overlap_and_parallel_ones_nest():
    a = Ball.halfspace((1, 0), 0)
    assert contact(a, Ball.halfspace((0, 1), 0)).kind is ContactKind.OVERLAPPING
    assert contact(a, Ball.halfspace((1, 0), 3)).kind is ContactKind.NESTED


def test_initial_matrix_unit_balls_are_exactly_tangent():
    # rows (1, 1, 1, sqrt(1/3)) and (1, 1, 0, -2 sqrt(1/3)) of the initial matrix
    b1 = Ball(1, (1, 1, R3 / 3))
    b2 = Ball(1, (1, 0, -2 * R3 / 3))
    assert contact(b1, b2).kind is ContactKind.TANGENT


def test_ball_against_halfspace_classes():
    a = Ball.halfspace((-1, 0, 0), 0)  # x1 <= 0
    assert contact(Ball(1, (1, 0, 0)), a).kind is ContactKind.TANGENT
    assert contact(Ball(1, (2, 0, 0)), a).kind is ContactKind.DISJOINT
    assert contact(Ball(1, (Fraction(1, 2), 0, 0)), a).kind is ContactKind.OVERLAPPING
    assert contact(Ball(1, (-1, 0, 0)), a).kind is ContactKind.NESTED
    assert contact(Ball(1, (1, 0, 0)), a).point == (0, 0, 0)


def test_exterior_ball_internal_tangency():
    outer = Ball(-Fraction(1, 3), (0, 0))  # complement of the radius-3 disk
    assert contact(Ball(1, (2, 0)), outer).kind is ContactKind.TANGENT
    assert contact(Ball(1, (0, 0)), outer).kind is ContactKind.DISJOINT
    assert contact(Ball(1, (3, 0)), outer).kind is ContactKind.OVERLAPPING


def test_dimension_mismatch_is_an_error():
    with pytest.raises(ValueError):
        contact(Ball(1, (0, 0)), Ball(1, (0, 0, 0)))


def test_curvature_center_coordinates():
    assert curvature_center(Ball(1, (0, 0, 0))) == (1, 0, 0, 0)
    assert curvature_center(Ball.halfspace((-1, 0, 0), 0)) == (0, -1, 0, 0)
    assert curvature_center(Ball(3, (Fraction(5, 3), 0, 0))) == (3, 5, 0, 0)


def test_ball_from_ccv_inverts_and_rejects_zero_curvature():
    b = ball_from_ccv((3, 1, 0, 0))
    assert b.curvature == 3 and b.center == (Fraction(1, 3), 0, 0)
    assert ball_from_ccv((1, 0, 0, 0)) == Ball(1, (0, 0, 0))
    with pytest.raises(ValueError):
        ball_from_ccv((0, 1, 0, 0))


def test_inversion_in_own_boundary_fixes_sphere_and_swaps_sides():
    b = Ball(1, (0, 0, 0))
    img = invert_in_sphere(b, (0, 0, 0), 1)
    assert img.center == b.center and img.radius == b.radius
    assert img.curvature == -1
    assert balls_close(invert_in_sphere(img, (0, 0, 0), 1), b)


def test_halfspace_inverts_to_ball_through_pointwise_images():
    a = Ball.halfspace((-1, 0, 0), 0)
    img = invert_in_sphere(a, (1, 0, 0), 1)
    assert img.curvature == 2 and img.center == (Fraction(1, 2), 0, 0)
    # images of three boundary points of x1 = 0 lie on the image sphere
    for p in [(0, 0, 0), (0, 1, 0), (0, 2, -3)]:
        q = [x - c for x, c in zip(p, (1, 0, 0))]
        n2 = sum(x * x for x in q)
        image = [c + Fraction(x) / n2 for x, c in zip(q, (1, 0, 0))]
        dist2 = sum((x - c) ** 2 for x, c in zip(image, img.center))
        assert dist2 == img.radius ** 2


coords = st.integers(min_value=-6, max_value=6)
points = st.tuples(coords, coords, coords)
radii = st.fractions(min_value=Fraction(1, 4), max_value=3, max_denominator=4)


@st.composite
def balls(draw):
    if draw(st.integers(0, 4)) == 0:
        axis = draw(st.integers(0, 2))
        sgn = draw(st.sampled_from([1, -1]))
        normal = tuple(sgn if k == axis else 0 for k in range(3))
        return Ball.halfspace(normal, draw(coords))
    return Ball.from_radius(draw(radii), draw(points))


@given(balls(), balls())
def test_contact_is_symmetric(a, b):
    assert contact(a, b).kind == contact(b, a).kind


@given(balls(), balls(), points, st.integers(1, 3))
def test_inversion_preserves_contact_class(a, b, center, radius):
    for ball in (a, b):
        if ball.is_halfspace:
            s = sum(x * n for x, n in zip(center, ball.normal)) - ball.offset
        else:
            s = sum((x - c) ** 2 for x, c in zip(center, ball.center)) - ball.radius ** 2
        assume(s != 0)  # boundary through the inversion center: image kind is degenerate
    before = contact(a, b).kind
    after = contact(invert_in_sphere(a, center, radius), invert_in_sphere(b, center, radius)).kind
    if before is ContactKind.BOUNDARY_SHARING:
        return
    assert before == after


@given(st.floats(0.1, 10), st.lists(st.floats(-5, 5), min_size=3, max_size=3))
def test_ccv_round_trip_float(k, c):
    b = Ball(k, tuple(c))
    assert balls_close(ball_from_ccv(curvature_center(b)), b)


@given(st.fractions(min_value=Fraction(1, 10), max_value=10).filter(bool), points)
def test_ccv_round_trip_exact(k, c):
    b = Ball(k, c)
    assert ball_from_ccv(curvature_center(b)) == b


def test_halfspace_requires_unit_normal():
    with pytest.raises(ValueError):
        Ball.halfspace((2, 0), 0)
    assert Ball.halfspace((1 / math.sqrt(2), 1 / math.sqrt(2)), 0).is_halfspace
