import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from apollopack.descartes import (DescartesConfiguration, canonical_configuration,
                                  generator_matrix, q_matrix, replace, validate)
from apollopack.geometry import Ball, contact, curvature_center
from apollopack.scalar import Surd

R3 = Surd(0, 1)


def _identity(n):
    return np.identity(n, dtype=int).astype(object)


def test_q_matrix_entries():
    q2 = q_matrix(2)
    assert q2.shape == (4, 4)
    assert q2[0, 0] == Fraction(1, 2) and q2[0, 1] == Fraction(-1, 2)
    q3 = q_matrix(3)
    assert q3[2, 2] == Fraction(2, 3) and q3[1, 4] == Fraction(-1, 3)
    assert (q3 == q3.T).all()


@pytest.mark.parametrize("d", range(2, 9))
def test_q_matrix_row_sums(d):
    q = q_matrix(d)
    assert all(sum(row) == 1 - Fraction(d + 2, d) for row in q)


def test_canonical_d3_is_the_initial_matrix():
    m = canonical_configuration(3).matrix
    expected = [
        (0, -1, 0, 0),
        (0, 1, 0, 0),
        (1, 1, 1, R3 / 3),
        (1, 1, -1, R3 / 3),
        (1, 1, 0, -2 * R3 / 3),
    ]
    assert [tuple(r) for r in m] == expected


def test_canonical_d3_validates_with_zero_residual():
    report = validate(canonical_configuration(3))
    assert report.valid
    assert report.eq1_residual == 0 and report.eq2_residual == 0


def test_canonical_d2_is_two_lines_and_two_disks():
    config = canonical_configuration(2)
    assert config.curvatures == (0, 0, 1, 1)
    assert validate(config).valid


@pytest.mark.parametrize("d", range(2, 9))
def test_canonical_configuration_validates(d):
    report = validate(canonical_configuration(d))
    assert report.valid and float(report.eq1_residual) < 1e-9


def test_perturbed_radius_breaks_validation():
    config = canonical_configuration(3, exact=False)
    balls = list(config.balls)
    b = balls[2]
    balls[2] = Ball.from_radius(b.radius * (1 + 1e-3), b.center)
    report = validate(DescartesConfiguration(3, balls))
    assert not report.valid and report.bad_pairs


def test_replace_first_halfspace_gives_three_five():
    new_config, ball = replace(canonical_configuration(3), 1)
    assert curvature_center(ball) == (3, 5, 0, 0)
    assert ball.radius == Fraction(1, 3)
    for other in new_config.balls[1:]:
        assert contact(ball, other).tangent
    assert validate(new_config).valid


def test_replace_second_halfspace_gives_ball_c():
    _, ball = replace(canonical_configuration(3), 2)
    assert curvature_center(ball) == (3, 1, 0, 0)
    assert 2 * ball.radius == Fraction(2, 3)


@pytest.mark.parametrize("i", range(1, 6))
def test_replace_is_an_involution(i):
    config = canonical_configuration(3)
    once, _ = replace(config, i)
    twice, _ = replace(once, i)
    assert twice == config


def test_replace_back_to_halfspace_recovers_offset():
    once, _ = replace(canonical_configuration(3), 1)
    twice, ball = replace(once, 1)
    assert ball.is_halfspace and ball.normal == (-1, 0, 0) and ball.offset == 0


def test_generator_matrix_row_for_d3():
    r1 = generator_matrix(3, 1)
    assert list(r1[0]) == [-1, 1, 1, 1, 1]
    assert (r1[1:] == _identity(5)[1:]).all()


@pytest.mark.parametrize("d", range(2, 9))
def test_generators_are_involutions(d):
    for i in range(1, d + 3):
        r = generator_matrix(d, i)
        assert (r.dot(r) == _identity(d + 2)).all()


def test_apollonian_braid_relations_d3():
    for i, j in itertools.permutations(range(1, 6), 2):
        rr = generator_matrix(3, i).dot(generator_matrix(3, j))
        assert (rr.dot(rr).dot(rr) == _identity(5)).all()


def test_generator_acts_like_replace_on_initial_matrix():
    m0 = canonical_configuration(3).matrix
    assert tuple(generator_matrix(3, 1).dot(m0)[0]) == (3, 5, 0, 0)


def _random_configuration(d, rng, steps):
    config = canonical_configuration(d)
    for _ in range(steps):
        config, _ = replace(config, rng.randint(1, d + 2))
    return config


@given(st.integers(2, 6), st.integers(0, 2**31), st.integers(0, 6))
def test_replace_matches_generator_matrix(d, seed, steps):
    rng = random.Random(seed)
    config = _random_configuration(d, rng, steps)
    i = rng.randint(1, d + 2)
    expected = generator_matrix(d, i).dot(config.matrix)
    got = replace(config, i)[0].matrix
    for a, b in zip(expected.ravel(), got.ravel()):
        assert abs(float(a) - float(b)) < 1e-7 * (1 + abs(float(a)))


@given(st.integers(2, 6), st.integers(0, 2**31), st.integers(1, 8))
def test_replace_preserves_descartes_relation(d, seed, steps):
    config = _random_configuration(d, random.Random(seed), steps)
    k = np.array([float(x) for x in config.curvatures])
    q = np.array(q_matrix(d), dtype=float)
    assert abs(k.dot(q).dot(k)) <= 1e-9 * (1 + k.dot(k))


@given(st.lists(st.integers(1, 5), max_size=12))
def test_d3_exact_orbit_has_integral_first_columns(letters):
    config = canonical_configuration(3)
    for i in letters:
        config, _ = replace(config, i)
    for row in config.matrix:
        assert all(Fraction(x).denominator == 1 if not isinstance(x, Surd) else x.is_integer()
                   for x in row[:2])


def test_configuration_size_is_checked():
    with pytest.raises(ValueError):
        DescartesConfiguration(3, canonical_configuration(3).balls[:4])


def test_replace_index_range():
    with pytest.raises(IndexError):
        replace(canonical_configuration(3), 6)
