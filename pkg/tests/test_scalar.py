from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from apollopack import scalar
from apollopack.scalar import Surd

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=50)
surds = st.builds(Surd, rationals, rationals)


@given(surds, surds, surds)
def test_field_operations_are_closed_and_associative(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert isinstance(x * y, Surd)


@given(surds, surds)
def test_division_inverts_multiplication(x, y):
    if y:
        assert (x / y) * y == x


@given(surds)
def test_exact_sign_matches_float_sign_away_from_zero(x):
    f = float(x)
    if abs(f) > 1e-9:
        assert x.sign() == (1 if f > 0 else -1)


def test_sign_of_nearly_cancelling_surd_is_exact():
    # 1351/780 approximates sqrt 3 from above to about 1e-7
    x = Surd(Fraction(1351, 780), -1)
    assert x.sign() == 1
    assert (-x).sign() == -1


def test_sqrt_stays_in_the_field():
    assert Surd.sqrt(Fraction(1, 3)) == Surd(0, Fraction(1, 3))
    assert Surd.sqrt(4) == 2
    with pytest.raises(ValueError):
        Surd.sqrt(2, 3)
    assert Surd.sqrt(8, 2) == Surd(0, 2, 2)


def test_rational_surd_hashes_like_its_fraction():
    assert hash(Surd(Fraction(1, 2))) == hash(Fraction(1, 2))
    assert Surd(3) == 3


def test_mixing_radicands_is_refused():
    with pytest.raises(ValueError):
        Surd(0, 1, 2) + Surd(0, 1, 3)


def test_float_tolerance_comes_from_environment(monkeypatch):
    monkeypatch.setenv(scalar.TOLERANCE_ENV, "1e-3")
    assert scalar.sign(5e-4) == 0
    monkeypatch.delenv(scalar.TOLERANCE_ENV)
    assert scalar.sign(5e-4) == 1


def test_bad_tolerance_environment_is_rejected(monkeypatch):
    monkeypatch.setenv(scalar.TOLERANCE_ENV, "-1")
    with pytest.raises(ValueError):
        scalar.default_tolerance()
