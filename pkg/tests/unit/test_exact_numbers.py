import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from reciplab.core.exceptions import PreconditionError
from reciplab.models.params import Kind
from reciplab.services.exact_numbers import (
    PiScaled,
    alpha,
    bernoulli,
    binom,
    cos_half_pi,
    pochhammer,
    sin_half_pi,
)

pytestmark = pytest.mark.unit


@pytest.mark.parametrize(
    "m, expected",
    [
        (0, Fraction(1)),
        (1, Fraction(-1, 2)),
        (2, Fraction(1, 6)),
        (4, Fraction(-1, 30)),
        (6, Fraction(1, 42)),
        (8, Fraction(-1, 30)),
        (10, Fraction(5, 66)),
        (12, Fraction(-691, 2730)),
    ],
)
def test_bernoulli_values(m: int, expected: Fraction) -> None:
    assert bernoulli(m) == expected


@given(st.integers(min_value=1, max_value=60))
def test_odd_bernoulli_vanish(k: int) -> None:
    assert bernoulli(2 * k + 1) == 0


@given(st.integers(min_value=1, max_value=40))
def test_bernoulli_recurrence(n: int) -> None:
    assert sum(math.comb(n + 1, k) * bernoulli(k) for k in range(n + 1)) == 0


def test_bernoulli_rejects_negative() -> None:
    with pytest.raises(PreconditionError):
        bernoulli(-1)


def test_alpha_matches_zeta() -> None:
    with mpmath.workprec(128):
        for mu in (2, 4, 6):
            assert abs(alpha(Kind.I, mu).to_mp() - 2 * mpmath.zeta(mu)) < mpmath.mpf(2) ** -120
            expected = 2 * (1 - mpmath.mpf(2) ** (1 - mu)) * mpmath.zeta(mu)
            assert abs(alpha(Kind.II, mu).to_mp() - expected) < mpmath.mpf(2) ** -120


def test_alpha_exact() -> None:
    assert alpha(Kind.I, 2) == PiScaled(Fraction(1, 3), 2)
    assert alpha(Kind.II, 2) == PiScaled(Fraction(1, 6), 2)
    assert alpha(Kind.I, 4) == PiScaled(Fraction(1, 45), 4)
    assert alpha(Kind.I, 5).is_zero
    with pytest.raises(PreconditionError):
        alpha(Kind.I, 0)


def test_pi_scaled_arithmetic() -> None:
    x = PiScaled(Fraction(1, 3), 2)
    assert x + x == PiScaled(Fraction(2, 3), 2)
    assert (x - x).is_zero
    assert x * 3 == PiScaled(Fraction(1), 2)
    assert x * PiScaled(Fraction(3), 1) == PiScaled(Fraction(1), 3)
    assert PiScaled.zero(5) + x == x
    assert str(PiScaled(Fraction(-1), 2)) == "(-1)*pi^2"
    with pytest.raises(ValueError):
        x + PiScaled(Fraction(1), 3)


def test_binom_and_pochhammer() -> None:
    assert binom(5, 2) == 10
    assert binom(2, 5) == 0
    assert pochhammer(3, 2) == 12
    assert pochhammer(4, 0) == 1
    with pytest.raises(PreconditionError):
        binom(-1, 0)


@given(st.integers(min_value=-50, max_value=50))
def test_quarter_turns(r: int) -> None:
    assert cos_half_pi(r) ** 2 + sin_half_pi(r) ** 2 == 1
    assert cos_half_pi(r + 1) == -sin_half_pi(r)


@given(st.integers(min_value=1, max_value=20))
def test_alpha_positive_with_cosecant_ratio(k: int) -> None:
    mu = 2 * k
    first, second = alpha(Kind.I, mu), alpha(Kind.II, mu)
    assert first.coeff > 0 and second.coeff > 0
    assert first.pi_power == second.pi_power == mu
    assert second.coeff / first.coeff == 1 - Fraction(1, 2 ** (mu - 1))


@given(st.integers(min_value=1, max_value=12), st.integers(min_value=0, max_value=12))
def test_pochhammer_over_binom_is_factorial(m: int, nu: int) -> None:
    assert pochhammer(m, nu) == binom(m + nu - 1, m - 1) * math.factorial(nu)
