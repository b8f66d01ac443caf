from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reciplab.core.exceptions import IntegerArgument, PoleProximity, PreconditionError
from reciplab.models.params import Kind
from reciplab.services.trig_kernel import (
    TrigPoint,
    TrigPoly,
    cot_poly,
    csc_poly,
    limit_check,
    phi,
    phi_at_rational,
    phi_many,
)

pytestmark = pytest.mark.unit

TIGHT = mpmath.mpf(2) ** -200


def F(*values: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


def test_low_order_polynomials() -> None:
    assert cot_poly(1).coefficients == F(0, 1)
    assert cot_poly(2).coefficients == F(1, 0, 1)
    assert cot_poly(3).coefficients == F(0, 1, 0, 1)
    assert csc_poly(1).coefficients == F(1)
    assert csc_poly(2).coefficients == F(0, 1)
    with pytest.raises(PreconditionError):
        cot_poly(0)


@given(st.integers(min_value=1, max_value=12))
def test_polynomial_parity_and_degree(N: int) -> None:
    P, Q = cot_poly(N), csc_poly(N)
    assert P.degree == N
    assert Q.degree == N - 1
    # P_N has the parity of N, Q_N the parity of N - 1
    assert all(c == 0 for i, c in enumerate(P.coefficients) if (i - N) % 2)
    assert all(c == 0 for i, c in enumerate(Q.coefficients) if (i - N + 1) % 2)


def test_trig_poly_algebra() -> None:
    p = TrigPoly(F(1, 2, 0, 0))
    assert p.coefficients == F(1, 2)
    assert (p + TrigPoly(F(0, -2))).coefficients == F(1)
    assert (p * p).coefficients == F(1, 4, 4)
    assert p.derivative().coefficients == F(2)
    assert str(TrigPoly(())) == "0"


def test_closed_forms(precision: int) -> None:
    z = mpmath.mpc("0.3", "0.4")
    s = mpmath.pi * z
    assert abs(phi(Kind.I, 1, z) - mpmath.pi * mpmath.cot(s)) < TIGHT
    assert abs(phi(Kind.I, 2, z) - mpmath.pi**2 * mpmath.csc(s) ** 2) < TIGHT
    assert abs(phi(Kind.II, 1, z) - mpmath.pi * mpmath.csc(s)) < TIGHT
    assert abs(phi(Kind.II, 2, z) - mpmath.pi**2 * mpmath.csc(s) * mpmath.cot(s)) < TIGHT


@settings(max_examples=25, deadline=None)
@given(
    st.integers(min_value=1, max_value=6),
    st.floats(min_value=0.05, max_value=0.95),
    st.floats(min_value=-2.0, max_value=2.0),
)
def test_derivative_relation(N: int, x: float, y: float) -> None:
    """d/dz phi_N = -N phi_(N+1), checked by mpmath's numerical derivative."""
    with mpmath.workprec(128):
        z = mpmath.mpc(x, y)
        for kind in (Kind.I, Kind.II):
            slope = mpmath.diff(lambda t: phi(kind, N, t), z)
            expected = -N * phi(kind, N + 1, z)
            assert abs(slope - expected) <= mpmath.mpf(2) ** -80 * max(1, abs(expected))


def test_periodicity(precision: int) -> None:
    z = mpmath.mpc("0.21", "-0.7")
    for N in range(1, 5):
        assert abs(phi(Kind.I, N, z + 3) - phi(Kind.I, N, z)) < TIGHT
        assert abs(phi(Kind.II, N, z + 3) + phi(Kind.II, N, z)) < TIGHT
        assert abs(phi(Kind.II, N, z + 2) - phi(Kind.II, N, z)) < TIGHT


def test_far_from_real_axis(precision: int) -> None:
    """The exponential forms stay finite where cot/csc overflow naive evaluation."""
    z = mpmath.mpc("0.25", "400")
    assert abs(phi(Kind.I, 1, z) + mpmath.mpc(0, 1) * mpmath.pi) < TIGHT
    assert abs(phi(Kind.II, 3, z)) < TIGHT
    assert abs(phi(Kind.II, 1, mpmath.mpc("0.25", "-400"))) < TIGHT


def test_pole_proximity() -> None:
    with pytest.raises(PoleProximity):
        phi(Kind.I, 1, mpmath.mpf("1e-30"), prec=256)
    with pytest.raises(PoleProximity):
        TrigPoint(mpmath.mpc(2, 0))


def test_phi_at_rational(precision: int) -> None:
    pi = mpmath.pi
    assert abs(phi_at_rational(Kind.I, 1, Fraction(1, 4)) - pi) < TIGHT
    assert phi_at_rational(Kind.I, 1, Fraction(1, 2)) == 0
    assert phi_at_rational(Kind.I, 3, Fraction(5, 2)) == 0
    assert abs(phi_at_rational(Kind.I, 2, Fraction(1, 2)) - pi**2) < TIGHT
    assert abs(phi_at_rational(Kind.II, 1, Fraction(1, 2)) - pi) < TIGHT
    assert abs(phi_at_rational(Kind.II, 1, Fraction(3, 2)) + pi) < TIGHT
    assert abs(phi_at_rational(Kind.II, 1, Fraction(-1, 2)) + pi) < TIGHT
    with pytest.raises(IntegerArgument):
        phi_at_rational(Kind.I, 1, Fraction(2))


def test_phi_many_shares_point(precision: int) -> None:
    z = mpmath.mpc("0.4", "0.1")
    values = phi_many(Kind.II, (1, 2, 3), z)
    for N, value in values.items():
        assert abs(value - phi(Kind.II, N, z)) < TIGHT


@pytest.mark.parametrize("kind, N", [(Kind.I, 1), (Kind.I, 3), (Kind.II, 1), (Kind.II, 2)])
def test_limit_at_i_infinity(kind: Kind, N: int) -> None:
    check = limit_check(kind, N)
    assert check.monotone
    assert check.distances[-1] < 1e-20
