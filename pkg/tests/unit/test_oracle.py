from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reciplab.core.exceptions import NoConvergence, PoleProximity, PreconditionError
from reciplab.models.params import Kind, Params
from reciplab.services.oracle import (
    contour_coefficient,
    contour_coefficients,
    contour_radius_for,
    default_contour_radius,
    finite_diff_check,
    observed_order,
    phi_series,
    tail_bound,
)
from reciplab.services.trig_kernel import phi

pytestmark = pytest.mark.unit


@pytest.mark.parametrize("kind", [Kind.I, Kind.II])
@pytest.mark.parametrize("N", [1, 2, 3])
def test_series_within_bound(kind: Kind, N: int) -> None:
    z = mpmath.mpc("0.3", "0.2")
    result = phi_series(kind, N, z, 2000)
    with mpmath.workprec(128):
        assert abs(result.value - phi(kind, N, z)) <= result.tail_bound
    assert result.truncation == 2000


def test_series_tail_shrinks() -> None:
    assert tail_bound(Kind.I, 1, 0.5 + 0.5j, 10_000) < tail_bound(Kind.I, 1, 0.5 + 0.5j, 100)
    assert tail_bound(Kind.II, 1, 0.5j, 100) < tail_bound(Kind.I, 1, 0.5j, 100)


def test_series_preconditions() -> None:
    with pytest.raises(PoleProximity):
        phi_series(Kind.I, 1, 1.0001, 100)
    with pytest.raises(PreconditionError):
        phi_series(Kind.I, 1, 0.5 + 3j, 10)
    with pytest.raises(PreconditionError):
        phi_series(Kind.I, 0, 0.5, 100)


def test_contour_of_exp() -> None:
    with mpmath.workprec(128):
        values = contour_coefficients(mpmath.exp, Fraction(0), (0, 1, 2), Fraction(1), prec=128)
        assert abs(values[0] - 1) < mpmath.mpf(2) ** -60
        assert abs(values[1] - 1) < mpmath.mpf(2) ** -60
        assert abs(values[2] - mpmath.mpf(1) / 2) < mpmath.mpf(2) ** -60


def test_contour_reads_principal_part() -> None:
    # pi cot(pi z) = 1/z - pi^2 z / 3 + ...
    f = lambda z: phi(Kind.I, 1, z)  # noqa: E731
    with mpmath.workprec(128):
        assert abs(contour_coefficient(f, Fraction(0), -1, Fraction(1, 2), prec=128) - 1) < mpmath.mpf(2) ** -50
        slope = contour_coefficient(f, Fraction(0), 1, Fraction(1, 2), prec=128)
        assert abs(slope + mpmath.pi**2 / 3) < mpmath.mpf(2) ** -50


def test_contour_gives_up() -> None:
    with pytest.raises(NoConvergence):
        contour_coefficients(mpmath.exp, Fraction(0), (0,), Fraction(1), max_nodes=256)
    with pytest.raises(PreconditionError):
        contour_coefficients(mpmath.exp, Fraction(0), (0,), Fraction(1), nodes=300)
    with pytest.raises(PreconditionError):
        contour_coefficients(mpmath.exp, Fraction(0), (0,), Fraction(0))


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=0, max_value=4), st.sampled_from([Kind.I, Kind.II]), st.integers(min_value=1, max_value=3))
def test_contour_is_self_consistent(k: int, kind: Kind, N: int) -> None:
    """More nodes or a smaller circle give the same coefficients."""
    f = lambda z: phi(kind, N, z)  # noqa: E731
    z0 = Fraction(k, 5)
    orders = (-1, 0, 1, 2)
    base = contour_coefficients(f, z0, orders, Fraction(1, 10), prec=128, tolerance_bits=60)
    denser = contour_coefficients(f, z0, orders, Fraction(1, 10), nodes=1024, prec=128, tolerance_bits=60)
    smaller = contour_coefficients(f, z0, orders, Fraction(1, 20), prec=128, tolerance_bits=60)
    with mpmath.workprec(128):
        for order in orders:
            scale = max(1, abs(base[order]))
            assert abs(base[order] - denser[order]) <= mpmath.mpf(2) ** -50 * scale
            assert abs(base[order] - smaller[order]) <= mpmath.mpf(2) ** -50 * scale


def test_contour_radius(cot_pair: Params) -> None:
    assert contour_radius_for(cot_pair, Fraction(1, 5)) == Fraction(1, 15)
    assert contour_radius_for(cot_pair, Fraction(0)) == Fraction(1, 6)
    assert default_contour_radius([], Fraction(1, 2)) == Fraction(1, 2)


def test_finite_differences_are_second_order() -> None:
    z = mpmath.mpc("0.3", "0.25")
    for kind in (Kind.I, Kind.II):
        orders = observed_order(kind, 2, z)
        assert all(abs(order - 2) < 0.1 for order in orders)
    with pytest.raises(PoleProximity):
        finite_diff_check(Kind.I, 1, mpmath.mpf("1e-3"), 1e-3)
