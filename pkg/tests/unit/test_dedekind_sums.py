from fractions import Fraction

import mpmath
import pytest

from reciplab.core.exceptions import (
    InadmissibleTriple,
    InvalidParams,
    NotApplicable,
    NotCoprime,
    ParityMismatch,
)
from reciplab.models.params import Kind
from reciplab.services.dedekind_sums import (
    apostol_reciprocity,
    apostol_rhs,
    apostol_sum,
    bezout_pair,
    dedekind_cotangent_sum,
    fukuhara_instance,
    r2_identity,
    r2_reciprocity,
    sgn2,
    shared_center,
    zagier_reciprocity,
)

pytestmark = pytest.mark.unit

TIGHT = mpmath.mpf(2) ** -200
POINT = mpmath.mpc("0.37", "0.21")


@pytest.mark.parametrize(
    "q, p, expected",
    [(1, 3, Fraction(1, 18)), (2, 3, Fraction(-1, 18)), (3, 2, Fraction(0)), (1, 5, Fraction(1, 5))],
)
def test_classical_dedekind_sums(q: int, p: int, expected: Fraction, precision: int) -> None:
    assert abs(apostol_sum(1, q, p) - mpmath.mpf(expected.numerator) / expected.denominator) < TIGHT


def test_apostol_sum_rejects() -> None:
    with pytest.raises(NotCoprime):
        apostol_sum(1, 2, 4)
    with pytest.raises(InvalidParams):
        apostol_sum(0, 1, 3)


def test_apostol_closed_form() -> None:
    assert apostol_rhs(0, 2, 3) == Fraction(-1, 18)
    assert apostol_rhs(1, 1, 2) == 0
    assert apostol_rhs(1, 1, 1) == 0
    assert apostol_rhs(0, 3, 5) == Fraction(-1, 18)


@pytest.mark.parametrize("k, p, q", [(0, 2, 3), (0, 5, 7), (1, 3, 5), (1, 2, 7), (2, 3, 4)])
def test_apostol_reciprocity(k: int, p: int, q: int) -> None:
    report = apostol_reciprocity(k, p, q)
    assert report.passed, report.max_rel_err
    assert report.details["rhs_exact"] == str(apostol_rhs(k, p, q))
    assert report.params is not None and report.params.m == (1, 2 * k + 1)


def test_apostol_sum_through_cotangent_sum(precision: int) -> None:
    for N in (1, 3):
        direct = apostol_sum(N, 2, 5)
        general = dedekind_cotangent_sum(5, (2, 1), (1, N), (0, 0), (2, 0)) / 2 ** (N + 1)
        assert abs(direct - general) < TIGHT


def test_cotangent_sum_rejects() -> None:
    with pytest.raises(InvalidParams):
        dedekind_cotangent_sum(0, (1,), (1,), (0,), (1, 0))
    with pytest.raises(InvalidParams):
        dedekind_cotangent_sum(3, (1, 2), (1,), (0, 0), (2, 0))


def test_bezout() -> None:
    assert bezout_pair(3, 5) == (2, -3)
    assert bezout_pair(1, 4) == (0, 1)
    assert shared_center(3, 5, Fraction(0), Fraction(0)) == 0
    with pytest.raises(NotCoprime):
        bezout_pair(4, 6)


def test_shared_sign_same_kind() -> None:
    assert sgn2(Kind.I, Kind.I, (2, 3), (Fraction(0), Fraction(0)), bezout_pair(2, 3)) == 1


@pytest.mark.parametrize(
    "a, w, kinds",
    [
        ((2, 3), (0, 0), (Kind.I, Kind.I)),
        ((3, 5), (Fraction(1, 3), Fraction(1, 2)), (Kind.I, Kind.I)),
        ((3, 2), (Fraction(1, 4), 0), (Kind.I, Kind.II)),
        ((2, 3), (Fraction(1, 3), Fraction(1, 4)), (Kind.I, Kind.II)),
        ((1, 2), (0, 0), (Kind.II, Kind.II)),
        ((3, 5), (0, Fraction(2, 5)), (Kind.II, Kind.II)),
    ],
)
def test_two_factor_expansion(a: tuple[int, int], w: tuple, kinds: tuple[Kind, Kind]) -> None:
    report = r2_identity(a[0], a[1], Fraction(w[0]), Fraction(w[1]), *kinds)
    assert report.passed, report.max_rel_err
    assert report.samples == 20


def test_two_factor_inadmissible() -> None:
    with pytest.raises(InadmissibleTriple):
        r2_identity(2, 3, Fraction(0), Fraction(0), Kind.II, Kind.I)
    with pytest.raises(InadmissibleTriple):
        r2_identity(2, 3, Fraction(0), Fraction(0), Kind.I, Kind.I, J=Kind.II)


def test_two_factor_reciprocity() -> None:
    assert r2_reciprocity(3, 5, Fraction(1, 3), Fraction(1, 2), Kind.I, Kind.I).passed
    assert r2_reciprocity(3, 2, Fraction(0), Fraction(0), Kind.I, Kind.II).passed
    with pytest.raises(NotApplicable):
        r2_reciprocity(2, 3, Fraction(0), Fraction(0), Kind.I, Kind.II)


@pytest.mark.parametrize(
    "case_id, p, q",
    [(0, 3, 5), (0, 1, 1), (1, 3, 2), (2, 2, 3), (3, 3, 5), (4, 3, 2)],
)
def test_fukuhara(case_id: int, p: int, q: int) -> None:
    report = fukuhara_instance(case_id, p, q, POINT)
    assert report.passed, report.max_rel_err
    assert report.law == f"fukuhara-{case_id}"
    assert report.samples == 3


def test_fukuhara_parity() -> None:
    with pytest.raises(ParityMismatch):
        fukuhara_instance(1, 2, 3, POINT)
    with pytest.raises(ParityMismatch):
        fukuhara_instance(3, 2, 3, POINT)
    with pytest.raises(InvalidParams):
        fukuhara_instance(5, 2, 3, POINT)


def test_zagier() -> None:
    report = zagier_reciprocity((2, 3, 5), (3, 0))
    assert report.passed, report.max_rel_err
    assert "pi^2" in report.details["M_1"]
    assert zagier_reciprocity((2, 3, 5), (0, 3)).passed


def test_zagier_rejects() -> None:
    with pytest.raises(NotCoprime):
        zagier_reciprocity((2, 4, 5), (3, 0))
    with pytest.raises(NotApplicable):
        zagier_reciprocity((1, 1, 1), (0, 3))
