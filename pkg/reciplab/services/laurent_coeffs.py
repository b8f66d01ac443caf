"""Integer-shift tests, signatures and the Taylor/Laurent coefficients of a^m phi_m(a z - w)."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import mpmath

from ..core.exceptions import PreconditionError
from ..models.params import Kind
from .exact_numbers import PiScaled, alpha, binom, pochhammer
from .trig_kernel import phi_at_rational

# Set up logging
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ShiftTest:
    """Whether a*z0 - w is an integer, and which one."""

    is_integral: bool
    integer_value: Optional[int] = None


def shift_test(a: int, w: Fraction, z0: Fraction) -> ShiftTest:
    value = a * Fraction(z0) - Fraction(w)
    if value.denominator == 1:
        return ShiftTest(True, value.numerator)
    return ShiftTest(False)


def sgn(kind: Kind, z0: Fraction, a: int, w: Fraction) -> int:
    """Signature of phi_N^(J)(a z - w) at z0: the coefficient of its leading pole term."""
    test = shift_test(a, w, z0)
    if not test.is_integral:
        return 0
    if Kind.parse(kind) is Kind.II and test.integer_value is not None and test.integer_value % 2:
        return -1
    return 1


@dataclass(frozen=True)
class ACoeff:
    """Order-nu coefficient; exact_part is set on the integral (pole) branch."""

    value: mpmath.mpc
    exact_part: Optional[PiScaled] = None

    @property
    def is_exact(self) -> bool:
        return self.exact_part is not None


def pole_taylor_term(kind: Kind, nu: int, m: int, a: int) -> PiScaled:
    """Order-nu coefficient of a^m phi_m(a t) - t^-m at t = 0.

    pi cot(pi t) = 1/t - sum alpha^(I)_mu t^(mu-1) while pi csc(pi t) = 1/t + sum alpha^(II)_mu t^(mu-1),
    so the two kinds differ by one sign before differentiating m - 1 times.
    """
    sign = (-1) ** m if Kind.parse(kind) is Kind.I else (-1) ** (m - 1)
    return alpha(kind, m + nu) * (sign * binom(m + nu - 1, m - 1) * a ** (m + nu))


@lru_cache(maxsize=65536)
def _coeff_A(kind: Kind, nu: int, z0: Fraction, a: int, m: int, w: Fraction, prec: int) -> ACoeff:
    test = shift_test(a, w, z0)
    with mpmath.workprec(prec):
        if test.is_integral:
            exact = pole_taylor_term(kind, nu, m, a) * sgn(kind, z0, a, w)
            return ACoeff(mpmath.mpc(exact.to_mp()), exact)
        scale = Fraction((-1) ** nu * pochhammer(m, nu) * a ** (m + nu), math.factorial(nu))
        value = phi_at_rational(kind, m + nu, a * z0 - w, prec)
        return ACoeff(value * (mpmath.mpf(scale.numerator) / scale.denominator))


def coeff_A(
    kind: Kind, nu: int, z0: Fraction, a: int, m: int, w: Fraction, prec: Optional[int] = None
) -> ACoeff:
    """Coefficient of (z - z0)^nu in a^m phi_m^(J)(a z - w) with the pole term removed."""
    if nu < 0 or m < 1 or a < 1:
        raise PreconditionError(f"coeff_A needs nu >= 0, m >= 1, a >= 1 (got nu={nu}, m={m}, a={a})")
    work = prec if prec is not None else mpmath.mp.prec
    return _coeff_A(Kind.parse(kind), nu, Fraction(z0), a, m, Fraction(w), work)
