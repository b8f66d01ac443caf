"""Closed-form evaluation of phi_N^(J) through derivative polynomials in cot(pi z)."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Union

import mpmath

from ..core.exceptions import IntegerArgument, PoleProximity, PreconditionError
from ..models.params import Kind
from .exact_numbers import fraction_to_mp

# Set up logging
logger = logging.getLogger(__name__)

ComplexLike = Union[mpmath.mpc, mpmath.mpf, complex, float, int, Fraction]

DEFAULT_PRECISION = 256
LIMIT_HEIGHTS = (5, 10, 20)


@dataclass(frozen=True)
class TrigPoly:
    """Polynomial in c = cot(pi z) with exact coefficients, lowest degree first."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coeffs = [Fraction(x) for x in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, power: int) -> Fraction:
        if 0 <= power < len(self.coefficients):
            return self.coefficients[power]
        return Fraction(0)

    def __add__(self, other: "TrigPoly") -> "TrigPoly":
        size = max(len(self.coefficients), len(other.coefficients))
        return TrigPoly(tuple(self[i] + other[i] for i in range(size)))

    def __mul__(self, other: Union["TrigPoly", Fraction, int]) -> "TrigPoly":
        if not isinstance(other, TrigPoly):
            return TrigPoly(tuple(x * other for x in self.coefficients))
        if not self.coefficients or not other.coefficients:
            return TrigPoly(())
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, x in enumerate(self.coefficients):
            for k, y in enumerate(other.coefficients):
                out[i + k] += x * y
        return TrigPoly(tuple(out))

    def derivative(self) -> "TrigPoly":
        return TrigPoly(tuple(i * x for i, x in enumerate(self.coefficients) if i > 0))

    def evaluate(self, c: ComplexLike) -> mpmath.mpc:
        """Horner evaluation at the current mpmath precision."""
        acc = mpmath.mpc(0)
        for coeff in reversed(_mp_coefficients(self.coefficients, mpmath.mp.prec)):
            acc = acc * c + coeff
        return acc

    def __str__(self) -> str:
        terms = [f"{x}*c^{i}" if i else str(x) for i, x in enumerate(self.coefficients) if x]
        return " + ".join(terms) or "0"


_ONE_PLUS_C2 = TrigPoly((Fraction(1), Fraction(0), Fraction(1)))
_C = TrigPoly((Fraction(0), Fraction(1)))


@lru_cache(maxsize=None)
def _mp_coefficients(coefficients: tuple[Fraction, ...], prec: int) -> tuple[mpmath.mpf, ...]:
    with mpmath.workprec(prec):
        return tuple(fraction_to_mp(x) for x in coefficients)


@lru_cache(maxsize=None)
def cot_poly(N: int) -> TrigPoly:
    """P_N with phi_N^(I)(z) = pi^N P_N(cot pi z)."""
    if N < 1:
        raise PreconditionError(f"N must be >= 1, got {N}")
    if N == 1:
        return _C
    prev = cot_poly(N - 1)
    return (_ONE_PLUS_C2 * prev.derivative()) * Fraction(1, N - 1)


@lru_cache(maxsize=None)
def csc_poly(N: int) -> TrigPoly:
    """Q_N with phi_N^(II)(z) = pi^N csc(pi z) Q_N(cot pi z)."""
    if N < 1:
        raise PreconditionError(f"N must be >= 1, got {N}")
    if N == 1:
        return TrigPoly((Fraction(1),))
    prev = csc_poly(N - 1)
    return (_C * prev + _ONE_PLUS_C2 * prev.derivative()) * Fraction(1, N - 1)


def trig_poly(kind: Kind, N: int) -> TrigPoly:
    return cot_poly(N) if Kind.parse(kind) is Kind.I else csc_poly(N)


def to_mpc(z: ComplexLike) -> mpmath.mpc:
    """Lift a number to mpc at the current precision; Fractions are converted exactly."""
    if isinstance(z, Fraction):
        return mpmath.mpc(fraction_to_mp(z))
    return mpmath.mpc(z)


class TrigPoint:
    """cot(pi z) and csc(pi z) at one point, reused for every N and kind."""

    def __init__(self, z: ComplexLike) -> None:
        self.z = to_mpc(z)
        k = int(mpmath.nint(self.z.real))
        x = self.z - k
        threshold = mpmath.ldexp(1, -(mpmath.mp.prec // 4))
        if abs(x) < threshold:
            raise PoleProximity(f"z={mpmath.nstr(self.z, 8)} lies within 2^-{mpmath.mp.prec // 4} of the integer {k}")
        if x.imag >= 0:
            t = mpmath.expjpi(x)
            t2 = t * t
            denom = t2 - 1
            self.cot = mpmath.mpc(0, 1) * (t2 + 1) / denom
            csc_reduced = 2 * mpmath.mpc(0, 1) * t / denom
        else:
            u = mpmath.expjpi(-x)
            u2 = u * u
            denom = 1 - u2
            self.cot = mpmath.mpc(0, 1) * (1 + u2) / denom
            csc_reduced = 2 * mpmath.mpc(0, 1) * u / denom
        # csc(pi (x + k)) = (-1)^k csc(pi x)
        self.csc = -csc_reduced if k % 2 else csc_reduced
        self.shift = k

    def phi(self, kind: Kind, N: int) -> mpmath.mpc:
        kind = Kind.parse(kind)
        if kind is Kind.I:
            value = cot_poly(N).evaluate(self.cot)
        else:
            value = self.csc * csc_poly(N).evaluate(self.cot)
        return value * mpmath.pi**N


def phi(kind: Kind, N: int, z: ComplexLike, prec: Optional[int] = None) -> mpmath.mpc:
    """phi_N^(J)(z), the periodic partial fraction sum over the poles at the integers."""
    if N < 1:
        raise PreconditionError(f"N must be >= 1, got {N}")
    if prec is None:
        return TrigPoint(z).phi(kind, N)
    with mpmath.workprec(prec):
        return TrigPoint(z).phi(kind, N)


def phi_many(kind: Kind, orders: Iterable[int], z: ComplexLike) -> dict[int, mpmath.mpc]:
    """phi_N^(J)(z) for several N sharing one trigonometric evaluation."""
    point = TrigPoint(z)
    return {N: point.phi(kind, N) for N in orders}


@lru_cache(maxsize=4096)
def _phi_at_reduced(kind: Kind, N: int, y: Fraction, prec: int) -> mpmath.mpc:
    with mpmath.workprec(prec):
        if kind is Kind.I and N % 2 == 1 and y == Fraction(1, 2):
            return mpmath.mpc(0)
        return TrigPoint(y).phi(kind, N)


def phi_at_rational(kind: Kind, N: int, x: Fraction, prec: Optional[int] = None) -> mpmath.mpc:
    """phi_N^(J) at an exact rational, reduced to (0,1) before conversion."""
    kind = Kind.parse(kind)
    x = Fraction(x)
    k = x.numerator // x.denominator
    y = x - k
    if y == 0:
        raise IntegerArgument(f"phi_{N}^({kind.value}) is singular at the integer {x}")
    work = prec if prec is not None else mpmath.mp.prec
    value = _phi_at_reduced(kind, N, y, work)
    # phi^(II)(y + k) = (-1)^k phi^(II)(y)
    if kind is Kind.II and k % 2:
        return -value
    return value


@dataclass(frozen=True)
class LimitCheck:
    """Distances to the limit at i*infinity along a vertical ray."""

    kind: Kind
    N: int
    heights: tuple[float, ...]
    distances: tuple[mpmath.mpf, ...]

    @property
    def monotone(self) -> bool:
        return all(b < a for a, b in zip(self.distances, self.distances[1:]))


def limit_check(
    kind: Kind, N: int, x: ComplexLike = 0.25, heights: Sequence[float] = LIMIT_HEIGHTS, prec: int = DEFAULT_PRECISION
) -> LimitCheck:
    """|phi_1^(I) + pi*i| or |phi_N^(J)| at x + i*y for growing y; both tend to 0."""
    kind = Kind.parse(kind)
    with mpmath.workprec(prec):
        target = -mpmath.mpc(0, 1) * mpmath.pi if (kind is Kind.I and N == 1) else mpmath.mpc(0)
        distances = tuple(
            abs(phi(kind, N, to_mpc(x) + mpmath.mpc(0, y)) - target) for y in heights
        )
    logger.debug(f"🔍 limit check {kind.value},{N}: {[mpmath.nstr(d, 5) for d in distances]}")
    return LimitCheck(kind, N, tuple(float(h) for h in heights), distances)
