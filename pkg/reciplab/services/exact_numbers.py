"""Exact rationals: Bernoulli numbers, the zeta-value constants alpha and combinatorial factors."""

from __future__ import annotations

import logging
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

import mpmath

from ..core.exceptions import PreconditionError
from ..models.params import Kind

# Set up logging
logger = logging.getLogger(__name__)

_bernoulli_table: list[Fraction] = [Fraction(1)]
_bernoulli_lock = threading.Lock()


def bernoulli(m: int) -> Fraction:
    """B_m for the generating function t/(e^t - 1), so B_1 = -1/2."""
    if m < 0:
        raise PreconditionError(f"Bernoulli index must be >= 0, got {m}")
    if m < len(_bernoulli_table):
        return _bernoulli_table[m]
    with _bernoulli_lock:
        table = _bernoulli_table
        for n in range(len(table), m + 1):
            if n >= 3 and n % 2 == 1:
                table.append(Fraction(0))
                continue
            # sum_{k=0}^{n} C(n+1, k) B_k = 0
            s = sum(Fraction(math.comb(n + 1, k)) * table[k] for k in range(n))
            table.append(-s / (n + 1))
        logger.debug(f"🧮 Bernoulli table extended to index {len(table) - 1}")
        return table[m]


Number = Union[int, Fraction]


@dataclass(frozen=True)
class PiScaled:
    """The exact value coeff * pi**pi_power."""

    coeff: Fraction
    pi_power: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeff", Fraction(self.coeff))
        if self.pi_power < 0:
            raise ValueError(f"pi_power must be >= 0, got {self.pi_power}")

    @classmethod
    def zero(cls, pi_power: int = 0) -> "PiScaled":
        return cls(Fraction(0), pi_power)

    @property
    def is_zero(self) -> bool:
        return self.coeff == 0

    def __add__(self, other: "PiScaled") -> "PiScaled":
        if not isinstance(other, PiScaled):
            return NotImplemented
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        if self.pi_power != other.pi_power:
            raise ValueError(f"cannot add pi^{self.pi_power} and pi^{other.pi_power} terms exactly")
        return PiScaled(self.coeff + other.coeff, self.pi_power)

    def __sub__(self, other: "PiScaled") -> "PiScaled":
        return self + (-other)

    def __neg__(self) -> "PiScaled":
        return PiScaled(-self.coeff, self.pi_power)

    def __mul__(self, other: Union["PiScaled", Number]) -> "PiScaled":
        if isinstance(other, PiScaled):
            return PiScaled(self.coeff * other.coeff, self.pi_power + other.pi_power)
        if isinstance(other, (int, Fraction)):
            return PiScaled(self.coeff * other, self.pi_power)
        return NotImplemented

    __rmul__ = __mul__

    def to_mp(self) -> mpmath.mpf:
        """Numerical value at the current mpmath precision."""
        if self.is_zero:
            return mpmath.mpf(0)
        return mpmath.mpf(self.coeff.numerator) / self.coeff.denominator * mpmath.pi**self.pi_power

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        if self.pi_power == 0:
            return str(self.coeff)
        power = "pi" if self.pi_power == 1 else f"pi^{self.pi_power}"
        return f"({self.coeff})*{power}"


@lru_cache(maxsize=None)
def alpha(kind: Kind, mu: int) -> PiScaled:
    """Taylor constants of phi_N at its pole: 2*zeta(mu) (I) and 2*(1 - 2^(1-mu))*zeta(mu) (II) for even mu."""
    if mu < 1:
        raise PreconditionError(f"alpha is defined for mu >= 1, got {mu}")
    if mu % 2 == 1:
        return PiScaled.zero(mu)
    sign = -1 if (mu // 2 + 1) % 2 else 1
    base = sign * bernoulli(mu) / math.factorial(mu)
    if Kind.parse(kind) is Kind.I:
        return PiScaled(base * 2**mu, mu)
    return PiScaled(2 * (2 ** (mu - 1) - 1) * base, mu)


def binom(n: int, k: int) -> int:
    """Exact binomial coefficient, 0 when k > n."""
    if n < 0 or k < 0:
        raise PreconditionError(f"binom needs n, k >= 0, got ({n}, {k})")
    return math.comb(n, k)


def pochhammer(m: int, nu: int) -> int:
    """Rising factorial m(m+1)...(m+nu-1); (m)_0 = 1."""
    if m < 0 or nu < 0:
        raise PreconditionError(f"pochhammer needs m, nu >= 0, got ({m}, {nu})")
    return math.prod(range(m, m + nu))


def cos_half_pi(r: int) -> int:
    """cos(pi*r/2) from r mod 4."""
    return (1, 0, -1, 0)[r % 4]


def sin_half_pi(r: int) -> int:
    """sin(pi*r/2) from r mod 4."""
    return (0, 1, 0, -1)[r % 4]


def fraction_to_mp(value: Fraction) -> mpmath.mpf:
    return mpmath.mpf(value.numerator) / value.denominator
