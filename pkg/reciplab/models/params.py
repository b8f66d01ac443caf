"""Input carriers for the identity engine: parameter tuples, poles and sampling."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Iterable, Sequence

from ..core.exceptions import InvalidParams


class Kind(str, Enum):
    """Function family: I is the cotangent family, II the cosecant family."""

    I = "I"  # noqa: E741
    II = "II"

    @property
    def is_csc(self) -> bool:
        return self is Kind.II

    @classmethod
    def parse(cls, raw: str | "Kind") -> "Kind":
        if isinstance(raw, Kind):
            return raw
        text = str(raw).strip().upper()
        aliases = {"I": cls.I, "1": cls.I, "COT": cls.I, "II": cls.II, "2": cls.II, "CSC": cls.II}
        if text not in aliases:
            raise InvalidParams(f"unknown kind {raw!r}; expected I or II")
        return aliases[text]


def parse_rational(raw: str | int | Fraction) -> Fraction:
    """Parse ``num/den`` (or an integer / exact decimal) into a Fraction."""
    if isinstance(raw, Fraction):
        return raw
    if isinstance(raw, int):
        return Fraction(raw)
    try:
        return Fraction(str(raw).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise InvalidParams(f"not a rational number: {raw!r}") from e


def format_rational(value: Fraction) -> str:
    """Render a Fraction as ``num/den`` (or a bare integer)."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _split(raw: str | Sequence[Any]) -> list[str]:
    if isinstance(raw, str):
        return [part for part in (p.strip() for p in raw.split(",")) if part]
    return [str(p) for p in raw]


def _parse_ints(raw: str | Sequence[Any], name: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in _split(raw))
    except ValueError as e:
        raise InvalidParams(f"{name} must be a comma separated list of integers, got {raw!r}") from e


@dataclass(frozen=True)
class Params:
    """The tuple (a, m, w, j); indices are 0-based, the first j[0] are kind I."""

    a: tuple[int, ...]
    m: tuple[int, ...]
    w: tuple[Fraction, ...]
    j: tuple[int, int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        object.__setattr__(self, "m", tuple(int(x) for x in self.m))
        object.__setattr__(self, "w", tuple(parse_rational(x) for x in self.w))
        object.__setattr__(self, "j", tuple(int(x) for x in self.j))
        self._validate()

    def _validate(self) -> None:
        r = len(self.a)
        if r < 2:
            raise InvalidParams(f"r must be at least 2, got {r}")
        if len(self.m) != r or len(self.w) != r:
            raise InvalidParams(f"a, m, w must have equal length (got {len(self.a)}, {len(self.m)}, {len(self.w)})")
        if len(self.j) != 2 or min(self.j) < 0 or sum(self.j) != r:
            raise InvalidParams(f"j must be a pair of naturals summing to r={r}, got {self.j}")
        if any(x < 1 for x in self.a):
            raise InvalidParams(f"all a_l must be >= 1, got {self.a}")
        if any(x < 1 for x in self.m):
            raise InvalidParams(f"all m_l must be >= 1, got {self.m}")
        if any(not (0 <= x < 1) for x in self.w):
            raise InvalidParams(f"all w_l must lie in [0, 1), got {[format_rational(x) for x in self.w]}")

    @property
    def r(self) -> int:
        return len(self.a)

    @property
    def total_order(self) -> int:
        """|m|, the order of the pole of the product at a point shared by all factors."""
        return sum(self.m)

    def kind(self, index: int) -> Kind:
        return Kind.I if index < self.j[0] else Kind.II

    @property
    def kinds(self) -> tuple[Kind, ...]:
        return tuple(self.kind(i) for i in range(self.r))

    @property
    def all_simple(self) -> bool:
        return all(x == 1 for x in self.m)

    @property
    def w_is_zero(self) -> bool:
        return all(x == 0 for x in self.w)

    @classmethod
    def from_strings(
        cls,
        a: str | Sequence[Any],
        m: str | Sequence[Any] | None = None,
        w: str | Sequence[Any] | None = None,
        j: str | Sequence[Any] | None = None,
    ) -> "Params":
        """Build from CLI style comma lists; m defaults to ones, w to zeros, j to all kind I."""
        a_vals = _parse_ints(a, "a")
        r = len(a_vals)
        m_vals = _parse_ints(m, "m") if m is not None else (1,) * r
        w_vals = tuple(parse_rational(x) for x in _split(w)) if w is not None else (Fraction(0),) * r
        j_vals = _parse_ints(j, "j") if j is not None else (r, 0)
        if len(j_vals) != 2:
            raise InvalidParams(f"j must have two entries, got {j!r}")
        return cls(a=a_vals, m=m_vals, w=w_vals, j=(j_vals[0], j_vals[1]))

    def to_dict(self) -> dict[str, Any]:
        return {
            "r": self.r,
            "a": list(self.a),
            "m": list(self.m),
            "w": [format_rational(x) for x in self.w],
            "j": list(self.j),
        }

    def __str__(self) -> str:
        w = ",".join(format_rational(x) for x in self.w)
        return f"a=({','.join(map(str, self.a))}) m=({','.join(map(str, self.m))}) w=({w}) j={self.j}"


@dataclass(frozen=True)
class PoleDatum:
    """A point rho in [0,1) with the indices whose factor is singular there."""

    rho: Fraction
    integral_set: tuple[int, ...]
    shifts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if len(self.shifts) != len(self.integral_set):
            raise InvalidParams("shifts must align with integral_set")

    @property
    def int_values(self) -> dict[int, int]:
        """l -> a_l*rho - w_l for every l in the integral set."""
        return dict(zip(self.integral_set, self.shifts))

    @property
    def is_pole(self) -> bool:
        return bool(self.integral_set)

    @property
    def multiplicity(self) -> int:
        return len(self.integral_set)


@dataclass(frozen=True)
class CaseTag:
    """Period parity J of the partial fraction side."""

    J: Kind

    @property
    def antiperiodic(self) -> bool:
        return self.J is Kind.II


@dataclass(frozen=True)
class SamplePolicy:
    """Where verifiers draw their complex sample points."""

    count: int = 20
    im_range: tuple[float, float] = (0.1, 1.0)
    exclusion_radius: float = 1e-3
    seed: int = 20240917

    def __post_init__(self) -> None:
        low, high = self.im_range
        if self.count < 1:
            raise InvalidParams(f"sample count must be positive, got {self.count}")
        if not (0 < low <= high):
            raise InvalidParams(f"invalid imaginary range {self.im_range}")
        if self.exclusion_radius <= 0 or low < self.exclusion_radius:
            raise InvalidParams("im_range low end must be at least the exclusion radius")
        if not (0 <= self.seed < 2**64):
            raise InvalidParams(f"seed must be a 64-bit unsigned integer, got {self.seed}")


def params_family_sizes(params: Iterable[Params]) -> dict[int, int]:
    """Histogram of r across a family, used in log lines."""
    counts: dict[int, int] = {}
    for p in params:
        counts[p.r] = counts.get(p.r, 0) + 1
    return counts
