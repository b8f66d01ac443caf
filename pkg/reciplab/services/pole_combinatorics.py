"""Poles in the fundamental strip, their integral index sets and the composition sets."""

from __future__ import annotations

import itertools
import logging
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Literal, Sequence

from ..core.exceptions import InvalidParams
from ..models.params import CaseTag, Kind, Params, PoleDatum

# Set up logging
logger = logging.getLogger(__name__)

Sign = Literal["+", "-"]


def classify_case(p: Params) -> CaseTag:
    """Case II iff the cosecant block is nonempty and its a_l sum is odd."""
    csc_sum = sum(p.a[p.j[0]:])
    if p.j[1] > 0 and csc_sum % 2 == 1:
        return CaseTag(Kind.II)
    return CaseTag(Kind.I)


def pole_datum_at(p: Params, rho: Fraction) -> PoleDatum:
    """Integral set of an arbitrary rational point; empty when rho is not a pole."""
    rho = Fraction(rho)
    members: list[int] = []
    shifts: list[int] = []
    for index, (a, w) in enumerate(zip(p.a, p.w)):
        value = a * rho - w
        if value.denominator == 1:
            members.append(index)
            shifts.append(value.numerator)
    return PoleDatum(rho=rho, integral_set=tuple(members), shifts=tuple(shifts))


def node(p: Params, v: int, mu: int) -> Fraction:
    """The pole (w_v + mu)/a_v of the v-th factor."""
    return (p.w[v] + mu) / p.a[v]


@lru_cache(maxsize=1024)
def enumerate_poles(p: Params) -> tuple[PoleDatum, ...]:
    """All distinct poles in [0, 1), ascending, each with its full integral set."""
    points = {node(p, v, mu) for v in range(p.r) for mu in range(p.a[v])}
    poles = tuple(pole_datum_at(p, rho) for rho in sorted(points))
    logger.debug(f"🔍 {len(poles)} poles for {p}")
    return poles


def multiplicity_d(p: Params, v: int, mu: int) -> int:
    """Number of (index, offset) pairs whose node coincides with (w_v + mu)/a_v."""
    if not (0 <= v < p.r):
        raise InvalidParams(f"index v={v} out of range for r={p.r}")
    if not (0 <= mu < p.a[v]):
        raise InvalidParams(f"offset mu={mu} out of range for a_v={p.a[v]}")
    target = node(p, v, mu)
    return sum(1 for k in range(p.r) for mu_k in range(p.a[k]) if node(p, k, mu_k) == target)


def residue_subsets(d: PoleDatum) -> list[tuple[int, ...]]:
    """Every subset of the integral set, by size then lexicographically (empty set first)."""
    members = d.integral_set
    return [combo for size in range(len(members) + 1) for combo in itertools.combinations(members, size)]


def complement(p: Params, subset: Sequence[int]) -> tuple[int, ...]:
    chosen = set(subset)
    return tuple(i for i in range(p.r) if i not in chosen)


def weak_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of total into parts, lexicographically ascending."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in weak_compositions(total - first, parts - 1):
            yield (first,) + rest


def composition_target(target: int, sign: Sign, subset: Sequence[int], p: Params) -> int:
    """Required sum of nu over the complement of the subset."""
    lam_order = sum(p.m[i] for i in subset)
    if sign == "-":
        return lam_order - target
    if sign == "+":
        return target + lam_order
    raise InvalidParams(f"sign must be '+' or '-', got {sign!r}")


def compositions_K(target: int, sign: Sign, subset: Sequence[int], p: Params) -> list[dict[int, int]]:
    """Maps u -> nu_u over the complement with the sum fixed by sign and target."""
    if sign == "-" and target < 1:
        raise InvalidParams(f"K- needs n >= 1, got {target}")
    if sign == "+" and target < 0:
        raise InvalidParams(f"K+ needs mu >= 0, got {target}")
    total = composition_target(target, sign, subset, p)
    if total < 0:
        return []
    rest = complement(p, subset)
    return [dict(zip(rest, combo)) for combo in weak_compositions(total, len(rest))]
