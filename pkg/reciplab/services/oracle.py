"""Brute-force reference evaluators: truncated series, contour extraction and finite differences."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

import mpmath
import numpy as np

from ..core.exceptions import NoConvergence, PoleProximity, PreconditionError
from ..models.params import Kind, Params
from .exact_numbers import fraction_to_mp
from .pole_combinatorics import enumerate_poles
from .trig_kernel import DEFAULT_PRECISION, ComplexLike, phi, to_mpc

# Set up logging
logger = logging.getLogger(__name__)

SERIES_MIN_DISTANCE = 1e-3
MIN_NODES = 256
MAX_NODES = 2**16
# double precision rounding budget per accumulated term
_ROUNDING = 2.0**-50


@dataclass(frozen=True)
class SeriesResult:
    """Symmetric partial sum of the defining series with a rigorous tail estimate."""

    value: mpmath.mpc
    truncation: int
    tail_bound: float


def tail_bound(kind: Kind, N: int, z: complex, M: int) -> float:
    """Bound on the part of the series beyond |n| = M."""
    size = abs(z)
    gap = M - size
    if gap <= 0:
        raise PreconditionError(f"truncation M={M} must exceed |z|={size}")
    if N >= 2:
        return 2.0 * (N / (N - 1)) * gap ** (1 - N)
    if Kind.parse(kind) is Kind.I:
        # |2z/(z^2 - n^2)| summed over n > M
        return 2.0 * size / gap
    # alternating pairs of 2z/(z^2 - n^2)
    return 2.0 * size / (M * M - size * size)


def phi_series(kind: Kind, N: int, z: ComplexLike, M: int) -> SeriesResult:
    """1/z^N + sum_{n=1}^{M} (+-1)^n [(z+n)^-N + (z-n)^-N], summed in double precision."""
    kind = Kind.parse(kind)
    zc = complex(to_mpc(z))
    if N < 1:
        raise PreconditionError(f"N must be >= 1, got {N}")
    if abs(zc - round(zc.real)) < SERIES_MIN_DISTANCE:
        raise PoleProximity(f"z={zc} is within {SERIES_MIN_DISTANCE} of an integer")
    if M < 4 * (abs(zc) + 1):
        raise PreconditionError(f"truncation M={M} must be at least 4(|z|+1)")

    n = np.arange(1, M + 1, dtype=np.float64)
    pairs = (zc + n) ** (-N) + (zc - n) ** (-N)
    if kind is Kind.II:
        pairs = np.where(n % 2 == 1, -pairs, pairs)
    # smallest terms first
    total = np.sum(pairs[::-1])
    value = zc ** (-N) + total
    rounding = M * _ROUNDING * float(np.max(np.abs(pairs), initial=abs(zc ** (-N)))) + _ROUNDING * abs(value)
    bound = tail_bound(kind, N, zc, M) + rounding
    logger.debug(f"🔍 series {kind.value},{N} at {zc} with M={M}: tail {bound:.3e}")
    return SeriesResult(mpmath.mpc(value), M, bound)


def default_contour_radius(poles: Iterable[Fraction], z0: Fraction) -> Fraction:
    """Half the exact distance from z0 to the nearest other pole, poles taken mod 1."""
    z0 = Fraction(z0)
    best: Optional[Fraction] = None
    for rho in poles:
        for shift in (-1, 0, 1):
            gap = abs(Fraction(rho) + shift - z0)
            if gap != 0 and (best is None or gap < best):
                best = gap
    if best is None:
        best = Fraction(1)
    return best / 2


def contour_radius_for(p: Params, z0: Fraction) -> Fraction:
    return default_contour_radius((d.rho for d in enumerate_poles(p)), z0)


def contour_coefficients(
    f: Callable[[mpmath.mpc], mpmath.mpc],
    z0: Fraction,
    orders: Sequence[int],
    radius: Fraction,
    nodes: int = MIN_NODES,
    prec: int = DEFAULT_PRECISION,
    tolerance_bits: Optional[int] = None,
    max_nodes: int = MAX_NODES,
) -> dict[int, mpmath.mpc]:
    """Laurent coefficients of f at z0 by the trapezoid rule on |z - z0| = radius.

    Node count doubles (reusing previous samples) until every requested order
    changes by at most 2^-tolerance_bits relative between two rounds.
    """
    if nodes < MIN_NODES or nodes & (nodes - 1):
        raise PreconditionError(f"nodes must be a power of two >= {MIN_NODES}, got {nodes}")
    if radius <= 0:
        raise PreconditionError(f"radius must be positive, got {radius}")
    tol_bits = tolerance_bits if tolerance_bits is not None else prec // 2

    with mpmath.workprec(prec):
        center = mpmath.mpc(fraction_to_mp(Fraction(z0)))
        R = fraction_to_mp(Fraction(radius))
        tol = mpmath.ldexp(1, -tol_bits)

        def sample(count: int, start: int, step: int) -> list[mpmath.mpc]:
            return [f(center + R * mpmath.expjpi(mpmath.mpf(2 * k) / count)) for k in range(start, count, step)]

        def coefficients(values: list[mpmath.mpc], count: int) -> dict[int, mpmath.mpc]:
            out = {}
            for order in orders:
                acc = mpmath.fsum(
                    value * mpmath.expjpi(-mpmath.mpf(2 * k * order) / count) for k, value in enumerate(values)
                )
                out[order] = acc / (count * R**order)
            return out

        values = sample(nodes, 0, 1)
        current = coefficients(values, nodes)
        count = nodes
        while count < max_nodes:
            fresh = sample(2 * count, 1, 2)
            merged: list[mpmath.mpc] = []
            for old, new in zip(values, fresh):
                merged.extend((old, new))
            values, count = merged, 2 * count
            refined = coefficients(values, count)
            converged = all(
                abs(refined[o] - current[o]) <= tol * max(mpmath.mpf(1), abs(refined[o])) for o in orders
            )
            current = refined
            if converged:
                logger.debug(f"✅ contour at {z0} converged with {count} nodes")
                return current
        raise NoConvergence(f"contour extraction at z0={z0} did not converge with {max_nodes} nodes")


def contour_coefficient(
    f: Callable[[mpmath.mpc], mpmath.mpc],
    z0: Fraction,
    order: int,
    radius: Fraction,
    nodes: int = MIN_NODES,
    prec: int = DEFAULT_PRECISION,
) -> mpmath.mpc:
    """Single-order wrapper around contour_coefficients."""
    return contour_coefficients(f, z0, (order,), radius, nodes, prec)[order]


def finite_diff_check(kind: Kind, N: int, z: ComplexLike, h: float, prec: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """|central difference of phi_N + N phi_{N+1}|, which is O(h^2)."""
    with mpmath.workprec(prec):
        zc = to_mpc(z)
        step = mpmath.mpf(h)
        if abs(zc - mpmath.nint(zc.real)) < 10 * step:
            raise PoleProximity(f"z={mpmath.nstr(zc, 8)} is within 10h of an integer")
        slope = (phi(kind, N, zc + step) - phi(kind, N, zc - step)) / (2 * step)
        return abs(slope + N * phi(kind, N + 1, zc))


def observed_order(kind: Kind, N: int, z: ComplexLike, steps: Sequence[float] = (1e-3, 5e-4, 2.5e-4)) -> list[float]:
    """log2 of successive residual ratios under step halving."""
    residuals = [finite_diff_check(kind, N, z, h) for h in steps]
    return [math.log2(float(a / b)) for a, b in zip(residuals, residuals[1:])]
