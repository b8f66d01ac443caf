"""End-to-end acceptance suite behind the ``selftest`` subcommand."""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import mpmath

from ..core.config import RunConfig
from ..core.exceptions import NotApplicable
from ..models.params import Kind, Params, SamplePolicy
from ..models.report import VerificationReport
from ..services.dedekind_sums import apostol_reciprocity, fukuhara_instance, zagier_reciprocity
from ..services.exact_numbers import PiScaled
from ..services.identity_engine import (
    LAURENT_CENTERS,
    LAURENT_ORDERS,
    Corruption,
    IdentityEngine,
    get_identity_engine,
    sample_family,
    sample_points,
)
from ..services.oracle import phi_series
from ..services.trig_kernel import phi

# Set up logging
logger = logging.getLogger(__name__)

SERIES_TRUNCATION = 10_000
KERNEL_ORDERS = range(1, 7)
FUKUHARA_POINT = mpmath.mpc("0.37", "0.21")
FUKUHARA_PAIRS = {
    0: [(1, 1), (3, 2), (2, 3), (3, 5)],
    1: [(3, 2)],
    2: [(1, 1), (2, 3), (3, 5)],
    3: [(1, 1), (3, 5)],
    4: [(3, 2), (2, 3)],
}
APOSTOL_PAIRS = [(2, 3), (3, 4), (5, 7)]
ZAGIER_TRIPLE = (2, 3, 5)
# cosecant factors with poles at every Laurent center
LAURENT_PINNED = Params(a=(6, 6, 6), m=(2, 1, 3), w=(Fraction(0), Fraction(1, 4), Fraction(1, 2)), j=(0, 3))
W_ZERO_CASES = [
    ((2, 3, 5), (1, 2, 1), (3, 0)),
    ((2, 3, 5), (1, 2, 1), (0, 3)),
    ((1, 1, 1), (1, 1, 1), (0, 3)),
    ((3, 4), (3, 1), (1, 1)),
]
NEGATIVE_CONTROL_RATE = Fraction(9, 10)


@dataclass(frozen=True)
class SuiteSizes:
    family: int = 50
    samples: int = 20
    laurent_members: int = 10
    kernel_points: int = 100

    @classmethod
    def quick(cls) -> "SuiteSizes":
        return cls(family=8, samples=5, laurent_members=3, kernel_points=20)


def scaled_bits(cfg: RunConfig, bits_at_256: int) -> int:
    """Criterion tolerances are stated at 256 bits; scale them to the run precision."""
    return max(1, bits_at_256 * cfg.precision_bits // 256)


def kernel_oracle(cfg: RunConfig, sizes: SuiteSizes) -> list[VerificationReport]:
    """phi against the truncated series, within the analytic tail bound."""
    points = sample_points(SamplePolicy(count=sizes.kernel_points, seed=cfg.seed))
    reports = []
    for kind in (Kind.I, Kind.II):
        for N in KERNEL_ORDERS:
            started = time.perf_counter()
            rows = []
            with mpmath.workprec(cfg.precision_bits):
                for z in points:
                    series = phi_series(kind, N, z, SERIES_TRUNCATION)
                    rows.append((z, phi(kind, N, z), series.value, series.tail_bound))
            reports.append(
                VerificationReport.from_bounds(
                    f"kernel-series[{kind.value},{N}]", kind, cfg.precision_bits, rows, started,
                    {"truncation": SERIES_TRUNCATION},
                )
            )
    return reports


def identity_family(cfg: RunConfig, family: list[Params], sizes: SuiteSizes) -> list[VerificationReport]:
    engine = get_identity_engine(cfg.precision_bits, cfg.tolerance_bits)
    policy = SamplePolicy(count=sizes.samples, seed=cfg.seed)
    return [engine.verify_identity(p, policy) for p in family]


def residue_family(cfg: RunConfig, family: list[Params]) -> list[VerificationReport]:
    engine = get_identity_engine(cfg.precision_bits, cfg.tolerance_bits)
    reports = []
    for p in family:
        try:
            reports.append(engine.verify_reciprocity_sum(p))
        except NotApplicable as e:
            logger.debug(f"⏭️ {e}")
    hand = IdentityEngine(cfg.precision_bits, scaled_bits(cfg, 200))
    reports.append(hand.verify_reciprocity_sum(Params(a=(1, 1, 1), m=(1, 1, 1), w=(Fraction(0),) * 3, j=(3, 0))))
    return reports


def laurent_family(cfg: RunConfig, family: list[Params], sizes: SuiteSizes) -> list[VerificationReport]:
    engine = IdentityEngine(cfg.precision_bits, scaled_bits(cfg, 100))
    members = [*family[: sizes.laurent_members], LAURENT_PINNED]
    return [engine.verify_laurent_reciprocity(p, z0, LAURENT_ORDERS) for p in members for z0 in LAURENT_CENTERS]


def w_zero_laws(cfg: RunConfig) -> list[VerificationReport]:
    """Origin coefficients of the expansion against M_n, for both kernels."""
    engine = IdentityEngine(cfg.precision_bits, scaled_bits(cfg, 100))
    return [
        engine.w_zero_expansion_check(Params(a=a, m=m, w=(Fraction(0),) * len(a), j=j)) for a, m, j in W_ZERO_CASES
    ]


def apostol_laws(cfg: RunConfig) -> list[VerificationReport]:
    reports = [
        apostol_reciprocity(0, 2, 3, cfg.precision_bits, scaled_bits(cfg, 100)),
        # 2^-40 is below 1e-12
        apostol_reciprocity(0, 2, 3, 53, 40),
    ]
    for k in (1, 2):
        for p, q in APOSTOL_PAIRS:
            reports.append(apostol_reciprocity(k, p, q, cfg.precision_bits, scaled_bits(cfg, 100)))
    return reports


def fukuhara_laws(cfg: RunConfig) -> list[VerificationReport]:
    return [
        fukuhara_instance(case_id, p, q, FUKUHARA_POINT, cfg.precision_bits, scaled_bits(cfg, 128))
        for case_id, pairs in FUKUHARA_PAIRS.items()
        for p, q in pairs
    ]


def zagier_laws(cfg: RunConfig) -> list[VerificationReport]:
    bits = scaled_bits(cfg, 100)
    r = len(ZAGIER_TRIPLE)
    reports = [
        zagier_reciprocity(ZAGIER_TRIPLE, (r, 0), cfg.precision_bits, bits),
        zagier_reciprocity(ZAGIER_TRIPLE, (0, r), cfg.precision_bits, bits),
        zagier_reciprocity((1, 1, 1), (3, 0), cfg.precision_bits, bits),
    ]
    started = time.perf_counter()
    unit = Params(a=(1, 1, 1), m=(1, 1, 1), w=(Fraction(0),) * 3, j=(3, 0))
    engine = IdentityEngine(cfg.precision_bits, scaled_bits(cfg, 200))
    m_1 = engine.m_coefficient(unit, 1)
    expected = PiScaled(Fraction(-1), 2)
    with mpmath.workprec(cfg.precision_bits):
        reports.append(
            VerificationReport.from_comparisons(
                "zagier-M1", unit, Kind.I, cfg.precision_bits, [(None, m_1.value, expected.to_mp())],
                engine.tolerance, started, {"M_1": str(m_1.exact_part), "exact": m_1.exact_part == expected},
            )
        )
    return reports


def _control_rate(
    cfg: RunConfig, family: list[Params], sizes: SuiteSizes, name: str, corrupt: Callable[[int, Params], Corruption]
) -> VerificationReport:
    engine = get_identity_engine(cfg.precision_bits, cfg.tolerance_bits)
    policy = SamplePolicy(count=sizes.samples, seed=cfg.seed)
    started = time.perf_counter()
    caught = sum(1 for index, p in enumerate(family) if not engine.verify_identity(p, policy, corrupt(index, p)).passed)
    required = math.ceil(NEGATIVE_CONTROL_RATE * len(family))
    return VerificationReport.from_comparisons(
        f"negative-control[{name}]", None, Kind.I, cfg.precision_bits, [(None, min(caught, required), required)],
        mpmath.mpf(0), started, {"caught": caught, "required": required, "family": len(family)},
    )


def negative_controls(cfg: RunConfig, family: list[Params], sizes: SuiteSizes) -> list[VerificationReport]:
    return [
        _control_rate(cfg, family, sizes, "flip-sign", lambda index, p: Corruption(flip_index=index % p.r)),
        _control_rate(cfg, family, sizes, "drop-full-subset", lambda index, p: Corruption(drop_full_subset=True)),
    ]


def run_selftest(cfg: RunConfig, quick: bool = False) -> list[VerificationReport]:
    """Every acceptance check in order; each returned report must pass."""
    sizes = SuiteSizes.quick() if quick else SuiteSizes(samples=cfg.samples)
    started = time.perf_counter()
    logger.info(f"🚀 selftest ({'quick' if quick else 'full'}) at {cfg.precision_bits} bits, seed {cfg.seed}")
    family = sample_family(sizes.family, cfg.seed)
    reports: list[VerificationReport] = []
    reports += kernel_oracle(cfg, sizes)
    reports += identity_family(cfg, family, sizes)
    reports += residue_family(cfg, family)
    reports += laurent_family(cfg, family, sizes)
    reports += w_zero_laws(cfg)
    reports += apostol_laws(cfg)
    reports += fukuhara_laws(cfg)
    reports += zagier_laws(cfg)
    reports += negative_controls(cfg, family, sizes)
    failed = sum(1 for r in reports if not r.passed)
    logger.info(
        f"{'✅' if not failed else '❌'} selftest: {len(reports) - failed}/{len(reports)} reports passed "
        f"in {time.perf_counter() - started:.1f} s"
    )
    return reports
