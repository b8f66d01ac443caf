"""Verification reports returned by every verifier."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Any, Iterable, Optional

import mpmath

from .params import Kind, Params

logger = logging.getLogger(__name__)

MAX_WITNESSES = 3


@dataclass(frozen=True)
class Witness:
    """One compared point: z is None for scalar laws."""

    z: Optional[mpmath.mpc]
    lhs: mpmath.mpc
    rhs: mpmath.mpc
    abs_err: mpmath.mpf
    rel_err: mpmath.mpf


@dataclass
class VerificationReport:
    """Outcome of comparing two sides of an identity.

    ``passed`` is true exactly when ``max_rel_err <= tolerance``; witnesses are
    kept only for failed reports (worst first).
    """

    law: str
    params: Optional[Params]
    case: Kind
    precision_bits: int
    samples: int
    max_abs_err: mpmath.mpf
    max_rel_err: mpmath.mpf
    tolerance: mpmath.mpf
    passed: bool
    witnesses: list[Witness] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)
    wall_time_ms: float = 0.0

    @classmethod
    def from_comparisons(
        cls,
        law: str,
        params: Optional[Params],
        case: Kind,
        precision_bits: int,
        comparisons: Iterable[tuple[Optional[mpmath.mpc], Any, Any]],
        tolerance: mpmath.mpf,
        started: float,
        details: Optional[dict[str, Any]] = None,
    ) -> "VerificationReport":
        """Score (z, lhs, rhs) triples; relative error is |lhs-rhs| / max(1, |lhs|, |rhs|)."""
        with mpmath.workprec(precision_bits):
            witnesses: list[Witness] = []
            for z, lhs, rhs in comparisons:
                lhs_c = mpmath.mpc(lhs)
                rhs_c = mpmath.mpc(rhs)
                abs_err = abs(lhs_c - rhs_c)
                scale = max(mpmath.mpf(1), abs(lhs_c), abs(rhs_c))
                witnesses.append(Witness(z, lhs_c, rhs_c, abs_err, abs_err / scale))

            max_abs = max((w.abs_err for w in witnesses), default=mpmath.mpf(0))
            max_rel = max((w.rel_err for w in witnesses), default=mpmath.mpf(0))
            passed = bool(max_rel <= tolerance)
            worst = sorted(witnesses, key=lambda w: w.rel_err, reverse=True)[:MAX_WITNESSES]

        report = cls(
            law=law,
            params=params,
            case=case,
            precision_bits=precision_bits,
            samples=len(witnesses),
            max_abs_err=max_abs,
            max_rel_err=max_rel,
            tolerance=tolerance,
            passed=passed,
            witnesses=[] if passed else worst,
            details=dict(details or {}),
            wall_time_ms=(time.perf_counter() - started) * 1000.0,
        )
        report.log()
        return report

    @classmethod
    def from_bounds(
        cls,
        law: str,
        case: Kind,
        precision_bits: int,
        comparisons: Iterable[tuple[Optional[mpmath.mpc], Any, Any, float]],
        started: float,
        details: Optional[dict[str, Any]] = None,
    ) -> "VerificationReport":
        """Score (z, lhs, rhs, bound) against absolute per-point bounds.

        Here rel_err is |lhs - rhs| / bound, so the report passes iff it stays <= 1.
        """
        with mpmath.workprec(precision_bits):
            witnesses = []
            for z, lhs, rhs, bound in comparisons:
                lhs_c, rhs_c = mpmath.mpc(lhs), mpmath.mpc(rhs)
                abs_err = abs(lhs_c - rhs_c)
                witnesses.append(Witness(z, lhs_c, rhs_c, abs_err, abs_err / mpmath.mpf(bound)))
            one = mpmath.mpf(1)
            max_abs = max((w.abs_err for w in witnesses), default=mpmath.mpf(0))
            max_rel = max((w.rel_err for w in witnesses), default=mpmath.mpf(0))
            passed = bool(max_rel <= one)
            worst = sorted(witnesses, key=lambda w: w.rel_err, reverse=True)[:MAX_WITNESSES]
        report = cls(
            law=law,
            params=None,
            case=case,
            precision_bits=precision_bits,
            samples=len(witnesses),
            max_abs_err=max_abs,
            max_rel_err=max_rel,
            tolerance=one,
            passed=passed,
            witnesses=[] if passed else worst,
            details=dict(details or {}),
            wall_time_ms=(time.perf_counter() - started) * 1000.0,
        )
        report.log()
        return report

    def log(self) -> None:
        err = mpmath.nstr(self.max_rel_err, 5)
        if self.passed:
            logger.info(f"✅ {self.law} [{self.params or self.case.value}] passed, max_rel_err={err}")
        else:
            worst = self.witnesses[0] if self.witnesses else None
            logger.warning(
                f"❌ {self.law} [{self.params or self.case.value}] failed, max_rel_err={err} "
                f"(tolerance {mpmath.nstr(self.tolerance, 5)}), worst z={worst.z if worst else None}"
            )


def all_passed(reports: Iterable[VerificationReport]) -> bool:
    return all(r.passed for r in reports)
