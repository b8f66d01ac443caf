"""JSON serialization of verification reports and the console summary."""

from __future__ import annotations

import json
import logging
import math
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Optional

import mpmath
from rich.console import Console
from rich.table import Table

from ..core.config import RunConfig
from ..models.params import Params, format_rational
from ..models.report import VerificationReport, Witness

# Set up logging
logger = logging.getLogger(__name__)

# Reports go to stdout; everything human-facing to stderr
console = Console(stderr=True)


def digits_for(precision_bits: int) -> int:
    """Decimal digits carried by a binary precision."""
    return max(15, math.floor(precision_bits * math.log10(2)))


def _number(value: Any, digits: int) -> str:
    return mpmath.nstr(mpmath.mpf(value), digits)


def _complex(value: Any, digits: int) -> list[str]:
    c = mpmath.mpc(value)
    return [_number(c.real, digits), _number(c.imag, digits)]


def _plain(value: Any, digits: int) -> Any:
    """Detail values as JSON-native data; numbers keep their precision as strings."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, mpmath.mpc):
        return _complex(value, digits)
    if isinstance(value, mpmath.mpf):
        return _number(value, digits)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, Params):
        return value.to_dict()
    if isinstance(value, dict):
        return {str(k): _plain(v, digits) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v, digits) for v in value]
    return str(value)


def _witness(w: Witness, digits: int) -> dict[str, Any]:
    return {
        "z": _complex(w.z, digits) if w.z is not None else None,
        "lhs": _complex(w.lhs, digits),
        "rhs": _complex(w.rhs, digits),
    }


def report_document(rep: VerificationReport) -> dict[str, Any]:
    """Ordered mapping of a report; key order is part of the format."""
    digits = digits_for(rep.precision_bits)
    with mpmath.workprec(rep.precision_bits):
        return {
            "law": rep.law,
            "params": rep.params.to_dict() if rep.params is not None else None,
            "case": rep.case.value,
            "precision_bits": rep.precision_bits,
            "samples": rep.samples,
            "max_abs_err": _number(rep.max_abs_err, 6),
            "max_rel_err": _number(rep.max_rel_err, 6),
            "tolerance": _number(rep.tolerance, 6),
            "passed": rep.passed,
            "witnesses": [_witness(w, digits) for w in rep.witnesses],
            "details": _plain(rep.details, digits),
            "wall_time_ms": round(rep.wall_time_ms, 3),
        }


def emit_report(rep: VerificationReport | Iterable[VerificationReport], cfg: RunConfig) -> str:
    """Serialize one report (or a list) and write it to cfg.output_path when set."""
    if isinstance(rep, VerificationReport):
        payload: Any = report_document(rep)
    else:
        payload = [report_document(r) for r in rep]
    text = json.dumps(payload, indent=2, ensure_ascii=False)
    if cfg.output_path is not None:
        _write(cfg.output_path, text)
    return text


def _write(path: Path, text: str) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text + "\n", encoding="utf-8")
        logger.info(f"💾 Report written to {path}")
    except OSError as e:
        logger.error(f"❌ Could not write report to {path}: {e}")
        raise


def print_summary(reports: Iterable[VerificationReport], title: Optional[str] = None) -> None:
    """One row per report on stderr."""
    table = Table(title=title)
    table.add_column("law")
    table.add_column("params")
    table.add_column("case")
    table.add_column("samples", justify="right")
    table.add_column("max_rel_err", justify="right")
    table.add_column("passed")
    table.add_column("ms", justify="right")
    for rep in reports:
        table.add_row(
            rep.law,
            str(rep.params) if rep.params is not None else "-",
            rep.case.value,
            str(rep.samples),
            mpmath.nstr(rep.max_rel_err, 3),
            "[green]yes[/green]" if rep.passed else "[red]NO[/red]",
            f"{rep.wall_time_ms:.1f}",
        )
    console.print(table)
