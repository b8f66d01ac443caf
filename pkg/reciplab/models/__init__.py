"""Data carriers shared by the services and the CLI."""

from .params import CaseTag, Kind, Params, PoleDatum, SamplePolicy, format_rational, parse_rational
from .report import VerificationReport, Witness, all_passed

__all__ = [
    "CaseTag",
    "Kind",
    "Params",
    "PoleDatum",
    "SamplePolicy",
    "VerificationReport",
    "Witness",
    "all_passed",
    "format_rational",
    "parse_rational",
]
