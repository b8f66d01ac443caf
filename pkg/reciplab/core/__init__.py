"""Core configuration and error types."""

from .config import RunConfig, get_run_config, reset_run_config
from .exceptions import (
    InadmissibleTriple,
    IntegerArgument,
    InvalidParams,
    NoConvergence,
    NotApplicable,
    NotCoprime,
    NotMultiplicityFree,
    ParityMismatch,
    PoleProximity,
    PreconditionError,
    ReciplabError,
)

__all__ = [
    "RunConfig",
    "get_run_config",
    "reset_run_config",
    "ReciplabError",
    "PreconditionError",
    "InvalidParams",
    "PoleProximity",
    "IntegerArgument",
    "NotCoprime",
    "NotMultiplicityFree",
    "ParityMismatch",
    "InadmissibleTriple",
    "NotApplicable",
    "NoConvergence",
]
