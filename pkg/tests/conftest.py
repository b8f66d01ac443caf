"""Pytest configuration and shared fixtures."""

import logging
import tempfile
from fractions import Fraction
from typing import Generator

import mpmath
import pytest

from reciplab.core.config import RunConfig, reset_run_config
from reciplab.models.params import Params, SamplePolicy
from reciplab.services.identity_engine import IdentityEngine

PRECISION = 256


@pytest.fixture
def temp_dir() -> Generator[str, None, None]:
    """Create a temporary directory for tests."""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield tmpdir


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch: pytest.MonkeyPatch) -> Generator[None, None, None]:
    """No RECIPLAB_* variables leak in, and the cached run config is rebuilt per test."""
    for key in (
        "RECIPLAB_PRECISION",
        "RECIPLAB_SEED",
        "RECIPLAB_SAMPLES",
        "RECIPLAB_TOLERANCE_EXPONENT",
        "RECIPLAB_LOG_LEVEL",
        "RECIPLAB_LOG_FILE",
    ):
        monkeypatch.delenv(key, raising=False)
    reset_run_config()
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)
    reset_run_config()


@pytest.fixture
def precision() -> Generator[int, None, None]:
    """Run the test body at the working precision used throughout the suite."""
    with mpmath.workprec(PRECISION):
        yield PRECISION


@pytest.fixture
def run_config() -> RunConfig:
    return RunConfig()


@pytest.fixture
def engine() -> IdentityEngine:
    return IdentityEngine(PRECISION)


@pytest.fixture
def sample_policy() -> SamplePolicy:
    return SamplePolicy(count=6, seed=7)


@pytest.fixture
def cot_pair() -> Params:
    """Two cotangents, a = (2, 3), w = 0."""
    return Params(a=(2, 3), m=(1, 1), w=(Fraction(0), Fraction(0)), j=(2, 0))


@pytest.fixture
def unit_triple() -> Params:
    """a = (1, 1, 1), m = 1: the triple pole at the origin."""
    return Params(a=(1, 1, 1), m=(1, 1, 1), w=(Fraction(0),) * 3, j=(3, 0))


@pytest.fixture
def mixed_params() -> Params:
    """One cotangent and one cosecant with shifts and higher orders (case II)."""
    return Params(a=(2, 3), m=(2, 1), w=(Fraction(1, 3), Fraction(1, 4)), j=(1, 1))
