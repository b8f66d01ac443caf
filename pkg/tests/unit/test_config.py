from pathlib import Path

import pytest
from pydantic import ValidationError

from reciplab.core.config import DEFAULT_PRECISION, DEFAULT_SEED, RunConfig, get_run_config, reset_run_config
from reciplab.core.exceptions import InvalidParams, NoConvergence, PreconditionError, ReciplabError

pytestmark = pytest.mark.unit


def test_defaults() -> None:
    cfg = RunConfig()
    assert cfg.precision_bits == DEFAULT_PRECISION
    assert cfg.seed == DEFAULT_SEED
    assert cfg.samples == 20
    assert cfg.tolerance_bits == DEFAULT_PRECISION // 2
    assert cfg.output_path is None


def test_validation() -> None:
    with pytest.raises(ValidationError):
        RunConfig(precision_bits=52)
    with pytest.raises(ValidationError):
        RunConfig(precision_bits=64, tolerance_exponent=65)
    with pytest.raises(ValidationError):
        RunConfig(seed=-1)
    with pytest.raises(ValidationError):
        RunConfig(samples=0)


def test_frozen() -> None:
    cfg = RunConfig()
    with pytest.raises(ValidationError):
        cfg.samples = 3  # type: ignore[misc]


def test_overrides_follow_precision() -> None:
    cfg = RunConfig().with_overrides(precision_bits=512, seed=None, output_path=Path("out.json"))
    assert cfg.precision_bits == 512
    assert cfg.tolerance_bits == 256
    assert cfg.seed == DEFAULT_SEED
    assert cfg.output_path == Path("out.json")

    pinned = RunConfig().with_overrides(precision_bits=512, tolerance_exponent=300)
    assert pinned.tolerance_bits == 300


def test_environment_overrides(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("RECIPLAB_PRECISION", "128")
    monkeypatch.setenv("RECIPLAB_SAMPLES", "4")
    reset_run_config()
    cfg = get_run_config()
    assert cfg.precision_bits == 128
    assert cfg.samples == 4
    assert cfg.tolerance_bits == 64
    assert get_run_config() is cfg


def test_environment_is_validated(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("RECIPLAB_PRECISION", "16")
    reset_run_config()
    with pytest.raises(ValidationError):
        get_run_config()


def test_error_hierarchy() -> None:
    assert issubclass(InvalidParams, PreconditionError)
    assert issubclass(PreconditionError, ValueError)
    assert issubclass(NoConvergence, ReciplabError)
    assert issubclass(NoConvergence, ArithmeticError)
    assert not issubclass(NoConvergence, PreconditionError)
