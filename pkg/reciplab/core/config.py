"""Run configuration: precision, seed, sampling and output settings."""

import logging
import os
from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

# Set up logging
logger = logging.getLogger(__name__)

# Secure environment loading
try:
    from dotenv import load_dotenv

    # Load .env from project root (2 levels up from this file)
    project_root = Path(__file__).parent.parent.parent
    env_path = project_root / ".env"
    if env_path.exists():
        load_dotenv(env_path, override=False)  # Don't override existing env vars
        logger.info(f"✅ Loaded environment from {env_path}")
    else:
        logger.debug("ℹ️ No .env file found, using system environment variables")
except ImportError:
    logger.warning("⚠️ python-dotenv not available, using system environment variables only")


DEFAULT_PRECISION = 256
DEFAULT_SEED = 20240917
DEFAULT_SAMPLES = 20

_ENV_KEYS = {
    "precision_bits": "RECIPLAB_PRECISION",
    "seed": "RECIPLAB_SEED",
    "samples": "RECIPLAB_SAMPLES",
    "tolerance_exponent": "RECIPLAB_TOLERANCE_EXPONENT",
}


class RunConfig(BaseModel):
    """Settings shared by every verifier run."""

    model_config = ConfigDict(frozen=True)

    precision_bits: int = Field(default=DEFAULT_PRECISION, ge=53)
    seed: int = Field(default=DEFAULT_SEED, ge=0, lt=2**64)
    samples: int = Field(default=DEFAULT_SAMPLES, ge=1)
    tolerance_exponent: Optional[int] = Field(default=None, ge=1)
    output_path: Optional[Path] = None

    @model_validator(mode="after")
    def _default_tolerance(self) -> "RunConfig":
        if self.tolerance_exponent is None:
            # default: half the working precision
            object.__setattr__(self, "tolerance_exponent", self.precision_bits // 2)
        elif self.tolerance_exponent > self.precision_bits:
            raise ValueError(
                f"tolerance_exponent {self.tolerance_exponent} exceeds precision_bits {self.precision_bits}"
            )
        return self

    @property
    def tolerance_bits(self) -> int:
        assert self.tolerance_exponent is not None
        return self.tolerance_exponent

    def with_overrides(self, **overrides: Any) -> "RunConfig":
        """Return a validated copy with the non-None overrides applied."""
        data = self.model_dump()
        changed = {key: value for key, value in overrides.items() if value is not None}
        if "precision_bits" in changed and "tolerance_exponent" not in changed:
            # tolerance follows precision unless pinned explicitly
            if os.getenv(_ENV_KEYS["tolerance_exponent"]) is None:
                data["tolerance_exponent"] = None
        data.update(changed)
        return RunConfig.model_validate(data)


def _env_values() -> dict[str, Any]:
    values: dict[str, Any] = {}
    for field, key in _ENV_KEYS.items():
        raw = os.getenv(key)
        if raw is not None and raw.strip():
            values[field] = int(raw)
            logger.info(f"🔧 {key}={raw} overrides {field}")
    return values


# Global config instance
_config_instance: Optional[RunConfig] = None


def get_run_config() -> RunConfig:
    """Get or create the global run config instance."""
    global _config_instance
    if _config_instance is None:
        logger.info("🏭 Creating run config instance")
        _config_instance = RunConfig.model_validate(_env_values())
    return _config_instance


def reset_run_config() -> None:
    """Drop the cached instance so the next call re-reads the environment."""
    global _config_instance
    _config_instance = None
