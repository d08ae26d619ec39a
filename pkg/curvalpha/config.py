"""
Runtime settings for curvalpha
"""

import logging
import os
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from .core import ConfigurationError, as_fraction

logger = logging.getLogger(__name__)

THREADS_ENV = "CURVALPHA_THREADS"


class Settings(BaseModel):
    """Knobs shared by every command"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    threads: int = Field(1, ge=1, description="Worker threads for lattice scans")
    beta_tolerance_exponent: int = Field(18, ge=1, description="Bisection stops when the beta bracket is below 10^-n")
    alpha_digits: int = Field(12, ge=1, description="Significant digits for rendered decimals")
    area: str = Field("1", description="Torus area S as an exact rational")
    seed: int = Field(0, description="Seed for the verification suite")
    cases: int = Field(200, ge=0, description="Random cases per verification check")
    component_bound: int = Field(12, ge=1, description="Bound on random wave-vector components")
    alpha_cap: str = Field("1", description="Upper bound that alpha0 is compared against")

    @field_validator("area", "alpha_cap", mode="before")
    @classmethod
    def _positive_rational(cls, value: Any) -> str:
        try:
            q = as_fraction(str(value))
        except (TypeError, ValueError) as e:
            raise ValueError(f"not an exact rational: {value!r}") from e
        if q <= 0:
            raise ValueError(f"must be positive, got {value!r}")
        return str(value)

    @property
    def beta_tolerance(self) -> Fraction:
        return Fraction(1, 10**self.beta_tolerance_exponent)

    @property
    def area_fraction(self) -> Fraction:
        return as_fraction(self.area)

    @property
    def alpha_cap_fraction(self) -> Fraction:
        return as_fraction(self.alpha_cap)


def _read_yaml(config_path: str) -> Dict[str, Any]:
    path = Path(config_path)
    try:
        with open(path, "r") as f:
            data = yaml.safe_load(f) or {}
    except FileNotFoundError as e:
        raise ConfigurationError(f"Config file not found: {config_path}") from e
    except yaml.YAMLError as e:
        raise ConfigurationError(f"Invalid YAML in {config_path}: {e}") from e
    if not isinstance(data, dict):
        raise ConfigurationError(f"Config file {config_path} must hold a mapping")
    return data


def load_settings(config_path: Optional[str] = None, **overrides: Any) -> Settings:
    """Defaults, then the YAML file, then CURVALPHA_THREADS, then explicit overrides"""
    merged: Dict[str, Any] = {}
    if config_path:
        merged.update(_read_yaml(config_path))
        logger.debug("loaded settings from %s", config_path)

    env_threads = os.environ.get(THREADS_ENV)
    if env_threads:
        try:
            merged["threads"] = int(env_threads)
        except ValueError as e:
            raise ConfigurationError(f"{THREADS_ENV} must be an integer, got {env_threads!r}") from e

    merged.update({key: value for key, value in overrides.items() if value is not None})

    try:
        return Settings(**merged)
    except ValidationError as e:
        raise ConfigurationError(f"Invalid settings: {e}") from e
