"""
Configuration

Process-wide defaults come from `Settings` (environment variables prefixed
SYMDYN_ and an optional .env file). A run is described by `RunConfig`,
assembled from the defaults, an optional key=value config file and the
command-line flags, in that order of precedence.
"""

import logging
from pathlib import Path
from typing import Any, Dict, List, Literal, Mapping, Optional

from dotenv import dotenv_values
from pydantic import BaseModel, ValidationError, field_validator
from pydantic_settings import BaseSettings

from .errors import InvalidInputError, ResolutionExceededError
from .hyperspace.invariant import SearchLimits
from .storage.models import VietorisBasic

logger = logging.getLogger(__name__)


class Settings(BaseSettings):
    """Toolkit defaults"""

    log_level: str = "INFO"
    depth: int = 32
    cylinder_depth: int = 3
    horizon: int = 8
    m_max: int = 24
    p_max: int = 6
    substitution_step_cap: int = 40
    substitution_max_length: int = 2 ** 22
    subset_search_cap: int = 20
    recurrence_max: int = 64
    orbit_prefix_length: int = 16384
    bbar_blocks: int = 480
    periodic_search_max: int = 8

    class Config:
        env_file = ".env"
        env_prefix = "SYMDYN_"
        extra = "ignore"


_POSITIVE = (
    "depth",
    "j",
    "horizon",
    "m_max",
    "p_max",
    "k_max",
    "steps",
    "step_cap",
    "max_length",
    "subset_search_cap",
    "recurrence_max",
    "orbit_prefix_length",
    "bbar_blocks",
    "periodic_search_max",
)

_BOOLEANS = {"1": True, "true": True, "yes": True, "on": True, "0": False, "false": False, "no": False, "off": False}


class RunConfig(BaseModel):
    """Parameters of a single command run"""

    spec: str
    depth: int = 32
    j: int = 3
    horizon: int = 8
    m_max: int = 24
    p_max: int = 6
    out: Optional[str] = None
    format: Literal["json", "text"] = "json"
    reproducible: bool = False
    log_level: str = "INFO"

    # per-check inputs
    u: Optional[str] = None
    v: Optional[str] = None
    u2: Optional[str] = None
    v2: Optional[str] = None
    cylinder: Optional[str] = None
    k_max: Optional[int] = None
    steps: Optional[int] = None
    a: Optional[str] = None
    b: Optional[str] = None

    # search bounds
    step_cap: int = 40
    max_length: int = 2 ** 22
    subset_search_cap: int = 20
    recurrence_max: int = 64
    orbit_prefix_length: int = 16384
    bbar_blocks: int = 480
    periodic_search_max: int = 8

    @field_validator(*_POSITIVE)
    @classmethod
    def _positive(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value < 1:
            raise ValueError(f"must be positive, got {value}")
        return value

    @field_validator("spec")
    @classmethod
    def _spec_present(cls, value: str) -> str:
        if not value.strip():
            raise ValueError("spec text is empty")
        return value.strip()

    @classmethod
    def build(cls, values: Mapping[str, Any], settings: Optional[Settings] = None) -> "RunConfig":
        """Merge Settings defaults with explicit values; validation errors become input errors"""
        merged = defaults_from(settings or Settings())
        merged.update({key: value for key, value in values.items() if value is not None})
        if "spec" not in merged:
            raise InvalidInputError("no spec given (use --spec or a config file)")
        try:
            return cls(**merged)
        except ValidationError as exc:
            error = exc.errors()[0]
            field = ".".join(str(part) for part in error["loc"])
            raise InvalidInputError(f"invalid {field}: {error['msg']}") from None

    def require_base_resolution(self) -> None:
        if self.depth < self.j + self.horizon:
            raise ResolutionExceededError(
                f"base checks need depth >= j + horizon = {self.j + self.horizon}", self.j + self.horizon, self.depth
            )

    def search_limits(self) -> SearchLimits:
        return SearchLimits(
            periodic_search_max=self.periodic_search_max,
            subset_search_cap=self.subset_search_cap,
            recurrence_max=self.recurrence_max,
            orbit_prefix_length=self.orbit_prefix_length,
            bbar_blocks=self.bbar_blocks,
            horizon=self.horizon,
        )

    def word_list(self, name: str) -> List[str]:
        """Comma-separated words of a per-check input"""
        value = getattr(self, name)
        if value is None:
            raise InvalidInputError(f"--{name} is required for this check")
        return [w.strip() for w in value.split(",")]

    def basic_set(self, name: str) -> VietorisBasic:
        return VietorisBasic(cylinders=tuple(self.word_list(name)))


def defaults_from(settings: Settings) -> Dict[str, Any]:
    return {
        "depth": settings.depth,
        "j": settings.cylinder_depth,
        "horizon": settings.horizon,
        "m_max": settings.m_max,
        "p_max": settings.p_max,
        "log_level": settings.log_level,
        "step_cap": settings.substitution_step_cap,
        "max_length": settings.substitution_max_length,
        "subset_search_cap": settings.subset_search_cap,
        "recurrence_max": settings.recurrence_max,
        "orbit_prefix_length": settings.orbit_prefix_length,
        "bbar_blocks": settings.bbar_blocks,
        "periodic_search_max": settings.periodic_search_max,
    }


def read_config_file(path: str) -> Dict[str, Any]:
    """
    Read key=value lines; keys mirror the long flag names

    Raises:
        InvalidInputError: missing file, unknown key or bad boolean
    """
    if not Path(path).is_file():
        raise InvalidInputError(f"config file not found: {path}")
    values: Dict[str, Any] = {}
    for raw_key, raw_value in dotenv_values(path).items():
        key = raw_key.strip().lower().replace("-", "_")
        if key not in RunConfig.model_fields:
            raise InvalidInputError(f"unknown config key '{raw_key}' in {path}")
        if raw_value is None:
            continue
        if key == "reproducible":
            flag = _BOOLEANS.get(raw_value.strip().lower())
            if flag is None:
                raise InvalidInputError(f"reproducible must be a boolean, got {raw_value!r}")
            values[key] = flag
        else:
            values[key] = raw_value.strip()
    logger.debug(f"Read {len(values)} settings from {path}")
    return values
