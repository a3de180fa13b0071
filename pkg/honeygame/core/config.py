# handles ambient settings and the JSON run config
import json
import logging
import os
from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from honeygame.core.errors import ConfigError
from honeygame.models.experiment import ExperimentOverrides
from honeygame.models.game import GameParameters
from honeygame.models.ids import IdsParameters
from honeygame.models.policy import DeploymentPolicy, parse_policy
from honeygame.models.trial import MAX_SEED, TrialConfig

# Determine the environment ('dev', 'prod', etc.). Defaults to 'local' if ENV is not set.
ENV = os.getenv("ENV", "local")

PROJECT_ROOT = Path(__file__).resolve().parents[2]


class Settings(BaseSettings):
    """Ambient settings, read from HONEYGAME_* environment variables or a .env file."""

    model_config = SettingsConfigDict(env_prefix="HONEYGAME_", env_file=".env", extra="ignore")

    PROJECT_NAME: str = "honeygame"

    # Solver tolerances
    SOLVER_EPSILON: float = Field(default=1e-9, gt=0.0)
    VERIFY_EPSILON: float = Field(default=1e-6, gt=0.0)
    VERIFY_GRID: int = Field(default=1001, ge=101)

    DEFAULT_CONFIG_PATH: str = "canonical.json"
    OUT_DIR: str = "results"
    JOBS: int = Field(default=1, ge=1)

    # Overrides the ENV-derived level when set (DEBUG, INFO, ...)
    LOG_LEVEL: str = ""

    @field_validator("LOG_LEVEL", mode="before")
    @classmethod
    def normalise_log_level(cls, v: Any) -> Any:
        return v.strip().upper() if isinstance(v, str) else v

    @model_validator(mode="after")
    def check_tolerances(self) -> "Settings":
        if self.VERIFY_EPSILON < self.SOLVER_EPSILON:
            raise ValueError("VERIFY_EPSILON must not be smaller than SOLVER_EPSILON")
        return self


settings = Settings()


class StrategySettings(BaseModel):
    """Knobs shared by every policy parsed from a spec string."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    warmup_events: int = Field(default=100, ge=0)
    f1_window: Optional[int] = Field(default=None, ge=1)
    vs_slope: float = 1.0
    vs_intercept: float = 0.0


class RunConfig(BaseModel):
    """
    Everything one CLI invocation needs. The top-level seed is authoritative
    and is copied into trial.seed.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    game: GameParameters
    ids: IdsParameters
    trial: TrialConfig = TrialConfig()
    strategy: StrategySettings = StrategySettings()
    policies: list[str] = Field(default_factory=lambda: ["fs50", "fs60", "fs70", "fs80", "fs90", "vs"])
    experiment: Optional[ExperimentOverrides] = None
    out_dir: str = Field(default_factory=lambda: settings.OUT_DIR)
    seed: int = Field(default=0, ge=0, le=MAX_SEED)

    @model_validator(mode="before")
    @classmethod
    def sync_seed(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        data = dict(data)
        trial = dict(data.get("trial") or {})
        if "seed" not in data and "seed" in trial:
            data["seed"] = trial["seed"]
        trial["seed"] = data.get("seed", 0)
        data["trial"] = trial
        return data

    @field_validator("policies", mode="before")
    @classmethod
    def split_policies(cls, v: Any) -> Any:
        if isinstance(v, str):
            return [item.strip() for item in v.split(",") if item.strip()]
        return v

    @field_validator("policies")
    @classmethod
    def check_policies(cls, v: list[str]) -> list[str]:
        # raises PolicySpecError (a ValueError) naming the valid specs
        return [parse_policy(spec).policy_id for spec in v]

    @model_validator(mode="after")
    def check_prior(self) -> "RunConfig":
        if abs(self.game.prior_soph - self.trial.p_soph) > 1e-12:
            logging.getLogger("honeygame.config").warning(
                f"game.prior_soph={self.game.prior_soph} differs from trial.p_soph={self.trial.p_soph}"
            )
        return self

    def deployment_policies(self, specs: Optional[list[str]] = None) -> list[DeploymentPolicy]:
        knobs = self.strategy.model_dump()
        return [parse_policy(spec, **knobs) for spec in (specs or self.policies)]


# ============================================================================
# Loading
# ============================================================================

def format_validation_error(error: ValidationError) -> str:
    """One line per problem, each naming the dotted field path."""
    lines = []
    for item in error.errors():
        path = ".".join(str(part) for part in item["loc"]) or "<root>"
        lines.append(f"{path}: {item['msg']}")
    return "; ".join(lines)


def normalise_key(key: str) -> str:
    """--game.cost-honeypot and game.cost_honeypot name the same field."""
    return key.strip().lstrip("-").replace("-", "_")


def apply_overrides(data: dict, overrides: dict[str, Any]) -> dict:
    """Return a copy of the raw config document with dotted-path overrides applied."""
    data = json.loads(json.dumps(data))
    for dotted, value in overrides.items():
        parts = normalise_key(dotted).split(".")
        node = data
        for part in parts[:-1]:
            child = node.get(part)
            if child is None:
                child = node[part] = {}
            elif not isinstance(child, dict):
                raise ConfigError(f"{dotted}: '{part}' is not a section")
            node = child
        if isinstance(value, str) and parts[-1] in ("policies", "grid"):
            value = [item.strip() for item in value.split(",") if item.strip()]
        node[parts[-1]] = value
    return data


def resolve_config_path(path: Optional[str]) -> Path:
    candidate = Path(path or settings.DEFAULT_CONFIG_PATH)
    if candidate.exists() or path:
        return candidate
    # fall back to the canonical config shipped at the repository root
    return PROJECT_ROOT / candidate.name


def load_run_config(path: Optional[str] = None, overrides: Optional[dict[str, Any]] = None) -> RunConfig:
    """Read a JSON run config, apply dotted overrides and validate it."""
    config_path = resolve_config_path(path)
    try:
        with open(config_path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except FileNotFoundError as e:
        raise ConfigError(f"config file not found: {config_path}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"{config_path} is not valid JSON: {e}") from e

    if not isinstance(data, dict):
        raise ConfigError(f"{config_path}: top level must be a JSON object")

    data = apply_overrides(data, overrides or {})
    try:
        return RunConfig(**data)
    except ValidationError as e:
        raise ConfigError(format_validation_error(e)) from e
