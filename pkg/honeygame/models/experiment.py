"""
Experiment specifications and results.
"""
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from honeygame.core.errors import ConfigError, ExperimentSpecError
from honeygame.models.game import GameParameters
from honeygame.models.ids import IdsParameters
from honeygame.models.policy import DeploymentPolicy
from honeygame.models.trial import TrialConfig


class ExperimentId(str, Enum):
    FP_PENALTY = "fp-penalty"
    COST_PENALTY = "cost-penalty"
    ATTACK_RATE = "attack-rate"


class Scenario(BaseModel):
    """The base configuration a sweep perturbs."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    trial: TrialConfig
    game: GameParameters
    ids: IdsParameters

    def with_overrides(self, overrides: dict[str, float]) -> "Scenario":
        """Apply dotted overrides such as ``{"game.cost_honeypot": 4.0}``."""
        data = self.model_dump()
        for key, value in overrides.items():
            section, _, field = key.partition(".")
            if section not in data or field not in data[section]:
                raise ExperimentSpecError(f"unknown sweep parameter '{key}'")
            data[section][field] = value
        try:
            return Scenario(**data)
        except ValidationError as e:
            raise ConfigError(f"sweep point {overrides} is invalid: {e.errors()[0]['msg']}") from e


class ExperimentSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: ExperimentId
    policies: list[DeploymentPolicy] = Field(min_length=1)
    sweep_grid: list[dict[str, float]] = Field(min_length=1)
    replications: int = Field(ge=1)
    base: Scenario


class ExperimentOverrides(BaseModel):
    """Optional experiment settings in a run config."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    grid: Optional[list[float]] = None
    replications: Optional[int] = Field(default=None, ge=1)
    include_equilibrium: bool = False


class ExperimentRow(BaseModel):
    """
    One (policy, grid point) cell. Field order is the CSV column order.

    trial_totals and event_digests are kept per replication for pairing and
    monotonicity checks; they are not exported.
    """

    model_config = ConfigDict(frozen=True)

    experiment: str
    policy: str
    param_overrides: dict[str, float]
    mean_utility: float
    std_error: float = Field(ge=0.0)
    replications: int
    seed: int
    trial_totals: list[float] = Field(default_factory=list, exclude=True)
    event_digests: list[str] = Field(default_factory=list, exclude=True)


class Provenance(BaseModel):
    model_config = ConfigDict(frozen=True)

    config_hash: str
    base_seed: int
    artifact_version: str


class ExperimentResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    experiment: ExperimentId
    sweep_keys: list[str]
    rows: list[ExperimentRow]
    provenance: Provenance

    @model_validator(mode="after")
    def check_rows(self) -> "ExperimentResult":
        seen = set()
        for row in self.rows:
            key = (row.policy, tuple(sorted(row.param_overrides.items())))
            if key in seen:
                raise ValueError(f"duplicate row for {key}")
            seen.add(key)
        return self

    def rows_for(self, policy: str) -> list[ExperimentRow]:
        return [row for row in self.rows if row.policy == policy]

    def best_by_grid_point(self) -> list[tuple[dict[str, float], str, float]]:
        """Highest-mean policy for every grid point, in grid order."""
        best: dict[tuple, ExperimentRow] = {}
        for row in self.rows:
            key = tuple(sorted(row.param_overrides.items()))
            if key not in best or row.mean_utility > best[key].mean_utility:
                best[key] = row
        return [(row.param_overrides, row.policy, row.mean_utility) for row in best.values()]
