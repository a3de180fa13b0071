"""
Trial configuration, simulated events and trial/Monte Carlo results.
"""
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from honeygame.models.game import AttackerType, Probability
from honeygame.models.ids import ConfusionCounts, EventMix

MAX_SEED = 2**64 - 1


class TrialConfig(BaseModel):
    """One simulated day: how many events and what share of them are attackers."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    n_events: int = Field(default=10_000, ge=1)
    attack_rate: Probability = 0.1
    p_soph: Probability = 0.4
    p_attack_soph: Probability = 0.5
    p_attack_naive: Probability = 0.9
    seed: int = Field(default=0, ge=0, le=MAX_SEED)

    def p_attack(self, attacker_type: AttackerType) -> float:
        if attacker_type is AttackerType.SOPHISTICATED:
            return self.p_attack_soph
        return self.p_attack_naive

    def event_mix(self) -> EventMix:
        r, p = self.attack_rate, self.p_soph
        soph_attack = r * p * self.p_attack_soph
        naive_attack = r * (1.0 - p) * self.p_attack_naive
        return EventMix(
            legitimate=1.0 - r,
            soph_attack=soph_attack,
            naive_attack=naive_attack,
            abstain=max(0.0, r - soph_attack - naive_attack),
        )


class GroundTruth(str, Enum):
    """What actually happened on an event, as seen by the IDS scorer."""

    LEGITIMATE = "legitimate"
    SOPH_ATTACK = "soph_attack"
    NAIVE_ATTACK = "naive_attack"
    ABSTAINED = "abstained"


class Event(BaseModel):
    """
    A network event. attacker_type None means legitimate traffic; an attacker
    who is present but did not attack has attacked = False.
    """

    model_config = ConfigDict(frozen=True)

    attacker_type: Optional[AttackerType] = None
    attacked: bool = False

    @model_validator(mode="after")
    def check_attack(self) -> "Event":
        if self.attacked and self.attacker_type is None:
            raise ValueError("a legitimate event cannot carry an attack")
        return self

    @classmethod
    def legitimate(cls) -> "Event":
        return cls()

    @property
    def is_legitimate(self) -> bool:
        return self.attacker_type is None

    @property
    def ground_truth(self) -> GroundTruth:
        if self.attacker_type is None:
            return GroundTruth.LEGITIMATE
        if not self.attacked:
            return GroundTruth.ABSTAINED
        if self.attacker_type is AttackerType.SOPHISTICATED:
            return GroundTruth.SOPH_ATTACK
        return GroundTruth.NAIVE_ATTACK


class EventOutcome(BaseModel):
    model_config = ConfigDict(frozen=True)

    event: Event
    alert: bool
    deployed: bool
    detected: bool
    utility: float

    @model_validator(mode="after")
    def check_detection(self) -> "EventOutcome":
        if self.detected and not (self.deployed and self.event.attacked):
            raise ValueError("detection requires a deployed honeypot and an attack")
        return self


class TrialResult(BaseModel):
    """Aggregates of one trial; average_utility is total_utility / n_events."""

    model_config = ConfigDict(frozen=True)

    trial_index: int = 0
    seed: int
    n_events: int
    average_utility: float
    total_utility: float
    confusion: ConfusionCounts
    deployments: int
    detections: int
    successful_attacks: int
    false_positive_deployments: int
    final_f1: float
    event_digest: str

    @model_validator(mode="after")
    def check_accounting(self) -> "TrialResult":
        if self.detections + self.false_positive_deployments > self.deployments:
            raise ValueError("detections and false-positive deployments exceed deployments")
        return self


class MonteCarloSummary(BaseModel):
    model_config = ConfigDict(frozen=True)

    n_trials: int
    mean_utility: float
    std_error: float = Field(ge=0.0)
    per_trial: list[TrialResult]

    def total(self, field: str) -> int:
        """Sum an integer outcome tally (deployments, detections, ...) over trials."""
        return sum(getattr(trial, field) for trial in self.per_trial)
