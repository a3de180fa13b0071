"""
Value types for the IDS signal model and its classification quality.
"""
from pydantic import BaseModel, ConfigDict, Field, model_validator

from honeygame.models.game import AttackerType, Probability


class IdsParameters(BaseModel):
    """Per-type true-positive rates and the false-positive rate of the IDS."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    tpr_soph: Probability
    tpr_naive: Probability
    fpr: Probability

    def tpr(self, attacker_type: AttackerType) -> float:
        if attacker_type is AttackerType.SOPHISTICATED:
            return self.tpr_soph
        return self.tpr_naive

    def signal_model(self) -> "SignalModel":
        """The default appearance model reuses the detection rates."""
        return SignalModel(
            p_suspicious_given_soph=self.tpr_soph,
            p_suspicious_given_naive=self.tpr_naive,
            p_suspicious_given_legit=self.fpr,
        )


class ConfusionCounts(BaseModel):
    """IDS alerts scored against whether an attack was launched."""

    model_config = ConfigDict(frozen=True)

    true_positives: int = Field(default=0, ge=0)
    false_positives: int = Field(default=0, ge=0)
    true_negatives: int = Field(default=0, ge=0)
    false_negatives: int = Field(default=0, ge=0)

    @property
    def total(self) -> int:
        return self.true_positives + self.false_positives + self.true_negatives + self.false_negatives


class SignalModel(BaseModel):
    """Probability that an event of each kind appears suspicious."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    p_suspicious_given_soph: Probability
    p_suspicious_given_naive: Probability
    p_suspicious_given_legit: Probability

    def p_suspicious(self, attacker_type: AttackerType) -> float:
        if attacker_type is AttackerType.SOPHISTICATED:
            return self.p_suspicious_given_soph
        return self.p_suspicious_given_naive


class EventMix(BaseModel):
    """Long-run shares of the four ground-truth event kinds."""

    model_config = ConfigDict(frozen=True)

    legitimate: Probability
    soph_attack: Probability
    naive_attack: Probability
    abstain: Probability = 0.0

    @model_validator(mode="after")
    def check_sum(self) -> "EventMix":
        total = self.legitimate + self.soph_attack + self.naive_attack + self.abstain
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"event mix must sum to 1, got {total}")
        return self

    @property
    def attack(self) -> float:
        return self.soph_attack + self.naive_attack

    @property
    def benign(self) -> float:
        """Events the IDS sees as legitimate traffic (abstainers included)."""
        return self.legitimate + self.abstain
