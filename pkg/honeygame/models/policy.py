"""
Deployment policies and the defender's per-event observation.
"""
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from honeygame.core.errors import PolicySpecError
from honeygame.models.game import Probability


class PolicyKind(str, Enum):
    FIXED_THRESHOLD = "fixed_threshold"
    VARIABLE = "variable"
    ALWAYS_DEPLOY = "always"
    NEVER_DEPLOY = "never"
    FIXED_BETA = "fixed_beta"


class DeploymentPolicy(BaseModel):
    """
    How the defender turns an IDS alert and an F1 estimate into a deployment.

    f1_window = None tracks F1 over the whole trial so far; an integer keeps
    only the most recent events. VS deploys with probability
    clamp(vs_slope * f1 + vs_intercept).
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: PolicyKind
    threshold: Optional[Probability] = None
    beta: Optional[Probability] = None
    warmup_events: int = Field(default=100, ge=0)
    f1_window: Optional[int] = Field(default=None, ge=1)
    vs_slope: float = 1.0
    vs_intercept: float = 0.0

    @model_validator(mode="after")
    def check_kind_fields(self) -> "DeploymentPolicy":
        if self.kind is PolicyKind.FIXED_THRESHOLD and self.threshold is None:
            raise ValueError("fixed_threshold policy needs a threshold")
        if self.kind is PolicyKind.FIXED_BETA and self.beta is None:
            raise ValueError("fixed_beta policy needs a beta")
        return self

    @property
    def policy_id(self) -> str:
        """Canonical CLI spelling: fs50, vs, always, never, beta:<x>."""
        if self.kind is PolicyKind.FIXED_THRESHOLD:
            return f"fs{round(self.threshold * 100)}"
        if self.kind is PolicyKind.VARIABLE:
            return "vs"
        if self.kind is PolicyKind.FIXED_BETA:
            return f"beta:{self.beta:.10g}"
        return self.kind.value

    @property
    def alert_gated(self) -> bool:
        return self.kind in (PolicyKind.FIXED_THRESHOLD, PolicyKind.VARIABLE)


class DefenderObservation(BaseModel):
    """
    What the defender knows when deciding on one event.

    expected_f1 is the analytic F1 of the configured event mix; it stands in
    for f1_estimate while events_seen < warmup_events.
    """

    model_config = ConfigDict(frozen=True)

    alert: bool
    f1_estimate: Probability
    events_seen: int = Field(ge=0)
    expected_f1: Probability = 0.0


FIXED_THRESHOLD_SPECS = ("fs50", "fs60", "fs70", "fs80", "fs90")
VALID_POLICY_SPECS = (*FIXED_THRESHOLD_SPECS, "vs", "always", "never", "beta:<float>")


def parse_policy(spec: str, **settings) -> DeploymentPolicy:
    """
    Parse a CLI policy spec (case-insensitive). Extra keyword arguments such
    as warmup_events or f1_window are passed through to the policy.
    """
    text = spec.strip().lower()
    if text in FIXED_THRESHOLD_SPECS:
        return DeploymentPolicy(kind=PolicyKind.FIXED_THRESHOLD, threshold=int(text[2:]) / 100, **settings)
    if text == "vs":
        return DeploymentPolicy(kind=PolicyKind.VARIABLE, **settings)
    if text == "always":
        return DeploymentPolicy(kind=PolicyKind.ALWAYS_DEPLOY, **settings)
    if text == "never":
        return DeploymentPolicy(kind=PolicyKind.NEVER_DEPLOY, **settings)
    if text.startswith("beta:"):
        try:
            beta = float(text[len("beta:"):])
        except ValueError:
            beta = None
        if beta is not None and 0.0 <= beta <= 1.0:
            return DeploymentPolicy(kind=PolicyKind.FIXED_BETA, beta=beta, **settings)
    raise PolicySpecError(
        f"invalid policy spec '{spec}'; valid specs: {', '.join(VALID_POLICY_SPECS)}"
    )
