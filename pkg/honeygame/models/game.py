"""
Value types of the defender/attacker Bayesian game.

Every model is frozen: solver results and parameters can be shared between
threads and worker processes without copying.
"""
from enum import Enum
from typing import Annotated, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

Probability = Annotated[float, Field(ge=0.0, le=1.0)]


class AttackerType(str, Enum):
    SOPHISTICATED = "sophisticated"
    NAIVE = "naive"


class DefenderAction(str, Enum):
    DEPLOY = "deploy"
    NOT_DEPLOY = "not_deploy"


class AttackerAction(str, Enum):
    ATTACK = "attack"
    ABSTAIN = "abstain"


class Signal(str, Enum):
    """What the IDS makes an event look like to the defender."""

    APPEARS_SUSPICIOUS = "appears_suspicious"
    APPEARS_NORMAL = "appears_normal"


class EquilibriumKind(str, Enum):
    PURE = "pure"
    FULLY_MIXED = "fully_mixed"
    PARTIALLY_MIXED = "partially_mixed"
    CONTINUUM = "continuum"


class GameParameters(BaseModel):
    """
    Costs, benefits and type prior of the game, in utility units.

    The attacker-side values (benefit_attacker_*, cost_detected_*) are chosen
    defaults in canonical.json rather than measured figures.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    cost_honeypot: float = Field(ge=0.0)
    cost_attack_soph: float = Field(ge=0.0)
    cost_attack_naive: float = Field(ge=0.0)
    benefit_attacker_soph: float = Field(ge=0.0)
    benefit_attacker_naive: float = Field(ge=0.0)
    cost_detected_soph: float = Field(ge=0.0)
    cost_detected_naive: float = Field(ge=0.0)
    benefit_detect_soph: float = Field(ge=0.0)
    benefit_detect_naive: float = Field(ge=0.0)
    penalty_false_positive: float = Field(ge=0.0)
    prior_soph: Probability

    # Per-type lookups. Each one is total over AttackerType.

    def prior(self, attacker_type: AttackerType) -> float:
        if attacker_type is AttackerType.SOPHISTICATED:
            return self.prior_soph
        return 1.0 - self.prior_soph

    def attack_cost(self, attacker_type: AttackerType) -> float:
        """C_a: defender's loss from an unguarded attack."""
        if attacker_type is AttackerType.SOPHISTICATED:
            return self.cost_attack_soph
        return self.cost_attack_naive

    def attacker_benefit(self, attacker_type: AttackerType) -> float:
        if attacker_type is AttackerType.SOPHISTICATED:
            return self.benefit_attacker_soph
        return self.benefit_attacker_naive

    def detection_cost(self, attacker_type: AttackerType) -> float:
        """C_d: attacker's loss when caught by a honeypot."""
        if attacker_type is AttackerType.SOPHISTICATED:
            return self.cost_detected_soph
        return self.cost_detected_naive

    def detect_benefit(self, attacker_type: AttackerType) -> float:
        if attacker_type is AttackerType.SOPHISTICATED:
            return self.benefit_detect_soph
        return self.benefit_detect_naive

    def deploy_weight(self, attacker_type: AttackerType) -> float:
        """Coefficient of alpha_theta in the defender's gain from deploying."""
        return self.prior(attacker_type) * (
            self.detect_benefit(attacker_type) + self.attack_cost(attacker_type)
        )

    def scaled(self, factor: float) -> "GameParameters":
        """Copy with every utility-unit field multiplied by ``factor``."""
        data = self.model_dump()
        for key in data:
            if key != "prior_soph":
                data[key] *= factor
        return GameParameters(**data)


class PayoffPair(BaseModel):
    model_config = ConfigDict(frozen=True)

    defender: float
    attacker: float


class StrategyProfile(BaseModel):
    """beta: defender deploys; alpha_*: attacker of that type attacks."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    beta: Probability
    alpha_soph: Probability
    alpha_naive: Probability

    def alpha(self, attacker_type: AttackerType) -> float:
        if attacker_type is AttackerType.SOPHISTICATED:
            return self.alpha_soph
        return self.alpha_naive

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.beta, self.alpha_soph, self.alpha_naive)

    @property
    def is_pure(self) -> bool:
        return all(value in (0.0, 1.0) for value in self.as_tuple())


class ResponseSet(BaseModel):
    """Closed interval of best-responding probabilities."""

    model_config = ConfigDict(frozen=True)

    low: Probability
    high: Probability

    @model_validator(mode="after")
    def check_order(self) -> "ResponseSet":
        if self.low > self.high:
            raise ValueError("low must not exceed high")
        return self

    @classmethod
    def point(cls, value: float) -> "ResponseSet":
        return cls(low=value, high=value)

    @classmethod
    def indifferent(cls) -> "ResponseSet":
        return cls(low=0.0, high=1.0)

    @property
    def is_pure(self) -> bool:
        return self.low == self.high

    @property
    def value(self) -> Optional[float]:
        return self.low if self.is_pure else None

    def contains(self, x: float, tol: float = 0.0) -> bool:
        return self.low - tol <= x <= self.high + tol


class ContinuumRecord(BaseModel):
    """
    A connected set of equilibria.

    Attack probabilities range over the box given by the bounds, restricted by

        coef_soph * alpha_soph + coef_naive * alpha_naive  (relation)  rhs

    ``eq`` is the defender's indifference line (both attacker types indifferent
    at the same beta). ``le``/``ge`` appear when an attacker type is indifferent
    at beta = 0 or beta = 1, where the defender only needs a weak preference.

    With ``beta_bounds`` set the attack probabilities are a single pure point
    and beta ranges over the interval instead; ``beta`` is its lower end.
    """

    model_config = ConfigDict(frozen=True)

    beta: Probability
    coef_soph: float
    coef_naive: float
    rhs: float
    relation: Literal["eq", "le", "ge"]
    alpha_soph_bounds: tuple[float, float] = (0.0, 1.0)
    alpha_naive_bounds: tuple[float, float] = (0.0, 1.0)
    beta_bounds: Optional[tuple[float, float]] = None

    @model_validator(mode="after")
    def check_beta_bounds(self) -> "ContinuumRecord":
        if self.beta_bounds is None:
            return self
        low, high = self.beta_bounds
        if not 0.0 <= low <= high <= 1.0 or low != self.beta:
            raise ValueError("beta_bounds must be an interval in [0, 1] starting at beta")
        if self.alpha_soph_bounds[0] != self.alpha_soph_bounds[1] or self.alpha_naive_bounds[0] != self.alpha_naive_bounds[1]:
            raise ValueError("a beta interval needs fixed attack probabilities")
        return self

    @property
    def beta_range(self) -> tuple[float, float]:
        return self.beta_bounds if self.beta_bounds is not None else (self.beta, self.beta)

    def _slack(self, alpha_soph, alpha_naive):
        return self.coef_soph * alpha_soph + self.coef_naive * alpha_naive - self.rhs

    def covers(self, beta: float, alpha_soph: float, alpha_naive: float, tol: float = 1e-9) -> bool:
        """Membership of a full (beta, alpha_S, alpha_N) profile."""
        low, high = self.beta_range
        return low - tol <= beta <= high + tol and self.contains(alpha_soph, alpha_naive, tol=tol)

    def contains(self, alpha_soph: float, alpha_naive: float, tol: float = 1e-9) -> bool:
        (s_lo, s_hi), (n_lo, n_hi) = self.alpha_soph_bounds, self.alpha_naive_bounds
        if not (s_lo - tol <= alpha_soph <= s_hi + tol and n_lo - tol <= alpha_naive <= n_hi + tol):
            return False
        slack = self._slack(alpha_soph, alpha_naive)
        if self.relation == "eq":
            return abs(slack) <= tol
        if self.relation == "le":
            return slack <= tol
        return slack >= -tol

    def vertices(self, tol: float = 1e-12) -> list[tuple[float, float]]:
        """Corners of the (convex) set, ordered by (alpha_soph, alpha_naive)."""
        (s_lo, s_hi), (n_lo, n_hi) = self.alpha_soph_bounds, self.alpha_naive_bounds
        if self.beta_bounds is not None:
            return [(s_lo, n_lo)]
        corners = [(s_lo, n_lo), (s_hi, n_lo), (s_hi, n_hi), (s_lo, n_hi)]
        points = [c for c in corners if self.contains(*c, tol=tol)]

        # Crossings of the boundary line with the box edges.
        if self.coef_naive != 0.0:
            for s in (s_lo, s_hi):
                n = (self.rhs - self.coef_soph * s) / self.coef_naive
                if n_lo - tol <= n <= n_hi + tol:
                    points.append((s, float(np.clip(n, n_lo, n_hi))))
        if self.coef_soph != 0.0:
            for n in (n_lo, n_hi):
                s = (self.rhs - self.coef_naive * n) / self.coef_soph
                if s_lo - tol <= s <= s_hi + tol:
                    points.append((float(np.clip(s, s_lo, s_hi)), n))

        unique: list[tuple[float, float]] = []
        for p in points:
            if not any(abs(p[0] - q[0]) <= 1e-12 and abs(p[1] - q[1]) <= 1e-12 for q in unique):
                unique.append(p)
        return sorted(unique)

    def sample(self, n_points: int = 3) -> list[StrategyProfile]:
        """Evenly spaced profiles between the first and last vertex, plus all vertices."""
        corners = self.vertices()
        if not corners:
            return []
        if self.beta_bounds is not None:
            alpha_soph, alpha_naive = corners[0]
            return [
                StrategyProfile(beta=float(b), alpha_soph=alpha_soph, alpha_naive=alpha_naive)
                for b in np.linspace(*self.beta_bounds, n_points)
            ]
        first, last = np.array(corners[0]), np.array(corners[-1])
        points = [tuple(first + t * (last - first)) for t in np.linspace(0.0, 1.0, n_points)]
        for corner in corners[1:-1]:
            points.append(corner)
        return [
            StrategyProfile(
                beta=self.beta,
                alpha_soph=float(np.clip(s, 0.0, 1.0)),
                alpha_naive=float(np.clip(n, 0.0, 1.0)),
            )
            for s, n in points
        ]

    def is_subset_of(self, other: "ContinuumRecord", tol: float = 1e-9) -> bool:
        (low, high), (other_low, other_high) = self.beta_range, other.beta_range
        if low < other_low - tol or high > other_high + tol:
            return False
        corners = self.vertices()
        return bool(corners) and all(other.contains(s, n, tol=tol) for s, n in corners)

    def describe(self) -> str:
        if self.beta_bounds is not None:
            low, high = self.beta_bounds
            alpha_soph, alpha_naive = self.alpha_soph_bounds[0], self.alpha_naive_bounds[0]
            return f"beta in [{low:.6g}, {high:.6g}], alpha_S={alpha_soph:g}, alpha_N={alpha_naive:g}"
        symbol = {"eq": "=", "le": "<=", "ge": ">="}[self.relation]
        return (
            f"beta={self.beta:.6g}, {self.coef_soph:.6g}*alpha_S + {self.coef_naive:.6g}*alpha_N "
            f"{symbol} {self.rhs:.6g}, alpha_S in [{self.alpha_soph_bounds[0]:.6g}, "
            f"{self.alpha_soph_bounds[1]:.6g}], alpha_N in [{self.alpha_naive_bounds[0]:.6g}, "
            f"{self.alpha_naive_bounds[1]:.6g}]"
        )


class Equilibrium(BaseModel):
    """
    One Bayesian Nash equilibrium.

    For ``kind == CONTINUUM`` the profile is a representative point of the
    record (its first vertex) and ``continuum`` describes the whole set.
    """

    model_config = ConfigDict(frozen=True)

    profile: StrategyProfile
    kind: EquilibriumKind
    max_deviation_gain: float = Field(ge=0.0)
    continuum: Optional[ContinuumRecord] = None

    @model_validator(mode="after")
    def check_kind(self) -> "Equilibrium":
        if (self.kind is EquilibriumKind.CONTINUUM) != (self.continuum is not None):
            raise ValueError("continuum record must be present exactly for continuum equilibria")
        if self.kind is EquilibriumKind.PURE and not self.profile.is_pure:
            raise ValueError("pure equilibrium with a mixed profile")
        return self


class VerificationReport(BaseModel):
    """Largest unilateral deviation gain per player found on a probability grid."""

    model_config = ConfigDict(frozen=True)

    defender_gain: float
    sophisticated_gain: float
    naive_gain: float
    grid_resolution: int
    epsilon: float

    @property
    def max_deviation_gain(self) -> float:
        return max(self.defender_gain, self.sophisticated_gain, self.naive_gain)

    @property
    def certified(self) -> bool:
        return self.max_deviation_gain <= self.epsilon
