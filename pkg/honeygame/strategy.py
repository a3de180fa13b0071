"""
Deployment policies: FS(t), VS, always, never and fixed-beta mixing.

FS and VS only ever deploy on an IDS alert. Fixed-beta ignores the alert,
matching the ex-ante mixing of the game.
"""
from typing import Optional

import numpy as np

from honeygame.core.errors import ContinuumSelectionError
from honeygame.core.rng import UniformSource
from honeygame.models.game import Equilibrium, EquilibriumKind, StrategyProfile
from honeygame.models.policy import (
    DefenderObservation,
    DeploymentPolicy,
    PolicyKind,
    parse_policy,
)

__all__ = ["decide", "decide_many", "effective_f1", "parse_policy", "policy_from_equilibrium"]


def effective_f1(policy: DeploymentPolicy, obs: DefenderObservation) -> float:
    """The F1 the policy acts on: the analytic value during warm-up."""
    if obs.events_seen < policy.warmup_events:
        return obs.expected_f1
    return obs.f1_estimate


def vs_probability(policy: DeploymentPolicy, f1):
    return np.clip(policy.vs_slope * f1 + policy.vs_intercept, 0.0, 1.0)


def decide(policy: DeploymentPolicy, obs: DefenderObservation, rng: UniformSource) -> bool:
    """
    Deploy or not on one event. VS (on alert) and fixed-beta consume one
    uniform from rng; the other policies consume none.
    """
    kind = policy.kind
    if kind is PolicyKind.ALWAYS_DEPLOY:
        return True
    if kind is PolicyKind.NEVER_DEPLOY:
        return False
    if kind is PolicyKind.FIXED_BETA:
        return rng.random() < policy.beta
    if not obs.alert:
        return False

    f1 = effective_f1(policy, obs)
    if kind is PolicyKind.FIXED_THRESHOLD:
        return f1 >= policy.threshold
    return rng.random() < float(vs_probability(policy, f1))


def decide_many(
    policy: DeploymentPolicy,
    alerts: np.ndarray,
    f1_estimates: np.ndarray,
    uniforms: np.ndarray,
    expected_f1: float = 0.0,
) -> np.ndarray:
    """
    Vectorised decide over a whole trial. f1_estimates[i] is the running F1
    before event i and uniforms[i] the decision draw of event i.
    """
    alerts = np.asarray(alerts, dtype=bool)
    n = alerts.size
    kind = policy.kind
    if kind is PolicyKind.ALWAYS_DEPLOY:
        return np.ones(n, dtype=bool)
    if kind is PolicyKind.NEVER_DEPLOY:
        return np.zeros(n, dtype=bool)
    if kind is PolicyKind.FIXED_BETA:
        return uniforms < policy.beta

    f1 = np.asarray(f1_estimates, dtype=float)[:n].copy()
    f1[: min(policy.warmup_events, n)] = expected_f1
    if kind is PolicyKind.FIXED_THRESHOLD:
        return alerts & (f1 >= policy.threshold)
    return alerts & (uniforms < vs_probability(policy, f1))


def policy_from_equilibrium(
    equilibrium: Equilibrium,
    selection: Optional[StrategyProfile] = None,
) -> DeploymentPolicy:
    """
    Fixed-beta policy playing the equilibrium's deployment probability.
    A continuum needs a selected point of the set.
    """
    if equilibrium.kind is EquilibriumKind.CONTINUUM:
        record = equilibrium.continuum
        if selection is None:
            raise ContinuumSelectionError(
                f"continuum equilibrium ({record.describe()}) needs a selected profile"
            )
        if not record.covers(*selection.as_tuple()):
            raise ContinuumSelectionError(f"selected profile {selection.as_tuple()} is not in the continuum")
        return DeploymentPolicy(kind=PolicyKind.FIXED_BETA, beta=selection.beta)
    return DeploymentPolicy(kind=PolicyKind.FIXED_BETA, beta=equilibrium.profile.beta)
