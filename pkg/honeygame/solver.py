"""
Bayesian Nash equilibria of the honeypot game by support enumeration.

Each of beta, alpha_S and alpha_N is fixed to 0, fixed to 1, or left
interior, giving 27 support patterns. Interior probabilities are pinned by
the indifference conditions:

    interior alpha_theta  =>  beta == beta_theta          (attacker indifferent)
    interior beta         =>  w_S*alpha_S + w_N*alpha_N == C_h   (defender indifferent)

where w_theta = p(theta) * (B_d,theta + C_a,theta). Boundary probabilities
must be best responses. Sets that the equations leave unpinned are returned
as a single continuum record.
"""
import itertools
from enum import Enum
from typing import Optional

import numpy as np

from honeygame.core.config import settings
from honeygame.core.errors import ConfigError, SolverConsistencyError
from honeygame.core.logger import log_function, logger
from honeygame.game import (
    attacker_indifference_beta,
    best_response_attacker,
    deploy_gain,
    expected_attacker_utility,
    expected_defender_utility,
)
from honeygame.models.game import (
    AttackerAction,
    AttackerType,
    ContinuumRecord,
    Equilibrium,
    EquilibriumKind,
    GameParameters,
    StrategyProfile,
    VerificationReport,
)

log = logger.getChild("solver")

TYPES = (AttackerType.SOPHISTICATED, AttackerType.NAIVE)


class Support(Enum):
    ZERO = 0.0
    ONE = 1.0
    INTERIOR = None


# Defender condition a boundary/interior beta imposes on the attack probabilities.
RELATION_FOR_BETA = {Support.INTERIOR: "eq", Support.ONE: "ge", Support.ZERO: "le"}


# ============================================================================
# Deviation gains
# ============================================================================

def exact_deviation_gains(profile: StrategyProfile, params: GameParameters) -> tuple[float, float, float]:
    """
    (defender, sophisticated, naive) gain from the best unilateral deviation.
    Payoffs are linear in the deviating probability, so a pure action is optimal.
    """
    current = expected_defender_utility(profile, params)
    deploy = expected_defender_utility(profile.model_copy(update={"beta": 1.0}), params)
    hold = expected_defender_utility(profile.model_copy(update={"beta": 0.0}), params)
    gains = [max(deploy, hold) - current]

    for attacker_type in TYPES:
        attack = expected_attacker_utility(attacker_type, AttackerAction.ATTACK, profile.beta, params)
        gains.append(max(attack, 0.0) - profile.alpha(attacker_type) * attack)

    defender, soph, naive = (max(0.0, g) for g in gains)
    return defender, soph, naive


def verify_equilibrium(
    profile: StrategyProfile,
    params: GameParameters,
    grid_resolution: Optional[int] = None,
    epsilon: Optional[float] = None,
) -> VerificationReport:
    """
    Brute-force check: scan each player's deviating probability over a uniform
    grid on [0, 1] and report the largest expected-utility gain.
    """
    n = settings.VERIFY_GRID if grid_resolution is None else grid_resolution
    eps = settings.VERIFY_EPSILON if epsilon is None else epsilon
    if n < 101:
        raise ConfigError(f"grid_resolution must be at least 101, got {n}")

    grid = np.linspace(0.0, 1.0, n)

    deploy = expected_defender_utility(profile.model_copy(update={"beta": 1.0}), params)
    hold = expected_defender_utility(profile.model_copy(update={"beta": 0.0}), params)
    current = expected_defender_utility(profile, params)
    defender_gain = float(np.max(grid * deploy + (1.0 - grid) * hold) - current)

    attacker_gains = []
    for attacker_type in TYPES:
        attack = expected_attacker_utility(attacker_type, AttackerAction.ATTACK, profile.beta, params)
        deviations = grid * attack
        attacker_gains.append(float(np.max(deviations) - profile.alpha(attacker_type) * attack))

    return VerificationReport(
        defender_gain=max(0.0, defender_gain),
        sophisticated_gain=max(0.0, attacker_gains[0]),
        naive_gain=max(0.0, attacker_gains[1]),
        grid_resolution=n,
        epsilon=eps,
    )


# ============================================================================
# Support enumeration
# ============================================================================

def _classify(profile: StrategyProfile) -> EquilibriumKind:
    interior = [0.0 < value < 1.0 for value in profile.as_tuple()]
    if not any(interior):
        return EquilibriumKind.PURE
    if all(interior):
        return EquilibriumKind.FULLY_MIXED
    return EquilibriumKind.PARTIALLY_MIXED


def _point(beta: float, alphas: dict[AttackerType, float], params: GameParameters) -> Equilibrium:
    profile = StrategyProfile(
        beta=beta,
        alpha_soph=alphas[AttackerType.SOPHISTICATED],
        alpha_naive=alphas[AttackerType.NAIVE],
    )
    return Equilibrium(
        profile=profile,
        kind=_classify(profile),
        max_deviation_gain=max(exact_deviation_gains(profile, params)),
    )


def _continuum(record: ContinuumRecord, params: GameParameters) -> Equilibrium:
    # sample() includes every vertex, or both ends of a beta interval
    profiles = record.sample(3)
    return Equilibrium(
        profile=profiles[0],
        kind=EquilibriumKind.CONTINUUM,
        max_deviation_gain=max(max(exact_deviation_gains(p, params)) for p in profiles),
        continuum=record,
    )


def _beta_intervals(params: GameParameters, thresholds: dict[AttackerType, float], eps: float) -> list[Equilibrium]:
    """
    Pure attacker profiles against which the defender is indifferent. Every
    beta both types best-respond to is then an equilibrium, e.g. C_h = 0 with
    nobody attacking.
    """
    weights = {t: params.deploy_weight(t) for t in TYPES}
    found = []
    for alpha_soph, alpha_naive in itertools.product((0.0, 1.0), repeat=2):
        if abs(deploy_gain(alpha_soph, alpha_naive, params)) > eps:
            continue
        low, high = 0.0, 1.0
        for attacker_type, alpha in ((AttackerType.SOPHISTICATED, alpha_soph), (AttackerType.NAIVE, alpha_naive)):
            if alpha == 1.0:
                high = min(high, thresholds[attacker_type])
            else:
                low = max(low, thresholds[attacker_type])
        if high - low <= eps:
            continue
        record = ContinuumRecord(
            beta=low,
            coef_soph=weights[AttackerType.SOPHISTICATED],
            coef_naive=weights[AttackerType.NAIVE],
            rhs=params.cost_honeypot,
            relation="eq",
            alpha_soph_bounds=(alpha_soph, alpha_soph),
            alpha_naive_bounds=(alpha_naive, alpha_naive),
            beta_bounds=(low, high),
        )
        found.append(_continuum(record, params))
    return found


def _beta_candidates(support: Support, thresholds: dict[AttackerType, float], eps: float) -> list[float]:
    if support is not Support.INTERIOR:
        return [support.value]
    candidates: list[float] = []
    for value in sorted(thresholds.values()):
        if eps < value < 1.0 - eps and not any(abs(value - c) <= eps for c in candidates):
            candidates.append(value)
    return candidates


def _defender_accepts(gain: float, relation: str, eps: float) -> bool:
    if relation == "eq":
        return abs(gain) <= eps
    if relation == "ge":
        return gain >= -eps
    return gain <= eps


def _solve_pattern(
    beta: float,
    beta_support: Support,
    alpha_supports: dict[AttackerType, Support],
    params: GameParameters,
    eps: float,
) -> list[Equilibrium]:
    fixed: dict[AttackerType, float] = {}
    free: list[AttackerType] = []
    for attacker_type, support in alpha_supports.items():
        response = best_response_attacker(attacker_type, beta, params, eps)
        if support is Support.INTERIOR:
            if response.is_pure:
                return []
            free.append(attacker_type)
        elif response.contains(support.value):
            fixed[attacker_type] = support.value
        else:
            return []

    relation = RELATION_FOR_BETA[beta_support]
    weights = {t: params.deploy_weight(t) for t in TYPES}

    if not free:
        gain = deploy_gain(fixed[AttackerType.SOPHISTICATED], fixed[AttackerType.NAIVE], params)
        return [_point(beta, fixed, params)] if _defender_accepts(gain, relation, eps) else []

    if relation == "eq" and len(free) == 1:
        target = free[0]
        other = next(t for t in TYPES if t is not target)
        residual = params.cost_honeypot - weights[other] * fixed[other]
        if weights[target] > 0.0:
            alpha = residual / weights[target]
            if eps < alpha < 1.0 - eps:
                return [_point(beta, {**fixed, target: alpha}, params)]
            return []
        if abs(residual) > eps:
            return []

    bounds = {t: (fixed[t], fixed[t]) if t in fixed else (0.0, 1.0) for t in TYPES}
    record = ContinuumRecord(
        beta=beta,
        coef_soph=weights[AttackerType.SOPHISTICATED],
        coef_naive=weights[AttackerType.NAIVE],
        rhs=params.cost_honeypot,
        relation=relation,
        alpha_soph_bounds=bounds[AttackerType.SOPHISTICATED],
        alpha_naive_bounds=bounds[AttackerType.NAIVE],
    )
    vertices = record.vertices()
    # a single feasible point lies on the boundary and belongs to another pattern
    if len(vertices) < 2:
        return []
    return [_continuum(record, params)]


def _deduplicate(candidates: list[Equilibrium], eps: float) -> list[Equilibrium]:
    continua = [e for e in candidates if e.continuum is not None]
    kept_continua: list[Equilibrium] = []
    for i, current in enumerate(continua):
        covered = False
        for j, other in enumerate(continua):
            if i == j or not current.continuum.is_subset_of(other.continuum):
                continue
            # for identical sets keep the earliest
            if not other.continuum.is_subset_of(current.continuum) or j < i:
                covered = True
                break
        if not covered:
            kept_continua.append(current)

    kept_points: list[Equilibrium] = []
    for candidate in candidates:
        if candidate.continuum is not None:
            continue
        beta, alpha_soph, alpha_naive = candidate.profile.as_tuple()
        inside = any(c.continuum.covers(beta, alpha_soph, alpha_naive, tol=max(eps, 1e-9)) for c in kept_continua)
        duplicate = any(
            np.allclose(candidate.profile.as_tuple(), p.profile.as_tuple(), atol=eps) for p in kept_points
        )
        if not inside and not duplicate:
            kept_points.append(candidate)

    return sorted(kept_points + kept_continua, key=lambda e: e.profile.as_tuple())


def _verification_points(equilibrium: Equilibrium) -> list[StrategyProfile]:
    if equilibrium.continuum is None:
        return [equilibrium.profile]
    return equilibrium.continuum.sample(3)


@log_function(log_args=False, log_result=False)
def enumerate_equilibria(params: GameParameters, epsilon: Optional[float] = None) -> list[Equilibrium]:
    """
    Every Bayesian Nash equilibrium of the game, sorted by (beta, alpha_S, alpha_N).

    Raises:
        DegenerateParametersError: an attacker type has B_a + C_d == 0
        SolverConsistencyError: nothing found, or a result fails verification
    """
    eps = settings.SOLVER_EPSILON if epsilon is None else epsilon
    if eps <= 0.0:
        raise ConfigError(f"epsilon must be positive, got {eps}")

    thresholds = {t: attacker_indifference_beta(t, params) for t in TYPES}
    log.debug(f"indifference betas: {({t.value: v for t, v in thresholds.items()})}")

    candidates: list[Equilibrium] = []
    for beta_support, soph_support, naive_support in itertools.product(Support, repeat=3):
        alpha_supports = {AttackerType.SOPHISTICATED: soph_support, AttackerType.NAIVE: naive_support}
        for beta in _beta_candidates(beta_support, thresholds, eps):
            candidates.extend(_solve_pattern(beta, beta_support, alpha_supports, params, eps))
    candidates.extend(_beta_intervals(params, thresholds, eps))

    equilibria = _deduplicate(candidates, eps)
    if not equilibria:
        raise SolverConsistencyError("no equilibrium found; a finite Bayesian game always has one")

    for equilibrium in equilibria:
        for profile in _verification_points(equilibrium):
            report = verify_equilibrium(profile, params)
            if not report.certified:
                raise SolverConsistencyError(
                    f"{equilibrium.kind.value} equilibrium {profile.as_tuple()} fails verification "
                    f"(max deviation gain {report.max_deviation_gain:.3g})"
                )

    log.info(f"found {len(equilibria)} equilibria: {[e.kind.value for e in equilibria]}")
    return equilibria
