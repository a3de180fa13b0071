"""
Payoffs, expected utilities and best responses of the honeypot game.

The defender and a typed attacker move simultaneously ex ante: the defender
deploys with probability beta, an attacker of type theta attacks with
probability alpha_theta, and Nature draws the type with prior p(S).
"""
from typing import Optional

from honeygame.core.config import settings
from honeygame.core.errors import DegenerateParametersError, UndefinedPosteriorError
from honeygame.models.game import (
    AttackerAction,
    AttackerType,
    DefenderAction,
    GameParameters,
    PayoffPair,
    ResponseSet,
    Signal,
    StrategyProfile,
)
from honeygame.models.ids import SignalModel


def payoff(
    attacker_type: AttackerType,
    defender_action: DefenderAction,
    attacker_action: AttackerAction,
    params: GameParameters,
) -> PayoffPair:
    """One cell of the payoff table, as (defender, attacker)."""
    if defender_action is DefenderAction.DEPLOY:
        if attacker_action is AttackerAction.ATTACK:
            return PayoffPair(
                defender=params.detect_benefit(attacker_type) - params.cost_honeypot,
                attacker=-params.detection_cost(attacker_type),
            )
        return PayoffPair(defender=-params.cost_honeypot, attacker=0.0)

    if attacker_action is AttackerAction.ATTACK:
        return PayoffPair(
            defender=-params.attack_cost(attacker_type),
            attacker=params.attacker_benefit(attacker_type),
        )
    return PayoffPair(defender=0.0, attacker=0.0)


def expected_defender_utility(profile: StrategyProfile, params: GameParameters) -> float:
    p = params.prior_soph
    a_s, a_n = profile.alpha_soph, profile.alpha_naive
    deploy = (
        p * a_s * params.benefit_detect_soph
        + (1.0 - p) * a_n * params.benefit_detect_naive
        - params.cost_honeypot
    )
    no_deploy = -p * a_s * params.cost_attack_soph - (1.0 - p) * a_n * params.cost_attack_naive
    return profile.beta * deploy + (1.0 - profile.beta) * no_deploy


def expected_attacker_utility(
    attacker_type: AttackerType,
    action: AttackerAction,
    beta: float,
    params: GameParameters,
) -> float:
    if action is AttackerAction.ABSTAIN:
        return 0.0
    return beta * -params.detection_cost(attacker_type) + (1.0 - beta) * params.attacker_benefit(attacker_type)


def deployment_rhs(alpha_soph: float, alpha_naive: float, params: GameParameters) -> float:
    """Expected value of deploying before its cost: what C_h is compared against."""
    return (
        params.deploy_weight(AttackerType.SOPHISTICATED) * alpha_soph
        + params.deploy_weight(AttackerType.NAIVE) * alpha_naive
    )


def deploy_gain(alpha_soph: float, alpha_naive: float, params: GameParameters) -> float:
    """EU(beta=1) - EU(beta=0) at the given attack probabilities."""
    return deployment_rhs(alpha_soph, alpha_naive, params) - params.cost_honeypot


def pure_deploy_condition(alpha_soph: float, alpha_naive: float, params: GameParameters) -> bool:
    """True when deploying with certainty strictly beats never deploying."""
    return params.cost_honeypot < deployment_rhs(alpha_soph, alpha_naive, params)


def attacker_indifference_beta(attacker_type: AttackerType, params: GameParameters) -> float:
    """
    The deployment probability at which this attacker type is indifferent.
    Attacking is strictly better below it and abstaining strictly better above.
    """
    benefit = params.attacker_benefit(attacker_type)
    denominator = benefit + params.detection_cost(attacker_type)
    if denominator == 0.0:
        raise DegenerateParametersError(
            f"{attacker_type.value} attacker has zero benefit and zero detection cost; "
            "indifferent at every beta"
        )
    return benefit / denominator


def best_response_defender(
    alpha_soph: float,
    alpha_naive: float,
    params: GameParameters,
    epsilon: Optional[float] = None,
) -> ResponseSet:
    eps = settings.SOLVER_EPSILON if epsilon is None else epsilon
    gain = deploy_gain(alpha_soph, alpha_naive, params)
    if gain > eps:
        return ResponseSet.point(1.0)
    if gain < -eps:
        return ResponseSet.point(0.0)
    return ResponseSet.indifferent()


def best_response_attacker(
    attacker_type: AttackerType,
    beta: float,
    params: GameParameters,
    epsilon: Optional[float] = None,
) -> ResponseSet:
    eps = settings.SOLVER_EPSILON if epsilon is None else epsilon
    threshold = attacker_indifference_beta(attacker_type, params)
    if beta < threshold - eps:
        return ResponseSet.point(1.0)
    if beta > threshold + eps:
        return ResponseSet.point(0.0)
    return ResponseSet.indifferent()


def posterior_type_given_signal(prior_soph: float, signal: Signal, signal_model: SignalModel) -> float:
    """Belief that the attacker is sophisticated after seeing the signal."""
    like_soph = signal_model.p_suspicious_given_soph
    like_naive = signal_model.p_suspicious_given_naive
    if signal is Signal.APPEARS_NORMAL:
        like_soph, like_naive = 1.0 - like_soph, 1.0 - like_naive

    weighted_soph = prior_soph * like_soph
    denominator = weighted_soph + (1.0 - prior_soph) * like_naive
    if denominator <= 0.0:
        raise UndefinedPosteriorError(
            f"signal '{signal.value}' has zero probability under both attacker types"
        )
    return weighted_soph / denominator


def signal_deploy_gain(
    signal: Signal,
    profile: StrategyProfile,
    params: GameParameters,
    signal_model: SignalModel,
) -> float:
    """
    Defender's gain from deploying once the signal is seen, with the type
    prior replaced by the posterior.
    """
    belief = posterior_type_given_signal(params.prior_soph, signal, signal_model)
    updated = params.model_copy(update={"prior_soph": belief})
    return deploy_gain(profile.alpha_soph, profile.alpha_naive, updated)
