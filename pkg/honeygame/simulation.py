"""
Event simulation, trial execution and Monte Carlo aggregation.

A trial draws an (n_events, 6) uniform matrix from its own stream and
evaluates every event in one vectorised pass. run_trial_reference replays the
same matrix through the scalar operations one event at a time and must agree
with run_trial exactly.

Utility sums use math.fsum so the total does not depend on summation order.
"""
import hashlib
import math
from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import Optional

import numpy as np

from honeygame.core.config import settings
from honeygame.core.errors import ConfigError, PreconditionError
from honeygame.core.logger import log_function, logger
from honeygame.core.rng import (
    ALERT,
    ATTACK,
    DECISION,
    DETECTION,
    PRESENCE,
    TYPE,
    ReplayStream,
    UniformSource,
    draw_trial_uniforms,
    trial_rng,
)
from honeygame.ids import confusion_from_arrays, expected_f1, f1_score, running_f1, sample_alert, update_confusion
from honeygame.models.game import AttackerType, GameParameters
from honeygame.models.ids import ConfusionCounts, IdsParameters
from honeygame.models.policy import DefenderObservation, DeploymentPolicy
from honeygame.models.trial import Event, EventOutcome, MonteCarloSummary, TrialConfig, TrialResult
from honeygame.strategy import decide, decide_many

log = logger.getChild("simulation")

# Event-kind codes hashed into TrialResult.event_digest.
LEGITIMATE, SOPH_ATTACK, NAIVE_ATTACK, SOPH_ABSTAIN, NAIVE_ABSTAIN = range(5)


def event_code(event: Event) -> int:
    if event.attacker_type is None:
        return LEGITIMATE
    if event.attacker_type is AttackerType.SOPHISTICATED:
        return SOPH_ATTACK if event.attacked else SOPH_ABSTAIN
    return NAIVE_ATTACK if event.attacked else NAIVE_ABSTAIN


def _digest(codes: np.ndarray) -> str:
    return hashlib.sha256(np.asarray(codes, dtype=np.uint8).tobytes()).hexdigest()


# ============================================================================
# Scalar operations
# ============================================================================

def generate_event(cfg: TrialConfig, rng: UniformSource) -> Event:
    """Consumes exactly three uniforms: presence, type, attack."""
    present = rng.random() < cfg.attack_rate
    soph = rng.random() < cfg.p_soph
    attack_draw = rng.random()
    if not present:
        return Event.legitimate()

    attacker_type = AttackerType.SOPHISTICATED if soph else AttackerType.NAIVE
    return Event(attacker_type=attacker_type, attacked=attack_draw < cfg.p_attack(attacker_type))


def event_utility(event: Event, deployed: bool, detected: bool, params: GameParameters) -> float:
    """Defender utility of one event."""
    if detected and not (deployed and event.attacked):
        raise PreconditionError("detected requires a deployed honeypot and an attack")

    if event.is_legitimate:
        return -params.penalty_false_positive if deployed else 0.0
    if not event.attacked:
        return -params.cost_honeypot if deployed else 0.0
    if not deployed:
        return -params.attack_cost(event.attacker_type)
    if detected:
        return params.detect_benefit(event.attacker_type) - params.cost_honeypot
    return -params.cost_honeypot


def closed_form_expected_utility(
    beta: float,
    cfg: TrialConfig,
    params: GameParameters,
    ids: IdsParameters,
) -> float:
    """Expected per-event utility of deploying with probability beta regardless of alerts."""
    r = cfg.attack_rate
    attackers = 0.0
    for attacker_type, weight in ((AttackerType.SOPHISTICATED, cfg.p_soph), (AttackerType.NAIVE, 1.0 - cfg.p_soph)):
        tpr = ids.tpr(attacker_type)
        deployed = tpr * (params.detect_benefit(attacker_type) - params.cost_honeypot) + (1.0 - tpr) * -params.cost_honeypot
        attack = beta * deployed + (1.0 - beta) * -params.attack_cost(attacker_type)
        p_attack = cfg.p_attack(attacker_type)
        attackers += weight * (p_attack * attack + (1.0 - p_attack) * beta * -params.cost_honeypot)

    return (1.0 - r) * beta * -params.penalty_false_positive + r * attackers


# ============================================================================
# Trials
# ============================================================================

def _result(
    cfg: TrialConfig,
    trial_index: int,
    utilities,
    confusion: ConfusionCounts,
    deployments: int,
    detections: int,
    successful_attacks: int,
    false_positive_deployments: int,
    codes,
) -> TrialResult:
    total = math.fsum(utilities)
    return TrialResult(
        trial_index=trial_index,
        seed=cfg.seed,
        n_events=cfg.n_events,
        average_utility=total / cfg.n_events,
        total_utility=total,
        confusion=confusion,
        deployments=deployments,
        detections=detections,
        successful_attacks=successful_attacks,
        false_positive_deployments=false_positive_deployments,
        final_f1=f1_score(confusion),
        event_digest=_digest(codes),
    )


def run_trial(
    cfg: TrialConfig,
    policy: DeploymentPolicy,
    params: GameParameters,
    ids: IdsParameters,
    trial_index: int = 0,
) -> TrialResult:
    """One simulated day, evaluated as whole-trial arrays."""
    u = draw_trial_uniforms(trial_rng(cfg.seed, trial_index), cfg.n_events)

    present = u[:, PRESENCE] < cfg.attack_rate
    soph = u[:, TYPE] < cfg.p_soph
    p_attack = np.where(soph, cfg.p_attack_soph, cfg.p_attack_naive)
    attacked = present & (u[:, ATTACK] < p_attack)
    legitimate = ~present
    abstained = present & ~attacked

    tpr = np.where(soph, ids.tpr_soph, ids.tpr_naive)
    alerts = u[:, ALERT] < np.where(attacked, tpr, ids.fpr)

    f1_before = running_f1(alerts, attacked, policy.f1_window)
    deployed = decide_many(
        policy, alerts, f1_before[:-1], u[:, DECISION], expected_f1=expected_f1(ids, cfg.event_mix())
    )
    detected = deployed & attacked & (u[:, DETECTION] < tpr)

    soph_attack, naive_attack = attacked & soph, attacked & ~soph
    utilities = np.select(
        [
            legitimate & deployed,
            abstained & deployed,
            soph_attack & detected,
            naive_attack & detected,
            attacked & deployed & ~detected,
            soph_attack & ~deployed,
            naive_attack & ~deployed,
        ],
        [
            -params.penalty_false_positive,
            -params.cost_honeypot,
            params.detect_benefit(AttackerType.SOPHISTICATED) - params.cost_honeypot,
            params.detect_benefit(AttackerType.NAIVE) - params.cost_honeypot,
            -params.cost_honeypot,
            -params.attack_cost(AttackerType.SOPHISTICATED),
            -params.attack_cost(AttackerType.NAIVE),
        ],
        default=0.0,
    )

    codes = np.select(
        [soph_attack, naive_attack, abstained & soph, abstained & ~soph],
        [SOPH_ATTACK, NAIVE_ATTACK, SOPH_ABSTAIN, NAIVE_ABSTAIN],
        default=LEGITIMATE,
    )

    return _result(
        cfg,
        trial_index,
        utilities,
        confusion_from_arrays(alerts, attacked),
        deployments=int(np.count_nonzero(deployed)),
        detections=int(np.count_nonzero(detected)),
        successful_attacks=int(np.count_nonzero(attacked & ~deployed)),
        false_positive_deployments=int(np.count_nonzero(legitimate & deployed)),
        codes=codes,
    )


def simulate_event(
    event: Event,
    policy: DeploymentPolicy,
    observation_f1: float,
    events_seen: int,
    analytic_f1: float,
    params: GameParameters,
    ids: IdsParameters,
    draws: np.ndarray,
) -> EventOutcome:
    """Alert, decision, detection and utility of one event from its six uniforms."""
    alert = sample_alert(event.ground_truth, ids, ReplayStream([draws[ALERT]]))
    obs = DefenderObservation(
        alert=alert, f1_estimate=observation_f1, events_seen=events_seen, expected_f1=analytic_f1
    )
    deployed = decide(policy, obs, ReplayStream([draws[DECISION]]))
    detected = deployed and event.attacked and draws[DETECTION] < ids.tpr(event.attacker_type)
    return EventOutcome(
        event=event,
        alert=alert,
        deployed=deployed,
        detected=bool(detected),
        utility=event_utility(event, deployed, bool(detected), params),
    )


def run_trial_reference(
    cfg: TrialConfig,
    policy: DeploymentPolicy,
    params: GameParameters,
    ids: IdsParameters,
    trial_index: int = 0,
) -> TrialResult:
    """Event-by-event run_trial built from the scalar operations. Slow."""
    u = draw_trial_uniforms(trial_rng(cfg.seed, trial_index), cfg.n_events)
    analytic_f1 = expected_f1(ids, cfg.event_mix())

    history = [ConfusionCounts()]
    utilities: list[float] = []
    codes: list[int] = []
    deployments = detections = successful_attacks = false_positive_deployments = 0

    for i in range(cfg.n_events):
        current = history[-1]
        if policy.f1_window is not None:
            start = history[max(i - policy.f1_window, 0)]
            current = ConfusionCounts(
                true_positives=current.true_positives - start.true_positives,
                false_positives=current.false_positives - start.false_positives,
                true_negatives=current.true_negatives - start.true_negatives,
                false_negatives=current.false_negatives - start.false_negatives,
            )

        event = generate_event(cfg, ReplayStream(u[i, PRESENCE : ATTACK + 1]))
        outcome = simulate_event(event, policy, f1_score(current), i, analytic_f1, params, ids, u[i])

        utilities.append(outcome.utility)
        codes.append(event_code(event))
        deployments += outcome.deployed
        detections += outcome.detected
        successful_attacks += event.attacked and not outcome.deployed
        false_positive_deployments += event.is_legitimate and outcome.deployed
        history.append(update_confusion(history[-1], outcome.alert, event.attacked))

    return _result(
        cfg,
        trial_index,
        utilities,
        history[-1],
        deployments=int(deployments),
        detections=int(detections),
        successful_attacks=int(successful_attacks),
        false_positive_deployments=int(false_positive_deployments),
        codes=codes,
    )


# ============================================================================
# Monte Carlo
# ============================================================================

def _run_indexed(args: tuple) -> TrialResult:
    cfg, policy, params, ids, trial_index = args
    return run_trial(cfg, policy, params, ids, trial_index)


def summarize(results: list[TrialResult]) -> MonteCarloSummary:
    """Mean and standard error of the trial averages, in trial-index order."""
    ordered = sorted(results, key=lambda r: r.trial_index)
    averages = np.array([r.average_utility for r in ordered])
    n = len(ordered)
    std_error = float(np.std(averages, ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    return MonteCarloSummary(
        n_trials=n,
        mean_utility=math.fsum(averages) / n,
        std_error=std_error,
        per_trial=ordered,
    )


@log_function(log_args=False, log_result=False)
def run_monte_carlo(
    n_trials: int,
    base_cfg: TrialConfig,
    policy: DeploymentPolicy,
    params: GameParameters,
    ids: IdsParameters,
    jobs: Optional[int] = None,
) -> MonteCarloSummary:
    """
    Independent trials seeded from (base_cfg.seed, trial index). The summary
    is identical for any jobs value.
    """
    if n_trials < 1:
        raise ConfigError(f"n_trials must be at least 1, got {n_trials}")
    workers = settings.JOBS if jobs is None else jobs
    if workers < 1:
        raise ConfigError(f"jobs must be at least 1, got {workers}")

    batch = [(base_cfg, policy, params, ids, index) for index in range(n_trials)]
    if workers == 1 or n_trials == 1:
        results = [_run_indexed(args) for args in batch]
    else:
        results = []
        with ProcessPoolExecutor(max_workers=workers) as executor:
            futures = {executor.submit(_run_indexed, args): args[-1] for args in batch}
            for future in as_completed(futures):
                results.append(future.result())

    summary = summarize(results)
    log.debug(
        f"{policy.policy_id}: {n_trials} trials, mean {summary.mean_utility:.4f} ± {summary.std_error:.4f}"
    )
    return summary
