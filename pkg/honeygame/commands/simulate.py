"""
`simulate`: Monte Carlo evaluation of one deployment policy.
"""
import argparse
import csv
from pathlib import Path
from typing import Optional

from honeygame.core.config import RunConfig
from honeygame.core.errors import ExportError
from honeygame.models.policy import DeploymentPolicy, PolicyKind
from honeygame.models.trial import MonteCarloSummary
from honeygame.simulation import closed_form_expected_utility, run_monte_carlo

TRIAL_COLUMNS = [
    "trial_index",
    "seed",
    "n_events",
    "average_utility",
    "total_utility",
    "deployments",
    "detections",
    "successful_attacks",
    "false_positive_deployments",
    "true_positives",
    "false_positives",
    "true_negatives",
    "false_negatives",
    "final_f1",
    "event_digest",
]

TALLIES = ("deployments", "detections", "successful_attacks", "false_positive_deployments")


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser(
        "simulate",
        parents=parents,
        help="Run Monte Carlo trials of one policy",
        description="Simulate one deployment policy and write trials.csv.",
    )
    parser.add_argument(
        "--policy",
        default="vs",
        help="fs50, fs60, fs70, fs80, fs90, vs, always, never or beta:<float> (default: vs)",
    )
    parser.add_argument("--trials", type=int, default=100, help="Number of trials (default: 100)")
    parser.set_defaults(handler=cmd_simulate)


def oracle_beta(policy: DeploymentPolicy) -> Optional[float]:
    """Deployment probability of an alert-independent policy, else None."""
    if policy.kind is PolicyKind.ALWAYS_DEPLOY:
        return 1.0
    if policy.kind is PolicyKind.NEVER_DEPLOY:
        return 0.0
    if policy.kind is PolicyKind.FIXED_BETA:
        return policy.beta
    return None


def write_trials_csv(summary: MonteCarloSummary, path: Path) -> None:
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\r\n")
        writer.writerow(TRIAL_COLUMNS)
        for trial in summary.per_trial:
            counts = trial.confusion
            writer.writerow([
                trial.trial_index,
                trial.seed,
                trial.n_events,
                repr(trial.average_utility),
                repr(trial.total_utility),
                trial.deployments,
                trial.detections,
                trial.successful_attacks,
                trial.false_positive_deployments,
                counts.true_positives,
                counts.false_positives,
                counts.true_negatives,
                counts.false_negatives,
                repr(trial.final_f1),
                trial.event_digest,
            ])


def cmd_simulate(config: RunConfig, args: argparse.Namespace) -> int:
    policy = config.deployment_policies([args.policy])[0]
    summary = run_monte_carlo(args.trials, config.trial, policy, config.game, config.ids, jobs=args.jobs)

    print(f"policy {policy.policy_id}: {summary.n_trials} trials x {config.trial.n_events} events, seed {config.seed}")
    print(f"mean utility per event: {summary.mean_utility:.6f} ± {summary.std_error:.6f}")
    for field in TALLIES:
        print(f"  {field:<28} {summary.total(field)}")

    beta = oracle_beta(policy)
    if beta is not None:
        expected = closed_form_expected_utility(beta, config.trial, config.game, config.ids)
        print(f"  analytic expectation         {expected:.6f}")

    out_dir = Path(config.out_dir)
    path = out_dir / "trials.csv"
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        write_trials_csv(summary, path)
    except OSError as e:
        raise ExportError(e.strerror or str(e), path=path) from e

    print(f"wrote {path}")
    return 0
