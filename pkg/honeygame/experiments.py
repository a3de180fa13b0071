"""
The three deployment studies as parameter sweeps over the simulator, plus
their CSV / JSON / SVG export.

Every (policy, grid point) cell is a Monte Carlo run with the same base seed,
so cells see identical event streams (common random numbers).
"""
import csv
import hashlib
import json
from pathlib import Path
from typing import Iterable, Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from honeygame import __version__
from honeygame.core.config import RunConfig
from honeygame.core.errors import ExperimentSpecError, ExportError
from honeygame.core.logger import log_function, logger
from honeygame.models.experiment import (
    ExperimentId,
    ExperimentResult,
    ExperimentRow,
    ExperimentSpec,
    Provenance,
    Scenario,
)
from honeygame.models.game import EquilibriumKind
from honeygame.models.policy import DeploymentPolicy
from honeygame.simulation import run_monte_carlo
from honeygame.solver import enumerate_equilibria
from honeygame.strategy import policy_from_equilibrium

log = logger.getChild("experiments")

PENALTY = "game.penalty_false_positive"
COST = "game.cost_honeypot"
ATTACK_RATE = "trial.attack_rate"

SWEEP_KEYS = {
    ExperimentId.FP_PENALTY: [PENALTY],
    ExperimentId.COST_PENALTY: [COST, PENALTY],
    ExperimentId.ATTACK_RATE: [ATTACK_RATE],
}

DEFAULT_COSTS = (0.5, 1.0, 2.0, 4.0, 8.0)
DEFAULT_PENALTIES = (0.0, 1.0, 2.0, 5.0)
DEFAULT_ATTACK_RATES = (0.01, 0.05, 0.10, 0.15, 0.20, 0.30)
DEFAULT_REPLICATIONS = 100

CSV_COLUMNS = ["experiment", "policy", "param_overrides", "mean_utility", "std_error", "replications", "seed"]


def parse_experiment_id(text: str) -> ExperimentId:
    try:
        return ExperimentId(text.strip().lower())
    except ValueError:
        valid = ", ".join(e.value for e in ExperimentId)
        raise ExperimentSpecError(f"unknown experiment '{text}'; valid experiments: {valid}, all") from None


# ============================================================================
# Specs
# ============================================================================

def default_grid(
    experiment_id: ExperimentId,
    base: Scenario,
    values: Optional[Iterable[float]] = None,
) -> list[dict[str, float]]:
    """
    Sweep points for a study. ``values`` replaces the primary axis: the P_n
    conditions, the C_h values or the attack rates.
    """
    values = None if values is None else [float(v) for v in values]

    if experiment_id is ExperimentId.FP_PENALTY:
        base_penalty = base.game.penalty_false_positive
        if values is None:
            if base_penalty == 0.0:
                log.warning("base false-positive penalty is 0; only the unpenalised condition is run")
                values = [0.0]
            else:
                values = [0.0, base_penalty]
        return [{PENALTY: v} for v in values]

    if experiment_id is ExperimentId.COST_PENALTY:
        costs = values if values is not None else list(DEFAULT_COSTS)
        return [{COST: c, PENALTY: p} for c in costs for p in DEFAULT_PENALTIES]

    rates = values if values is not None else list(DEFAULT_ATTACK_RATES)
    return [{ATTACK_RATE: r} for r in rates]


def equilibrium_policies(config: RunConfig) -> list[DeploymentPolicy]:
    """Fixed-beta policies for every point equilibrium of the configured game."""
    policies = []
    for equilibrium in enumerate_equilibria(config.game):
        if equilibrium.kind is EquilibriumKind.CONTINUUM:
            log.info(f"skipping continuum equilibrium {equilibrium.continuum.describe()}")
            continue
        policies.append(policy_from_equilibrium(equilibrium))
    return policies


def build_spec(config: RunConfig, experiment_id: ExperimentId) -> ExperimentSpec:
    """ExperimentSpec from a run config and its optional experiment section."""
    overrides = config.experiment
    policies = config.deployment_policies()
    if overrides is not None and overrides.include_equilibrium:
        known = {p.policy_id for p in policies}
        for policy in equilibrium_policies(config):
            if policy.policy_id not in known:
                policies.append(policy)
                known.add(policy.policy_id)

    base = Scenario(trial=config.trial, game=config.game, ids=config.ids)
    grid_values = overrides.grid if overrides is not None else None
    sweep_grid = default_grid(experiment_id, base, grid_values)
    if not sweep_grid:
        raise ExperimentSpecError(f"{experiment_id.value}: sweep grid is empty")

    replications = DEFAULT_REPLICATIONS
    if overrides is not None and overrides.replications is not None:
        replications = overrides.replications

    return ExperimentSpec(
        id=experiment_id,
        policies=policies,
        sweep_grid=sweep_grid,
        replications=replications,
        base=base,
    )


def config_hash(spec: ExperimentSpec) -> str:
    document = json.dumps(spec.model_dump(mode="json"), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(document.encode("utf-8")).hexdigest()


# ============================================================================
# Runners
# ============================================================================

def _run_sweep(spec: ExperimentSpec, expected: ExperimentId, jobs: Optional[int]) -> ExperimentResult:
    if spec.id is not expected:
        raise ExperimentSpecError(f"runner for '{expected.value}' got a '{spec.id.value}' spec")

    scenarios = [spec.base.with_overrides(point) for point in spec.sweep_grid]
    rows = []
    for policy in spec.policies:
        for point, scenario in zip(spec.sweep_grid, scenarios):
            summary = run_monte_carlo(
                spec.replications, scenario.trial, policy, scenario.game, scenario.ids, jobs=jobs
            )
            rows.append(
                ExperimentRow(
                    experiment=spec.id.value,
                    policy=policy.policy_id,
                    param_overrides=point,
                    mean_utility=summary.mean_utility,
                    std_error=summary.std_error,
                    replications=summary.n_trials,
                    seed=scenario.trial.seed,
                    trial_totals=[t.total_utility for t in summary.per_trial],
                    event_digests=[t.event_digest for t in summary.per_trial],
                )
            )
        log.info(f"{spec.id.value}: {policy.policy_id} done over {len(scenarios)} grid points")

    return ExperimentResult(
        experiment=spec.id,
        sweep_keys=SWEEP_KEYS[spec.id],
        rows=rows,
        provenance=Provenance(
            config_hash=config_hash(spec),
            base_seed=spec.base.trial.seed,
            artifact_version=__version__,
        ),
    )


@log_function(log_args=False, log_result=False)
def run_fp_penalty_comparison(spec: ExperimentSpec, jobs: Optional[int] = None) -> ExperimentResult:
    """Every policy with and without the false-positive penalty."""
    return _run_sweep(spec, ExperimentId.FP_PENALTY, jobs)


@log_function(log_args=False, log_result=False)
def run_cost_penalty_sweep(spec: ExperimentSpec, jobs: Optional[int] = None) -> ExperimentResult:
    """Every policy over the honeypot cost x false-positive penalty grid."""
    return _run_sweep(spec, ExperimentId.COST_PENALTY, jobs)


@log_function(log_args=False, log_result=False)
def run_attack_rate_sweep(spec: ExperimentSpec, jobs: Optional[int] = None) -> ExperimentResult:
    """Every policy over the attack-rate grid."""
    return _run_sweep(spec, ExperimentId.ATTACK_RATE, jobs)


RUNNERS = {
    ExperimentId.FP_PENALTY: run_fp_penalty_comparison,
    ExperimentId.COST_PENALTY: run_cost_penalty_sweep,
    ExperimentId.ATTACK_RATE: run_attack_rate_sweep,
}


# ============================================================================
# Export
# ============================================================================

def overrides_json(overrides: dict[str, float]) -> str:
    return json.dumps(overrides, sort_keys=True, separators=(",", ":"))


def write_csv(res: ExperimentResult, path: Path) -> None:
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\r\n")
        writer.writerow(CSV_COLUMNS)
        for row in res.rows:
            writer.writerow([
                row.experiment,
                row.policy,
                overrides_json(row.param_overrides),
                repr(row.mean_utility),
                repr(row.std_error),
                row.replications,
                row.seed,
            ])


def write_json(res: ExperimentResult, path: Path) -> None:
    document = res.model_dump(mode="json")
    with path.open("w", encoding="utf-8") as f:
        json.dump(document, f, indent=2, sort_keys=True)
        f.write("\n")


def _series(rows: list[ExperimentRow], x_key: str) -> tuple[list[float], list[float], list[float]]:
    points = sorted(rows, key=lambda r: r.param_overrides[x_key])
    return (
        [r.param_overrides[x_key] for r in points],
        [r.mean_utility for r in points],
        [r.std_error for r in points],
    )


def plot_results(res: ExperimentResult, path: Path) -> None:
    """Mean utility against the swept parameter, one series per policy."""
    policies = list(dict.fromkeys(row.policy for row in res.rows))
    x_key = res.sweep_keys[0]

    if len(res.sweep_keys) > 1:
        panel_key = res.sweep_keys[1]
        panels = sorted({row.param_overrides[panel_key] for row in res.rows})
    else:
        panel_key, panels = None, [None]

    fig, axes = plt.subplots(1, len(panels), figsize=(6 * len(panels), 5), sharey=True, squeeze=False)
    for ax, panel in zip(axes[0], panels):
        for policy in policies:
            rows = [
                r for r in res.rows_for(policy)
                if panel_key is None or r.param_overrides[panel_key] == panel
            ]
            x, y, err = _series(rows, x_key)
            ax.errorbar(x, y, yerr=err, marker="o", capsize=3, label=policy)
        ax.set_xlabel(x_key)
        if panel_key is not None:
            ax.set_title(f"{panel_key} = {panel:g}")
        ax.grid(alpha=0.25)
    axes[0][0].set_ylabel("mean utility per event")
    axes[0][-1].legend(fontsize=8)
    fig.suptitle(res.experiment.value)
    fig.tight_layout()

    with plt.rc_context({"svg.hashsalt": "honeygame", "svg.fonttype": "none"}):
        fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


@log_function(log_args=False, log_result=True)
def export_results(res: ExperimentResult, out_dir: Path) -> list[Path]:
    """
    Write results.csv, results.json and (when there are rows) <experiment>.svg.

    Raises:
        ExportError: any I/O failure, carrying the offending path
    """
    out_dir = Path(out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise ExportError(e.strerror or str(e), path=out_dir) from e

    written = []
    targets = [(out_dir / "results.csv", write_csv), (out_dir / "results.json", write_json)]
    if res.rows:
        targets.append((out_dir / f"{res.experiment.value}.svg", plot_results))

    for path, writer in targets:
        try:
            writer(res, path)
        except OSError as e:
            raise ExportError(e.strerror or str(e), path=path) from e
        written.append(path)

    log.info(f"exported {len(res.rows)} rows to {out_dir}")
    return written
