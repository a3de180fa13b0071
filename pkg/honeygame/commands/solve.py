"""
`solve`: enumerate the equilibria of the configured game.
"""
import argparse
import json
from pathlib import Path
from typing import Optional

from honeygame.core.config import RunConfig
from honeygame.core.errors import ExportError, UndefinedPosteriorError
from honeygame.core.logger import logger
from honeygame.game import deployment_rhs, pure_deploy_condition, signal_deploy_gain
from honeygame.models.game import Equilibrium, Signal, StrategyProfile
from honeygame.models.ids import SignalModel
from honeygame.solver import enumerate_equilibria, verify_equilibrium

log = logger.getChild("solve")


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser(
        "solve",
        parents=parents,
        help="Find every Bayesian Nash equilibrium of the game",
        description="Enumerate equilibria, check the pure deployment condition and write equilibria.json.",
    )
    parser.set_defaults(handler=cmd_solve)


def _describe(equilibrium: Equilibrium) -> str:
    beta, alpha_soph, alpha_naive = equilibrium.profile.as_tuple()
    text = f"{equilibrium.kind.value:<16} beta={beta:.6g}  alpha_S={alpha_soph:.6g}  alpha_N={alpha_naive:.6g}"
    if equilibrium.continuum is not None:
        text = f"{equilibrium.kind.value:<16} {equilibrium.continuum.describe()}"
    return text


def _signal_gains(profile: StrategyProfile, config: RunConfig, signal_model: SignalModel) -> dict[str, Optional[float]]:
    """Deploy gain after each signal; None when the signal cannot occur."""
    gains: dict[str, Optional[float]] = {}
    for signal in Signal:
        try:
            gains[signal.value] = signal_deploy_gain(signal, profile, config.game, signal_model)
        except UndefinedPosteriorError as e:
            log.warning(e.detail)
            gains[signal.value] = None
    return gains


def cmd_solve(config: RunConfig, args: argparse.Namespace) -> int:
    params = config.game
    equilibria = enumerate_equilibria(params)
    signal_model = config.ids.signal_model()

    alpha_soph, alpha_naive = config.trial.p_attack_soph, config.trial.p_attack_naive
    rhs = deployment_rhs(alpha_soph, alpha_naive, params)
    holds = pure_deploy_condition(alpha_soph, alpha_naive, params)

    print("=" * 60)
    print(f"EQUILIBRIA ({len(equilibria)})")
    print("=" * 60)
    records = []
    for equilibrium in equilibria:
        report = verify_equilibrium(equilibrium.profile, params)
        gains = _signal_gains(equilibrium.profile, config, signal_model)
        print(_describe(equilibrium))
        print(
            f"    residuals: defender={report.defender_gain:.3g} "
            f"sophisticated={report.sophisticated_gain:.3g} naive={report.naive_gain:.3g}"
        )
        print(
            "    deploy gain after signal: "
            + ", ".join(f"{name}=" + ("undefined" if gain is None else f"{gain:+.4g}") for name, gain in gains.items())
        )
        records.append(
            {
                "equilibrium": equilibrium.model_dump(mode="json"),
                "verification": report.model_dump(mode="json"),
                "signal_deploy_gain": gains,
            }
        )

    verdict = "holds" if holds else "does not hold"
    print("-" * 60)
    print(
        f"pure deployment condition at alpha=({alpha_soph:g}, {alpha_naive:g}): "
        f"C_h={params.cost_honeypot:g} < {rhs:.6g} {verdict}"
    )

    document = {
        "equilibria": records,
        "pure_deploy_condition": {
            "alpha_soph": alpha_soph,
            "alpha_naive": alpha_naive,
            "cost_honeypot": params.cost_honeypot,
            "deployment_value": rhs,
            "holds": holds,
        },
    }
    out_dir = Path(config.out_dir)
    path = out_dir / "equilibria.json"
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8") as f:
            json.dump(document, f, indent=2, sort_keys=True)
            f.write("\n")
    except OSError as e:
        raise ExportError(e.strerror or str(e), path=path) from e

    print(f"wrote {path}")
    return 0
