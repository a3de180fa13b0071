"""
`experiment`: run one of the deployment studies, or all of them.
"""
import argparse
from pathlib import Path

from honeygame.core.config import RunConfig
from honeygame.experiments import RUNNERS, build_spec, export_results, parse_experiment_id
from honeygame.models.experiment import ExperimentId, ExperimentResult


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser(
        "experiment",
        parents=parents,
        help="Run a parameter sweep study",
        description="Run fp-penalty, cost-penalty, attack-rate or all, and export CSV/JSON/SVG results.",
    )
    parser.add_argument("which", metavar="EXPERIMENT", help="fp-penalty, cost-penalty, attack-rate or all")
    parser.set_defaults(handler=cmd_experiment)


def print_summary(res: ExperimentResult) -> None:
    print("\n" + "=" * 72)
    print(f"{res.experiment.value.upper()} ({len(res.rows)} rows)")
    print("=" * 72)
    for row in res.rows:
        point = ", ".join(f"{key}={value:g}" for key, value in row.param_overrides.items())
        print(f"{row.policy:<14} {point:<52} {row.mean_utility:>10.4f} ± {row.std_error:.4f}")
    print("-" * 72)
    print("best policy per grid point:")
    for point, policy, mean in res.best_by_grid_point():
        label = ", ".join(f"{key}={value:g}" for key, value in point.items())
        print(f"  {label:<52} {policy:<14} {mean:.4f}")


def cmd_experiment(config: RunConfig, args: argparse.Namespace) -> int:
    if args.which.strip().lower() == "all":
        targets = [(experiment_id, Path(config.out_dir) / experiment_id.value) for experiment_id in ExperimentId]
    else:
        targets = [(parse_experiment_id(args.which), Path(config.out_dir))]

    for experiment_id, out_dir in targets:
        spec = build_spec(config, experiment_id)
        result = RUNNERS[experiment_id](spec, jobs=args.jobs)
        written = export_results(result, out_dir)
        print_summary(result)
        for path in written:
            print(f"wrote {path}")
    return 0
