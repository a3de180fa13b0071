# main entry point of the CLI, where every command starts from
import argparse
import sys
from typing import Any, Optional

from pydantic import BaseModel

from honeygame import __version__
from honeygame.commands import experiment, simulate, solve
from honeygame.core.config import StrategySettings, load_run_config
from honeygame.core.errors import HoneygameError
from honeygame.core.logger import log_command
from honeygame.models.experiment import ExperimentOverrides
from honeygame.models.game import GameParameters
from honeygame.models.ids import IdsParameters
from honeygame.models.trial import TrialConfig

# Config sections that get one --section.field flag per field.
SECTIONS: dict[str, type[BaseModel]] = {
    "game": GameParameters,
    "ids": IdsParameters,
    "trial": TrialConfig,
    "strategy": StrategySettings,
    "experiment": ExperimentOverrides,
}

# Short spellings for the experiment section.
ALIASES = {
    "experiment.grid": "--grid",
    "experiment.replications": "--replications",
}

NULL_VALUES = ("none", "null")


def _add_section_flags(parser: argparse.ArgumentParser) -> None:
    for section, model in SECTIONS.items():
        group = parser.add_argument_group(f"{section} overrides")
        for name, field in model.model_fields.items():
            dest = f"{section}.{name}"
            # the top-level --seed is authoritative for the trial seed
            if dest == "trial.seed":
                continue
            flags = [f"--{section}.{name.replace('_', '-')}"]
            if dest in ALIASES:
                flags.append(ALIASES[dest])
            default = "required" if field.is_required() else repr(field.get_default(call_default_factory=True))
            group.add_argument(*flags, dest=dest, default=None, metavar="VALUE", help=f"(config: {default})")

    parser.add_argument(
        "--include-equilibrium",
        dest="experiment.include_equilibrium",
        action="store_const",
        const=True,
        default=None,
        help="Add fixed-beta policies for the game's equilibria to every study",
    )


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON run config (default: canonical.json)")
    common.add_argument("--seed", type=int, help="Base seed; fully determines every random draw")
    common.add_argument("--out-dir", dest="out_dir", help="Directory for output files")
    common.add_argument("--jobs", type=int, help="Worker processes for trials (default: 1)")
    common.add_argument("--policies", help="Comma-separated policy specs for experiments")
    _add_section_flags(common)

    parser = argparse.ArgumentParser(
        prog="honeygame",
        description="Honeypot deployment game solver and Monte Carlo simulator",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    for command in (solve, simulate, experiment):
        command.register(subparsers, parents=[common])
    return parser


def collect_overrides(args: argparse.Namespace) -> dict[str, Any]:
    """Dotted config overrides from the parsed command line."""
    overrides: dict[str, Any] = {}
    for key, value in vars(args).items():
        if value is None:
            continue
        if "." in key:
            if isinstance(value, str) and value.strip().lower() in NULL_VALUES:
                value = None
            overrides[key] = value
        elif key in ("seed", "out_dir", "policies"):
            overrides[key] = value
    return overrides


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    with log_command(args.command) as state:
        try:
            config = load_run_config(args.config, collect_overrides(args))
            state["exit_code"] = args.handler(config, args)
        except HoneygameError as e:
            print(f"error: {e.detail}", file=sys.stderr)
            state["exit_code"] = e.exit_code

    return state["exit_code"]


if __name__ == "__main__":
    sys.exit(main())
