import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import questionary
from colorama import Fore, Style

from src.errors import InvalidInputError
from src.experiments.config import SCENARIO_ORDER


class UsageError(InvalidInputError):
    """Bad command line; reported with exit status 1."""


class _Parser(argparse.ArgumentParser):
    # argparse would exit with status 2, which is reserved for property failures.
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def add_scenario_args(parser: argparse.ArgumentParser) -> argparse.ArgumentParser:
    parser.add_argument(
        "scenario",
        nargs="?",
        type=str,
        help="Scenario to run (" + ", ".join(value.value for _, value in SCENARIO_ORDER) + "). Prompted for when omitted.",
    )
    return parser


def add_override_args(parser: argparse.ArgumentParser) -> argparse.ArgumentParser:
    parser.add_argument("--config", dest="config_path", type=Path, help="JSON config file")
    parser.add_argument("--seed", type=int, help="Random seed (overrides NCMONTEL_SEED and the config file)")
    parser.add_argument("--tol", type=float, help="Override the scenario's primary tolerance")
    parser.add_argument("--truncation", type=int, help="Truncation M of H = C^M")
    parser.add_argument("--out", dest="out_dir", type=Path, help="Output directory for report.json and trace.csv")
    return parser


def select_scenario() -> Optional[str]:
    choice = questionary.select(
        "Select a scenario to run:",
        choices=[questionary.Choice(display, value=value.value) for display, value in SCENARIO_ORDER],
        style=questionary.Style(
            [
                ("selected", "fg:green bold"),
                ("pointer", "fg:green bold"),
                ("highlighted", "fg:green"),
                ("answer", "fg:green bold"),
            ]
        ),
    ).ask()
    if choice:
        print(f"\nSelected scenario: {Fore.GREEN + Style.BRIGHT}{choice}{Style.RESET_ALL}\n")
    return choice


@dataclass
class CLIInputs:
    scenario: Optional[str]
    config_path: Optional[Path] = None
    seed: Optional[int] = None
    tol: Optional[float] = None
    truncation: Optional[int] = None
    out_dir: Optional[Path] = None
    raw_args: Optional[argparse.Namespace] = None


def build_parser(description: str = "Run an nc Montel experiment scenario") -> argparse.ArgumentParser:
    parser = _Parser(prog="ncmontel", description=description)
    add_scenario_args(parser)
    add_override_args(parser)
    return parser


def parse_cli_inputs(argv: Optional[list[str]] = None, *, interactive: Optional[bool] = None) -> CLIInputs:
    """Parse flags; without a scenario argument ask for one when stdin is a terminal."""
    args = build_parser().parse_args(argv)
    scenario = args.scenario
    if scenario is None:
        interactive = sys.stdin.isatty() if interactive is None else interactive
        if not interactive:
            raise UsageError("no scenario given")
        scenario = select_scenario()
        if not scenario:
            raise UsageError("no scenario selected")

    return CLIInputs(
        scenario=scenario,
        config_path=args.config_path,
        seed=args.seed,
        tol=args.tol,
        truncation=args.truncation,
        out_dir=args.out_dir,
        raw_args=args,
    )
