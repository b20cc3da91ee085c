from typing import Sequence

from colorama import Fore, Style
from tabulate import tabulate


def _format_number(value) -> str:
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, (int, float)):
        return f"{value:.6g}"
    return str(value)


def format_check_row(name: str, value, threshold, relation: str, passed: bool) -> list:
    """Format one row of the scenario check table."""
    verdict_color = Fore.GREEN if passed else Fore.RED
    return [
        f"{Fore.CYAN}{name}{Style.RESET_ALL}",
        f"{Fore.WHITE}{_format_number(value)}{Style.RESET_ALL}",
        f"{Fore.WHITE}{relation} {_format_number(threshold)}{Style.RESET_ALL}",
        f"{verdict_color}{'PASS' if passed else 'FAIL'}{Style.RESET_ALL}",
    ]


def print_scenario_summary(scenario: str, rows: Sequence[list], *, passed: bool, paths: dict | None = None) -> None:
    """Print the check table of a finished scenario."""
    print(f"\n{Fore.WHITE}{Style.BRIGHT}SCENARIO:{Style.RESET_ALL} {Fore.CYAN}{scenario}{Style.RESET_ALL}")
    print(
        tabulate(
            rows,
            headers=[f"{Fore.WHITE}Check", "Value", "Threshold", "Verdict"],
            tablefmt="grid",
            colalign=("left", "right", "right", "center"),
        )
    )
    overall = f"{Fore.GREEN}ALL CHECKS PASSED" if passed else f"{Fore.RED}PROPERTY FAILURE"
    print(f"\n{Style.BRIGHT}{overall}{Style.RESET_ALL}")
    for label, path in (paths or {}).items():
        print(f"{label.title()}: {Fore.YELLOW}{path}{Style.RESET_ALL}")


def print_error(message: str) -> None:
    print(f"{Fore.RED}Error: {message}{Style.RESET_ALL}")
