from __future__ import annotations

from typing import Optional

from colorama import init
from dotenv import load_dotenv
from pydantic import ValidationError

from src.cli.input import parse_cli_inputs
from src.errors import NcMontelError
from src.utils.display import format_check_row, print_error, print_scenario_summary
from src.utils.progress import progress

from .config import load_config
from .scenarios import run_scenario


def main(argv: Optional[list[str]] = None) -> int:
    """Exit status: 0 all checks pass, 1 bad input or error, 2 a property check failed."""
    load_dotenv()
    init(autoreset=True)

    try:
        inputs = parse_cli_inputs(argv)
        config = load_config(
            inputs.scenario,
            config_path=inputs.config_path,
            seed=inputs.seed,
            tol=inputs.tol,
            truncation=inputs.truncation,
            out_dir=inputs.out_dir,
        )
    except (NcMontelError, ValidationError) as exc:
        print_error(str(exc))
        return 1

    progress.reset()
    progress.start()
    try:
        outcome = run_scenario(config)
    except NcMontelError as exc:
        print_error(f"{type(exc).__name__}: {exc}")
        return 1
    except OSError as exc:
        print_error(f"cannot write outputs: {exc}")
        return 1
    finally:
        progress.stop()

    rows = [format_check_row(c.name, c.value, c.threshold, c.relation, c.passed) for c in outcome.checks]
    print_scenario_summary(config.scenario.value, rows, passed=outcome.passed, paths=outcome.paths)
    return outcome.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
