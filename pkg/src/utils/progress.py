from datetime import datetime, timezone
from typing import Callable, Dict, List, Optional

from rich.console import Console
from rich.live import Live
from rich.style import Style
from rich.table import Table
from rich.text import Text

console = Console()

StatusHandler = Callable[[str, Optional[str], str, str], None]


class ScenarioProgress:
    """Live status board for the steps of a running scenario."""

    def __init__(self):
        self.step_status: Dict[str, Dict[str, Optional[str]]] = {}
        self.table = Table(show_header=False, box=None, padding=(0, 1))
        self.live = Live(self.table, console=console, refresh_per_second=4)
        self.started = False
        self.update_handlers: List[StatusHandler] = []

    def register_handler(self, handler: StatusHandler) -> StatusHandler:
        """Register a handler called as handler(step, target, status, timestamp)."""
        self.update_handlers.append(handler)
        return handler

    def unregister_handler(self, handler: StatusHandler) -> None:
        if handler in self.update_handlers:
            self.update_handlers.remove(handler)

    def start(self):
        if not self.started:
            self.live.start()
            self.started = True

    def stop(self):
        if self.started:
            self.live.stop()
            self.started = False

    def reset(self):
        self.step_status.clear()
        self._refresh_display()

    def update_status(self, step: str, target: Optional[str] = None, status: str = ""):
        """Record the status of ``step``; ``target`` names what it is working on."""
        info = self.step_status.setdefault(step, {"status": "", "target": None})
        if target:
            info["target"] = target
        if status:
            info["status"] = status

        timestamp = datetime.now(timezone.utc).isoformat()
        info["timestamp"] = timestamp

        for handler in self.update_handlers:
            handler(step, target, status, timestamp)

        if self.started:
            self._refresh_display()

    def get_all_status(self):
        return {step: {"target": info["target"], "status": info["status"], "display_name": self._get_display_name(step)} for step, info in self.step_status.items()}

    def _get_display_name(self, step: str) -> str:
        return step.replace("-", " ").replace("_", " ").title()

    def _refresh_display(self):
        self.table.columns.clear()
        self.table.add_column(width=100)

        for step, info in self.step_status.items():
            status = info["status"] or ""
            target = info["target"]
            if status.lower() == "done":
                style = Style(color="green", bold=True)
                symbol = "✓"
            elif status.lower() in ("error", "failed"):
                style = Style(color="red", bold=True)
                symbol = "✗"
            else:
                style = Style(color="yellow")
                symbol = "⋯"

            status_text = Text()
            status_text.append(f"{symbol} ", style=style)
            status_text.append(f"{self._get_display_name(step):<24}", style=Style(bold=True))
            if target:
                status_text.append(f"[{target}] ", style=Style(color="cyan"))
            status_text.append(status, style=style)

            self.table.add_row(status_text)


progress = ScenarioProgress()
