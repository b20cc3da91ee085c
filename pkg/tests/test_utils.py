from src.utils.display import format_check_row
from src.utils.progress import ScenarioProgress


def test_progress_handlers_receive_updates():
    board = ScenarioProgress()
    seen = []
    handler = board.register_handler(lambda step, target, status, ts: seen.append((step, target, status)))
    board.update_status("wandering", "k=1/3", "Building unitary")
    board.update_status("wandering", None, "Done")
    board.unregister_handler(handler)
    board.update_status("closure", "cone-P", "Comparing kernels")
    assert seen == [("wandering", "k=1/3", "Building unitary"), ("wandering", None, "Done")]
    assert board.get_all_status()["wandering"] == {"target": "k=1/3", "status": "Done", "display_name": "Wandering"}


def test_check_rows_carry_verdict():
    assert "PASS" in format_check_row("cauchy residual", 0.0, 1e-12, "<=", True)[3]
    assert "FAIL" in format_check_row("cauchy residual", 1.0, 1e-12, "<=", False)[3]
