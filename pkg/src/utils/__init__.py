"""Terminal display and live progress helpers."""
