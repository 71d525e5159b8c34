"""Environment variables and constants for fedmode runs."""

import os
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()

LOG_LEVEL = os.getenv("FEDMODE_LOG_LEVEL", "INFO")
METRICS_PORT = int(os.getenv("FEDMODE_METRICS_PORT", "0") or 0)
OUTPUT_DIR = Path(os.getenv("FEDMODE_OUTPUT_DIR", "runs/default"))
RUN_SLOW_TESTS = os.getenv("FEDMODE_RUN_SLOW", "0") == "1"

SEED_ENV_VAR = "FEDMODE_SEED"


def seed_override() -> int | None:
    """Master seed from FEDMODE_SEED, read at call time so tests can set it."""
    raw = os.getenv(SEED_ENV_VAR)
    if raw is None or raw.strip() == "":
        return None
    return int(raw)
