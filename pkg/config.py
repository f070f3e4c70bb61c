from __future__ import annotations
import os

from dotenv import load_dotenv
load_dotenv()

# -----------------------------
# Config defaults
# -----------------------------
DEFAULT_SEED = int(os.getenv("RFOREST_SEED", "0"))
DEFAULT_CASES = int(os.getenv("RFOREST_CASES", "1000"))
DEFAULT_MAX_DENOMINATOR = int(os.getenv("RFOREST_MAX_DENOMINATOR", "64"))
# Only limits which naturals may be *named* in the tail space; the space itself is infinite.
TAIL_TRUNCATION_BOUND = int(os.getenv("RFOREST_TAIL_BOUND", str(2 ** 16)))
DEFAULT_BASE_URL = os.getenv("RFOREST_BASE_URL", "http://127.0.0.1:8000")
LOG_LEVEL = os.getenv("RFOREST_LOG_LEVEL", "WARNING")

DEFAULT_MAX_BREAKPOINTS = 6
DEFAULT_MAX_FAMILY = 6
DEFAULT_MAX_INTERVALS = 4
