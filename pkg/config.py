"""
Central configuration – all settings are read from environment variables
(or a .env file loaded by python-dotenv).
"""
from __future__ import annotations

import os
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()

# ─── Limits ──────────────────────────────────────────────────────────────────
# cochain spaces grow as dim^(k+1); both guards run before any space is built
HOMNR_MAX_DIM: int = int(os.getenv("HOMNR_MAX_DIM", "6"))
HOMNR_MAX_DEGREE: int = int(os.getenv("HOMNR_MAX_DEGREE", "4"))

# ─── Paths ───────────────────────────────────────────────────────────────────
FIXTURES_PATH = Path(os.getenv("FIXTURES_PATH", "./fixtures"))

# ─── Output ──────────────────────────────────────────────────────────────────
DEFAULT_OUTPUT: str = os.getenv("DEFAULT_OUTPUT", "json")

# ─── Logging ─────────────────────────────────────────────────────────────────
LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")
LOG_FILE: str = os.getenv("LOG_FILE", "")
