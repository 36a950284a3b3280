"""
Configuration settings for the IPR matrix lab.

Contains default search settings, the registry of built-in infinite
matrix families, and the process exit codes used by the CLI.
"""

from typing import Dict, Any
from pydantic_settings import BaseSettings


class IPRSettings(BaseSettings):
    """Main configuration for classification, construction and search."""

    # Search settings
    BUDGET: int = 2 ** 26
    DEFAULT_THREADS: int = 1
    CHUNK_SIZE: int = 1024
    SAMPLE_WITNESSES: int = 8

    # Classification settings
    D_MAX: int = 4

    # Logging settings
    LOG_LEVEL: str = "INFO"
    LOG_TO_FILE: bool = False
    LOG_DIR: str = "logs"
    SHOW_PROGRESS: bool = True

    class Config:
        env_file = ".env"
        env_prefix = "IPR_"


def get_settings() -> IPRSettings:
    """Read settings from the environment (and a local .env file)."""
    return IPRSettings()


# Built-in infinite families understood by `truncate`
FAMILY_CONFIGS: Dict[str, Dict[str, Any]] = {
    "identity": {
        "name": "Identity",
        "description": "row n has a single 1 in column n",
        "params": {},
        "finite_rows": False,
    },
    "fs": {
        "name": "Finite sums",
        "description": "rows are the nonzero 0/1 vectors in binary counting order; "
                       "nvars limits the number of variables",
        "params": {"nvars": "optional positive integer"},
        "finite_rows": "when nvars is given",
    },
    "vdw-tower": {
        "name": "Van der Waerden tower",
        "description": "row n is (1, n): every arithmetic progression length at once",
        "params": {},
        "finite_rows": False,
    },
    "schur-tower": {
        "name": "Schur tower",
        "description": "block diagonal of infinitely many Schur matrices",
        "params": {},
        "finite_rows": False,
    },
    "unit-triangular": {
        "name": "Unit triangular",
        "description": "row n has ones in columns 0..n",
        "params": {},
        "finite_rows": False,
    },
    "rows": {
        "name": "User rows",
        "description": "explicit list of sparse rows [[col, value], ...]",
        "params": {"rows": "list of sparse rows"},
        "finite_rows": True,
    },
}

# Process exit codes
EXIT_CODES: Dict[str, int] = {
    "ForcedAtScale": 0,
    "invalid": 1,
    "EscapingColoring": 2,
    "BudgetExhausted": 3,
    "usage": 64,
    "malformed": 65,
}
