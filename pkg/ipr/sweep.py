"""
Universe-size sweep for a matrix.
Runs the scale verifier for a range of N and tabulates where the verdict
flips from escaping to forced.
"""

from dataclasses import dataclass
from typing import Optional

import pandas as pd

from utils import setup_logger

from .matrixcore import FinMatrix
from .search import VerdictKind, verify_at_scale


@dataclass
class SweepConfig:
    """Configuration for a universe sweep"""
    colors: int = 2
    n_from: int = 1
    n_to: int = 9
    x_max: Optional[int] = None
    strong: bool = False
    threads: int = 1
    budget: Optional[int] = None

    def __post_init__(self):
        if self.n_from < 1 or self.n_to < self.n_from:
            raise ValueError(f"bad universe range {self.n_from}..{self.n_to}")


def sweep_universe(A: FinMatrix, config: SweepConfig) -> pd.DataFrame:
    """
    One verdict per universe size N in [n_from, n_to].

    x_max follows N unless fixed in the config.

    Returns:
        DataFrame with columns universe, x_max, kind, checked, counter, resume
    """
    logger = setup_logger("ipr.sweep")
    records = []
    for n in range(config.n_from, config.n_to + 1):
        x_max = config.x_max if config.x_max is not None else n
        verdict = verify_at_scale(A, config.colors, n, x_max,
                                  strong=config.strong, threads=config.threads,
                                  budget=config.budget)
        logger.info(f"N={n}, x_max={x_max}: {verdict.kind.value}")
        records.append({
            'universe': n,
            'x_max': x_max,
            'kind': verdict.kind.value,
            'checked': verdict.checked,
            'counter': verdict.counter,
            'resume': verdict.resume,
        })
        if verdict.kind == VerdictKind.BUDGET_EXHAUSTED:
            logger.warning(f"Budget exhausted at N={n}, stopping sweep")
            break

    table = pd.DataFrame.from_records(
        records, columns=['universe', 'x_max', 'kind', 'checked', 'counter', 'resume'])
    # Nullable integers keep counters exact (no NaN floats)
    return table.astype({'counter': 'Int64', 'resume': 'Int64'})


def first_forced(table: pd.DataFrame) -> Optional[int]:
    """Smallest N whose verdict is ForcedAtScale, or None."""
    forced = table[table['kind'] == VerdictKind.FORCED_AT_SCALE.value]
    if forced.empty:
        return None
    return int(forced['universe'].min())
