"""
Base engine class for chunked exhaustive searches.

Provides common functionality like worker pools, run statistics,
progress reporting and ordered aggregation of chunk results.
"""

import sys
from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime
from typing import Any, List, Optional

from tqdm import tqdm

from .logger_config import setup_logger


class BaseEngine(ABC):
    """Base class for searches that walk a range split into numbered chunks."""

    def __init__(self,
                 engine_name: str,
                 workers: int = 1,
                 show_progress: bool = False,
                 log_level: str = "INFO"):
        """
        Initialize the base engine.

        Args:
            engine_name: Name used for the logger and the run summary
            workers: Number of chunks scanned concurrently
            show_progress: Draw a progress bar on standard error
            log_level: Logging level for the engine logger
        """
        if workers < 1:
            raise ValueError(f"workers must be at least 1, got {workers}")

        self.engine_name = engine_name
        self.workers = workers
        self.show_progress = show_progress

        self.logger = setup_logger(f"engine_{engine_name}", log_level)

        # Statistics
        self.stats = {
            'items_checked': 0,
            'chunks_scanned': 0,
            'chunks_discarded': 0,
            'errors': 0,
            'start_time': None,
            'end_time': None
        }

    @abstractmethod
    def get_total_chunks(self) -> int:
        """
        Get the number of chunks in the search range.

        Returns:
            Total number of chunks
        """
        pass

    @abstractmethod
    def scan_chunk(self, index: int) -> Any:
        """
        Scan one chunk. Must not touch shared mutable state.

        Args:
            index: Chunk number, 0-based

        Returns:
            Chunk result handed to accept_chunk
        """
        pass

    @abstractmethod
    def accept_chunk(self, index: int, result: Any) -> bool:
        """
        Fold a chunk result into the run, in chunk order.

        Args:
            index: Chunk number
            result: Value returned by scan_chunk

        Returns:
            True to continue with the next chunk, False to stop
        """
        pass

    def count_items(self, result: Any) -> int:
        """Number of items a chunk result accounts for (for statistics)."""
        return 0

    def run_all(self, max_chunks: Optional[int] = None) -> None:
        """
        Scan chunks in batches of `workers` and fold them in order.

        Results of chunks after the stopping chunk are discarded, so the
        outcome does not depend on the number of workers.

        Args:
            max_chunks: Maximum number of chunks to scan (None for all)
        """
        self.logger.info(f"Starting {self.engine_name} run")
        self.stats['start_time'] = datetime.now()

        total = self.get_total_chunks()
        if max_chunks is not None:
            total = min(total, max_chunks)

        self.logger.debug(f"Scanning {total} chunks with {self.workers} workers")

        try:
            with ThreadPoolExecutor(max_workers=self.workers) as pool, \
                    tqdm(total=total, disable=not self.show_progress,
                         file=sys.stderr, desc=self.engine_name) as bar:
                index = 0
                while index < total:
                    batch = list(range(index, min(index + self.workers, total)))
                    results: List[Any] = list(pool.map(self.scan_chunk, batch))

                    stopped = False
                    for position, (chunk, result) in enumerate(zip(batch, results)):
                        self.stats['chunks_scanned'] += 1
                        self.stats['items_checked'] += self.count_items(result)
                        bar.update(1)
                        if not self.accept_chunk(chunk, result):
                            self.stats['chunks_discarded'] += len(batch) - position - 1
                            stopped = True
                            break

                    if stopped:
                        break
                    index = batch[-1] + 1

        except Exception as e:
            self.logger.error(f"Fatal error during {self.engine_name} run: {str(e)}")
            self.stats['errors'] += 1
            raise

        finally:
            self.stats['end_time'] = datetime.now()
            self._log_stats()

    def _log_stats(self):
        """Log run statistics."""
        duration = None
        if self.stats['start_time'] and self.stats['end_time']:
            duration = self.stats['end_time'] - self.stats['start_time']

        self.logger.info(
            f"{self.engine_name} finished: "
            f"{self.stats['items_checked']} items in "
            f"{self.stats['chunks_scanned']} chunks "
            f"({self.stats['chunks_discarded']} discarded), "
            f"errors {self.stats['errors']}, duration {duration}"
        )
