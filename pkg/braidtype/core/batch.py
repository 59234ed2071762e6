from __future__ import annotations

import logging
import threading
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Iterable, List, Optional, Sequence

try:
    from tqdm import tqdm
except ImportError:  # pragma: no cover - fallback when tqdm is missing
    tqdm = None  # type: ignore

from .braid import CanonicalBraid
from .classifier import DEFAULT_LOGGER_NAME, DEFAULT_WORKERS, Classifier, ClassifierConfig
from .errors import BraidError
from .reporting import BatchRecord

SLOW_ITEM_THRESHOLD_SECONDS = 2.0
LOG_HANDLER_NAME = "braidtype-stderr"
LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


def configure_logging(verbose: bool = False, debug: Iterable[str] = ()) -> logging.Logger:
    """Set up the ``braidtype`` logger for command-line use.

    ``verbose`` lowers the package level to INFO. Each name in ``debug`` is a
    child logger (``sliding``, ``classifycommand.classifier``, ...) raised to
    DEBUG on its own, so one stage can be traced without flooding the rest.
    Repeated calls reuse the single stderr handler.
    """
    logger = logging.getLogger(DEFAULT_LOGGER_NAME)
    logger.setLevel(logging.INFO if verbose else logging.WARNING)
    if not any(h.get_name() == LOG_HANDLER_NAME for h in logger.handlers):
        handler = logging.StreamHandler()
        handler.set_name(LOG_HANDLER_NAME)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logger.addHandler(handler)
    for name in debug:
        logger.getChild(name).setLevel(logging.DEBUG)
    return logger


class BatchClassifier:
    def __init__(
        self,
        n: int,
        lines: Sequence[str],
        config: Optional[ClassifierConfig] = None,
        workers: int = DEFAULT_WORKERS,
        *,
        logger: Optional[logging.Logger] = None,
        verbose: bool = False,
        show_progress: bool = True,
        progress_desc: str = "Classifying braids",
    ) -> None:
        self.n = n
        self.lines = list(lines)
        self.workers = max(1, workers)
        base_logger = logger or logging.getLogger(DEFAULT_LOGGER_NAME)
        self.logger = base_logger.getChild(self.__class__.__name__.lower())
        self.classifier = Classifier(config, base_logger)
        self.verbose = verbose
        self.show_progress = bool(show_progress)
        self.progress_desc = progress_desc
        self._progress_bar = None
        self._progress_lock = threading.Lock()
        self._slow_log_threshold = SLOW_ITEM_THRESHOLD_SECONDS

    def run(self) -> List[BatchRecord]:
        total = len(self.lines)
        if self.verbose:
            self.logger.info("Classifying %d braid(s) in B_%d", total, self.n)
        if not total:
            return []

        progress_bar = None
        if self.show_progress and tqdm is not None:
            progress_bar = tqdm(total=total, desc=self.progress_desc, unit="braid")
        elif self.show_progress and tqdm is None:
            self.logger.info("tqdm is not installed; progress bar disabled")

        records: List[Optional[BatchRecord]] = [None] * total
        executor = ThreadPoolExecutor(max_workers=self.workers)
        try:
            self._progress_bar = progress_bar
            futures = {
                executor.submit(self._classify_line, seq, line): seq
                for seq, line in enumerate(self.lines)
            }
            for future in as_completed(futures):
                seq = futures[future]
                try:
                    records[seq] = future.result()
                except BraidError as exc:
                    self.logger.warning("line %d: %s", seq + 1, exc)
                    records[seq] = BatchRecord(seq, self.lines[seq], self.n, error=str(exc))
                except Exception as exc:
                    if self.verbose:
                        self.logger.exception("Error classifying line %d", seq + 1)
                    else:
                        self.logger.warning("Error classifying line %d: %s", seq + 1, exc)
                    records[seq] = BatchRecord(
                        seq, self.lines[seq], self.n, error=f"internal error: {exc}", internal=True
                    )
                finally:
                    if progress_bar is not None:
                        progress_bar.update(1)
        except KeyboardInterrupt:
            if self.verbose:
                self.logger.info("Batch interrupted by user; shutting down workers")
            raise
        finally:
            executor.shutdown(wait=True, cancel_futures=True)
            if progress_bar is not None:
                progress_bar.close()
            self._progress_bar = None

        return [r for r in records if r is not None]

    def _classify_line(self, seq: int, line: str) -> BatchRecord:
        self._update_current_display(line)
        start = time.perf_counter()
        try:
            x = CanonicalBraid.parse(self.n, line)
        except BraidError as exc:
            self.logger.warning("line %d: %s", seq + 1, exc)
            return BatchRecord(seq, line, self.n, error=str(exc))
        result = self.classifier.classify(x)
        duration = time.perf_counter() - start
        self._maybe_log_slow_item(line, duration, x, result.stats.sliding_steps)
        return BatchRecord(seq, line, self.n, classification=result, seconds=duration)

    def _update_current_display(self, line: str) -> None:
        label = line if len(line) <= 40 else f"{line[:37]}..."
        if self._progress_bar is not None:
            with self._progress_lock:
                self._progress_bar.set_postfix_str(label, refresh=False)
                self._progress_bar.refresh()
        if self.logger.isEnabledFor(logging.DEBUG):
            self.logger.debug("Classifying %s", label)

    def _maybe_log_slow_item(self, line: str, duration: float, x: CanonicalBraid, slides: int) -> None:
        if not self.logger.isEnabledFor(logging.DEBUG):
            return
        if duration < self._slow_log_threshold:
            return

        reasons: List[str] = []
        if x.canonical_length >= 20:
            reasons.append("long normal form")
        if slides >= 1_000:
            reasons.append("many slidings")
        if not reasons:
            reasons.append("power search")

        self.logger.debug(
            "Slow classification of %s took %.2fs (%s). length=%d, slides=%d",
            line,
            duration,
            ", ".join(reasons),
            x.canonical_length,
            slides,
        )
