"""Thread-safe memoization of evaluator results."""

from __future__ import annotations

import threading
from dataclasses import dataclass

from imcdse.modules.evaluator.models import HwMetrics, InfeasibleMappingError, ModelCoefficients
from imcdse.modules.evaluator.service import evaluate
from imcdse.modules.space.models import DesignPoint, HardwareConfig, Mode
from imcdse.modules.workload.models import Workload

CacheKey = tuple[tuple[int, ...], str, str]


@dataclass(frozen=True)
class CacheStats:
    """Hit/miss counters of an EvaluationCache."""

    hits: int
    misses: int
    entries: int


class EvaluationCache:
    """Memo of (gene, workload name, mode) -> HwMetrics.

    Infeasible mappings are cached too and re-raised on a hit. Inserts are
    idempotent: the first stored value for a key wins.
    """

    def __init__(self, enabled: bool = True) -> None:
        self.enabled = enabled
        self._entries: dict[CacheKey, HwMetrics | InfeasibleMappingError] = {}
        self._lock = threading.Lock()
        self._hits = 0
        self._misses = 0

    def get(self, key: CacheKey) -> HwMetrics | InfeasibleMappingError | None:
        """Look up a key, counting the hit or miss."""
        with self._lock:
            value = self._entries.get(key) if self.enabled else None
            if value is None:
                self._misses += 1
            else:
                self._hits += 1
            return value

    def put(self, key: CacheKey, value: HwMetrics | InfeasibleMappingError) -> None:
        """Store a value unless the key is already present."""
        if not self.enabled:
            return
        with self._lock:
            self._entries.setdefault(key, value)

    def stats(self) -> CacheStats:
        """Snapshot of the counters."""
        with self._lock:
            return CacheStats(hits=self._hits, misses=self._misses, entries=len(self._entries))

    def __len__(self) -> int:
        with self._lock:
            return len(self._entries)


def lookup_or_evaluate(
    cache: EvaluationCache,
    point: DesignPoint,
    config: HardwareConfig,
    workload: Workload,
    mode: Mode,
    coeffs: ModelCoefficients,
) -> tuple[HwMetrics | InfeasibleMappingError, bool]:
    """Cached outcome of one evaluation and whether the evaluator had to run.

    An infeasible mapping is returned, not raised. The key does not include
    the coefficients, so one cache must only ever serve a single coefficient set.

    Raises:
        ZeroWorkloadError: If the workload has no MACs
    """
    key: CacheKey = (point.gene, workload.name, mode)
    hit = cache.get(key)
    if hit is not None:
        return hit, False

    outcome: HwMetrics | InfeasibleMappingError
    try:
        outcome = evaluate(config, workload, mode, coeffs)
    except InfeasibleMappingError as e:
        outcome = e
    cache.put(key, outcome)
    return outcome, True


def cached_evaluate(
    cache: EvaluationCache,
    point: DesignPoint,
    config: HardwareConfig,
    workload: Workload,
    mode: Mode,
    coeffs: ModelCoefficients,
) -> HwMetrics:
    """Evaluate through the cache; behaves exactly like evaluate().

    Raises:
        InfeasibleMappingError: If the mapping is infeasible (also when cached)
        ZeroWorkloadError: If the workload has no MACs
    """
    outcome, _ = lookup_or_evaluate(cache, point, config, workload, mode, coeffs)
    if isinstance(outcome, InfeasibleMappingError):
        raise outcome
    return outcome
