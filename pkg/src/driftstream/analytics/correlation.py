"""Lagged cross-correlation between the social signal and case counts.

Lag convention: a positive lag means the social series leads the physical
series — social activity on day d is compared with cases on day d+lag.
The best lag maximizes Pearson r over [-max_lag, +max_lag], ties broken
toward the smallest |lag| (positive preferred on an exact tie).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..timeutil import DAY, day_start

DEFAULT_MAX_LAG_DAYS = 21
MIN_POINTS = 3


@dataclass
class TimeSeries:
    region: str
    granularity: str = "day"  # minute | day | month
    points: list[tuple[float, int]] = field(default_factory=list)

    def __post_init__(self):
        if self.granularity not in ("minute", "day", "month"):
            raise ValueError(f"unknown granularity: {self.granularity!r}")
        starts = [p[0] for p in self.points]
        if any(prev >= nxt for prev, nxt in zip(starts, starts[1:])):
            raise ValueError("time series buckets must be strictly increasing")
        if any(c < 0 for _, c in self.points):
            raise ValueError("counts must be non-negative")

    def as_daily_array(self) -> tuple[int, np.ndarray]:
        """(first day index, dense daily counts with gaps filled as 0)."""
        if not self.points:
            return 0, np.zeros(0)
        days = [int(day_start(t) // DAY) for t, _ in self.points]
        first, last = days[0], days[-1]
        dense = np.zeros(last - first + 1)
        for day, (_, count) in zip(days, self.points):
            dense[day - first] += count
        return first, dense


def daily_series(region: str, day_counts: dict[float, int]) -> TimeSeries:
    points = [(day_start(t), int(c)) for t, c in sorted(day_counts.items())]
    return TimeSeries(region=region, granularity="day", points=points)


@dataclass
class CorrelationResult:
    region: str
    best_lag: Optional[int]
    r: Optional[float]
    n: int
    undefined_reason: Optional[str] = None

    def to_json_obj(self) -> dict:
        return {
            "region": self.region,
            "best_lag": self.best_lag,
            "r": None if self.r is None else round(self.r, 6),
            "n": self.n,
            "undefined_reason": self.undefined_reason,
        }


def _pearson(x: np.ndarray, y: np.ndarray) -> Optional[float]:
    if x.std() == 0.0 or y.std() == 0.0:
        return None
    return float(np.corrcoef(x, y)[0, 1])


def lagged_correlation(
    social: TimeSeries,
    cases: TimeSeries,
    max_lag: int = DEFAULT_MAX_LAG_DAYS,
) -> CorrelationResult:
    """Best-lag Pearson correlation between two daily series of one region."""
    if social.region != cases.region:
        raise ValueError(
            f"series regions differ: {social.region!r} vs {cases.region!r}"
        )
    if social.granularity != "day" or cases.granularity != "day":
        raise ValueError("lagged correlation expects daily series")

    s_first, s = social.as_daily_array()
    c_first, c = cases.as_daily_array()
    if len(s) == 0 or len(c) == 0:
        return CorrelationResult(social.region, None, None, 0, "insufficient_overlap")

    overlap = min(s_first + len(s), c_first + len(c)) - max(s_first, c_first)
    if overlap < max_lag + MIN_POINTS:
        return CorrelationResult(social.region, None, None, max(overlap, 0), "insufficient_overlap")

    best: Optional[tuple[float, int, int]] = None  # (r, lag, n)
    saw_zero_variance = False
    # Smallest |lag| first, positive before negative, so the first strict
    # maximum implements the tie-break rule.
    lags = sorted(range(-max_lag, max_lag + 1), key=lambda l: (abs(l), l < 0))
    for lag in lags:
        # pair social day d with cases day d+lag
        lo = max(s_first, c_first - lag)
        hi = min(s_first + len(s), c_first + len(c) - lag)
        n = hi - lo
        if n < MIN_POINTS:
            continue
        xs = s[lo - s_first : hi - s_first]
        ys = c[lo + lag - c_first : hi + lag - c_first]
        r = _pearson(xs, ys)
        if r is None:
            saw_zero_variance = True
            continue
        if best is None or r > best[0]:
            best = (r, lag, n)

    if best is None:
        reason = "zero_variance" if saw_zero_variance else "insufficient_overlap"
        return CorrelationResult(social.region, None, None, 0, reason)
    r, lag, n = best
    return CorrelationResult(social.region, lag, r, n)


def correlate_regions(
    social_by_region: dict[str, TimeSeries],
    cases_by_region: dict[str, TimeSeries],
    max_lag: int = DEFAULT_MAX_LAG_DAYS,
) -> list[CorrelationResult]:
    results = []
    for region in sorted(set(social_by_region) & set(cases_by_region)):
        results.append(
            lagged_correlation(social_by_region[region], cases_by_region[region], max_lag)
        )
    return results
