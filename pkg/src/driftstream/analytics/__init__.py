from .correlation import (
    CorrelationResult,
    TimeSeries,
    correlate_regions,
    daily_series,
    lagged_correlation,
)
from .tables import DIMENSIONS, bucket_counts, emit_report

__all__ = [
    "CorrelationResult",
    "DIMENSIONS",
    "TimeSeries",
    "bucket_counts",
    "correlate_regions",
    "daily_series",
    "emit_report",
    "lagged_correlation",
]
