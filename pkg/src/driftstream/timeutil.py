"""Timestamp parsing and pluggable clocks.

All timestamps inside the pipeline are UTC epoch seconds (float). Archive
files may carry either the legacy social format ("Sat Feb 29 18:59:56
+0000 2020") or ISO-8601; both normalize to epoch seconds on parse.
"""

from __future__ import annotations

import time
from datetime import datetime, timezone

LEGACY_FORMAT = "%a %b %d %H:%M:%S %z %Y"

MINUTE = 60.0
HOUR = 3600.0
DAY = 86400.0


class TimestampError(ValueError):
    pass


def parse_timestamp(value: str) -> float:
    """Parse a legacy or ISO-8601 timestamp string to UTC epoch seconds."""
    if not isinstance(value, str) or not value.strip():
        raise TimestampError(f"empty or non-string timestamp: {value!r}")
    text = value.strip()
    # ISO-8601 first: it is the fast path (C implementation) and the format
    # the synthetic generator emits.
    iso = text[:-1] + "+00:00" if text.endswith("Z") else text
    try:
        dt = datetime.fromisoformat(iso)
    except ValueError:
        try:
            dt = datetime.strptime(text, LEGACY_FORMAT)
        except ValueError:
            raise TimestampError(f"unparseable timestamp: {value!r}") from None
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.timestamp()


def format_timestamp(epoch: float) -> str:
    """Render epoch seconds as an ISO-8601 UTC string (second resolution)."""
    return datetime.fromtimestamp(int(epoch), tz=timezone.utc).strftime(
        "%Y-%m-%dT%H:%M:%SZ"
    )


def month_key(epoch: float) -> str:
    return datetime.fromtimestamp(epoch, tz=timezone.utc).strftime("%Y-%m")


def day_key(epoch: float) -> str:
    return datetime.fromtimestamp(epoch, tz=timezone.utc).strftime("%Y-%m-%d")


def day_start(epoch: float) -> float:
    """Epoch seconds of the UTC midnight containing ``epoch``."""
    return float(int(epoch) // int(DAY) * int(DAY))


class Clock:
    """Wall clock. Subclass or swap for deterministic tests."""

    def now(self) -> float:
        return time.time()


class ManualClock(Clock):
    """Clock advanced explicitly; pipelines drive it with event time."""

    def __init__(self, start: float = 0.0):
        self._now = float(start)

    def now(self) -> float:
        return self._now

    def set(self, t: float) -> None:
        self._now = float(t)

    def advance(self, seconds: float) -> None:
        self._now += seconds
