"""Rising-term detection over per-window term counts.

An internal substitute for platform trending feeds: a term is trending when
its current-window count jumps relative to its trailing mean. Add-one
smoothing keeps brand-new terms finite and flat terms near ratio 1.
"""

from __future__ import annotations

from collections import Counter
from typing import Sequence


def rising_ratios(history: Sequence[Counter]) -> dict[str, float]:
    """(current + 1) / (trailing mean + 1) for every term ever counted."""
    if len(history) < 2:
        raise ValueError("need at least 2 windows of history")
    current = history[-1]
    trailing = history[:-1]
    vocabulary = set(current)
    for window in trailing:
        vocabulary.update(window)
    ratios = {}
    for term in vocabulary:
        mean = sum(w.get(term, 0) for w in trailing) / len(trailing)
        ratios[term] = (current.get(term, 0) + 1.0) / (mean + 1.0)
    return ratios


def detect_trending(history: Sequence[Counter], k: int) -> list[str]:
    """Top-k terms by rising ratio; alphabetical tie-break for stability."""
    ratios = rising_ratios(history)
    ranked = sorted(ratios.items(), key=lambda item: (-item[1], item[0]))
    return [term for term, _ in ranked[: max(k, 0)]]
