"""Lexicon-based sentiment scoring.

A deliberately simple stand-in for a trained sentiment model: sum the
weights of every lexicon term occurrence in the text and clamp the sum to
[-1, 1]. Deterministic and fully testable against a recount.
"""

from __future__ import annotations

import json
from pathlib import Path

DEFAULT_SENTIMENT_LEXICON = {
    "good": 0.5,
    "great": 0.8,
    "hope": 0.4,
    "recovered": 0.6,
    "safe": 0.3,
    "love": 0.6,
    "bad": -0.5,
    "terrible": -0.8,
    "scared": -0.6,
    "死": -0.6,
    "died": -0.7,
    "fear": -0.5,
    "worse": -0.6,
    "crisis": -0.4,
}


def score_sentiment(text: str, lexicon: dict[str, float]) -> float:
    """Clamped sum of matched term weights; 0.0 when nothing matches.

    Lexicon terms are expected lowercase (the loader normalizes); matching
    is against the lowercased text, so it stays case-insensitive.
    """
    lowered = text.lower()
    total = 0.0
    for term, weight in lexicon.items():
        occurrences = lowered.count(term)
        if occurrences:
            total += occurrences * weight
    return max(-1.0, min(1.0, total))


def load_sentiment_lexicon(path: str | Path) -> dict[str, float]:
    with open(Path(path), "r", encoding="utf-8") as f:
        data = json.load(f)
    return {str(term).lower(): float(weight) for term, weight in data.items()}
