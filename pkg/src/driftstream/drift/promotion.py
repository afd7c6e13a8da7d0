"""Promoting well-correlated candidate terms into the keyword set.

Promotion is permanent: once a term earned its place, later correlation
decay (the term acquiring its own social context) never deactivates it.
That is the point — the stream keeps matching posts that mention only the
new term.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..keywords import KeywordEntry, KeywordSet
from .cooccurrence import CooccurrenceStats, score_candidate


@dataclass
class PromotionPolicy:
    min_count: int = 25
    min_score: float = 0.7
    scorer: str = "pmi"

    def __post_init__(self):
        if self.min_count < 1:
            raise ValueError("min_count must be >= 1")
        if self.min_score <= 0:
            raise ValueError("min_score must be > 0")
        if self.scorer not in ("pmi", "jaccard"):
            raise ValueError(f"unknown scorer: {self.scorer!r}")


def promote_keywords(
    stats: CooccurrenceStats,
    policy: PromotionPolicy,
    keywords: KeywordSet,
    now: float,
) -> list[KeywordEntry]:
    """Add every qualifying candidate as a learned entry; returns the new ones."""
    promoted: list[KeywordEntry] = []
    for term in sorted(stats.term_counts):
        if term in keywords:
            continue
        if stats.term_counts[term] < policy.min_count:
            continue
        score = score_candidate(stats, term, policy.scorer)
        if score < policy.min_score:
            continue
        entry = KeywordEntry(
            term=term,
            origin="learned",
            first_seen=now,
            promoted_at=now,
            correlation=score,
            active=True,
        )
        keywords.add(entry)
        promoted.append(entry)
    return promoted
