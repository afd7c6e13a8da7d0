"""Co-occurrence counting between candidate terms and the seed keywords.

New vocabulary (a drifting topic, an emerging rumor) tends to appear first
alongside the original topic keywords and only later on its own. These
windowed counts capture that association so candidates can be scored and
promoted while the association is still strong.

Pair counts are taken against the original seed entries only: a term
already promoted does not count toward its own seed side, otherwise
promotion would lock correlation at 1 forever and the later decay, the
signal the whole mechanism exists to observe, would disappear.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from ..enrich.model import EnrichedPost
from ..keywords import KeywordSet, tokenize


@dataclass
class CooccurrenceStats:
    window_length: float = 3600.0
    tracked_phrases: tuple[str, ...] = ()  # configured multi-word candidates
    term_counts: Counter = field(default_factory=Counter)  # n(t): posts containing t
    pair_counts: Counter = field(default_factory=Counter)  # n(t, seeds)
    total_posts: int = 0  # N
    seed_posts: int = 0  # n(seeds)

    def merge(self, other: "CooccurrenceStats") -> None:
        self.term_counts.update(other.term_counts)
        self.pair_counts.update(other.pair_counts)
        self.total_posts += other.total_posts
        self.seed_posts += other.seed_posts

    def reset(self) -> None:
        self.term_counts.clear()
        self.pair_counts.clear()
        self.total_posts = 0
        self.seed_posts = 0


def observe_post(stats: CooccurrenceStats, enriched: EnrichedPost, seeds: KeywordSet) -> None:
    """Count one post's candidate terms, pairing them with seed matches.

    Each distinct term counts once per post (document frequency), which is
    what the association scores expect.
    """
    text = enriched.post.text
    candidates = set(tokenize(text))
    if stats.tracked_phrases:
        lowered = text.lower()
        candidates.update(p for p in stats.tracked_phrases if p in lowered)

    seed_matched = False
    for term in enriched.matched_terms:
        entry = seeds.entries.get(term)
        if entry is not None and entry.origin == "seed":
            seed_matched = True
            break

    stats.total_posts += 1
    if seed_matched:
        stats.seed_posts += 1
    for term in candidates:
        stats.term_counts[term] += 1
        if seed_matched:
            stats.pair_counts[term] += 1


def score_candidate(stats: CooccurrenceStats, term: str, scorer: str = "pmi") -> float:
    """Association of ``term`` with the seed keywords, in [0, 1].

    pmi: log((n(t,seeds) * N) / (n(t) * n(seeds))), squashed by a logistic.
    jaccard: n(t,seeds) / (n(t) + n(seeds) - n(t,seeds)).
    """
    n_t = stats.term_counts.get(term, 0)
    n_ts = stats.pair_counts.get(term, 0)
    if n_t == 0 or n_ts == 0 or stats.seed_posts == 0 or stats.total_posts == 0:
        return 0.0
    if scorer == "pmi":
        pmi = math.log((n_ts * stats.total_posts) / (n_t * stats.seed_posts))
        return 1.0 / (1.0 + math.exp(-pmi))
    if scorer == "jaccard":
        return n_ts / (n_t + stats.seed_posts - n_ts)
    raise ValueError(f"unknown scorer: {scorer!r}")


def recount_window(posts: Iterable[EnrichedPost], seeds: KeywordSet,
                   tracked_phrases: tuple[str, ...] = ()) -> CooccurrenceStats:
    """Brute-force recount over a window's posts (conservation checks)."""
    stats = CooccurrenceStats(tracked_phrases=tracked_phrases)
    for enriched in posts:
        observe_post(stats, enriched, seeds)
    return stats
