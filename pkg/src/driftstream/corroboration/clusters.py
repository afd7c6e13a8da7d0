"""Tentative space-time event clusters from enriched posts.

Posts that talk about the same place in the same window are grouped into a
tentative cluster; whether the cluster describes a real physical event is
decided later by accumulated evidence, not here. Misinformation-tagged
posts never enter a cluster (they stay in the archive for analysis).
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable

from ..core.windows import WindowAssignment, assign_window
from ..enrich.model import EnrichedPost
from ..keywords import tokenize

DEFAULT_CLUSTER_WINDOW = 3600.0
DEFAULT_MIN_CLUSTER_SIZE = 3
TOPIC_TERM_LIMIT = 10


@dataclass
class EventCluster:
    id: str
    location: str
    window: WindowAssignment
    post_ids: set[int] = field(default_factory=set)
    topic_terms: set[str] = field(default_factory=set)
    status: str = "tentative"  # tentative | corroborated | refuted
    evidence_ids: set[str] = field(default_factory=set)
    team_score: float = 0.0

    def to_json_obj(self) -> dict:
        return {
            "id": self.id,
            "location": self.location,
            "window": [self.window.window_start, self.window.window_end],
            "size": len(self.post_ids),
            "status": self.status,
            "team_score": round(self.team_score, 6),
            "evidence_ids": sorted(self.evidence_ids),
        }


@dataclass(frozen=True)
class ClusterFeatures:
    size: int
    channels: int
    mean_abs_sentiment: float
    topic_terms: frozenset[str]


def cluster_features(cluster: EventCluster, posts: Iterable[EnrichedPost]) -> ClusterFeatures:
    members = [p for p in posts if p.post.id in cluster.post_ids]
    channels = {p.post.channel for p in members}
    mean_abs = (
        sum(abs(p.sentiment) for p in members) / len(members) if members else 0.0
    )
    return ClusterFeatures(
        size=len(cluster.post_ids),
        channels=len(channels),
        mean_abs_sentiment=mean_abs,
        topic_terms=frozenset(cluster.topic_terms),
    )


def _topic_terms(members: list[EnrichedPost]) -> set[str]:
    """Matched keywords plus the most common candidate tokens of the members."""
    terms: set[str] = set()
    doc_freq: Counter = Counter()
    for post in members:
        terms.update(post.matched_terms)
        doc_freq.update(set(tokenize(post.post.text)))
    ranked = sorted(doc_freq.items(), key=lambda item: (-item[1], item[0]))
    terms.update(term for term, _ in ranked[:TOPIC_TERM_LIMIT])
    return terms


def form_clusters(
    posts: Iterable[EnrichedPost],
    window_length: float = DEFAULT_CLUSTER_WINDOW,
    min_cluster_size: int = DEFAULT_MIN_CLUSTER_SIZE,
) -> list[EventCluster]:
    """One cluster per (location, window) with enough members.

    A post naming k locations joins k candidate groups. Posts without any
    location, and posts carrying misinformation terms, are skipped.
    """
    groups: dict[tuple[str, float], list[EnrichedPost]] = defaultdict(list)
    for post in posts:
        if not post.locations or post.misinfo_terms:
            continue
        window = assign_window(post.post.created_at, window_length)
        for location in post.locations:
            groups[(location, window.window_start)].append(post)

    clusters = []
    for (location, window_start), members in sorted(groups.items()):
        unique: dict[int, EnrichedPost] = {p.post.id: p for p in members}
        if len(unique) < min_cluster_size:
            continue
        window = WindowAssignment(window_start, window_length)
        member_list = [unique[i] for i in sorted(unique)]
        clusters.append(
            EventCluster(
                id=f"{location.replace(' ', '_')}:{int(window_start)}",
                location=location,
                window=window,
                post_ids=set(unique),
                topic_terms=_topic_terms(member_list),
            )
        )
    return clusters
