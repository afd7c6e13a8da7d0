"""Annotated post record produced by the enrichment jobs."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..sources.posts import Post

TOPIC_GROUPS = ("deaths_hospitalizations", "positive_tests", "symptomatic")


@dataclass
class EnrichedPost:
    post: Post
    locations: list[str] = field(default_factory=list)
    sentiment: float = 0.0
    topic_groups: set[str] = field(default_factory=set)
    relevance: bool = False
    matched_terms: set[str] = field(default_factory=set)
    misinfo_terms: set[str] = field(default_factory=set)
    authoritative: bool = False

    def __post_init__(self):
        unknown = self.topic_groups - set(TOPIC_GROUPS)
        if unknown:
            raise ValueError(f"unknown topic groups: {sorted(unknown)}")
        if not -1.0 <= self.sentiment <= 1.0:
            raise ValueError(f"sentiment out of range: {self.sentiment}")

    def to_payload(self) -> dict:
        return {
            "post": self.post.to_payload(),
            "locations": list(self.locations),
            "sentiment": self.sentiment,
            "topic_groups": sorted(self.topic_groups),
            "relevance": self.relevance,
            "matched_terms": sorted(self.matched_terms),
            "misinfo_terms": sorted(self.misinfo_terms),
            "authoritative": self.authoritative,
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "EnrichedPost":
        return cls(
            post=Post.from_payload(payload["post"]),
            locations=list(payload.get("locations", [])),
            sentiment=payload.get("sentiment", 0.0),
            topic_groups=set(payload.get("topic_groups", [])),
            relevance=payload.get("relevance", False),
            matched_terms=set(payload.get("matched_terms", [])),
            misinfo_terms=set(payload.get("misinfo_terms", [])),
            authoritative=payload.get("authoritative", False),
        )
