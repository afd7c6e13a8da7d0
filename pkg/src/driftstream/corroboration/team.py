"""Weighted ensemble of cluster scorers with evidence-driven weights.

Members are deterministic feature scorers producing values in [0, 1]; the
team prediction is their weight-normalized sum. When evidence settles a
cluster, members that voted with the evidence gain relative weight and
members that voted against lose it, multiplicatively: a member voting v on
an outcome o (+1 supporting, -1 contradicting) is scaled by
exp(eta * o * (2v - 1)).

Raw weights are kept unnormalized internally (the exposed ``weights`` view
is always normalized), so the multiplicative decay of a member is exactly
the product of its update factors — e.g. k straight losses at full
confidence multiply its raw weight by exp(-k * eta).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from ..keywords import tokenize
from .clusters import ClusterFeatures

DEFAULT_LEARNING_RATE = 0.5

Scorer = Callable[[ClusterFeatures], float]


@dataclass
class Member:
    id: str
    scorer: Scorer

    def __call__(self, features: ClusterFeatures) -> float:
        value = float(self.scorer(features))
        return max(0.0, min(1.0, value))


class TeamedClassifier:
    def __init__(self, members: Sequence[Member], eta: float = DEFAULT_LEARNING_RATE):
        if not members:
            raise ValueError("a teamed classifier needs at least one member")
        if eta <= 0:
            raise ValueError("learning rate must be positive")
        self.members: list[Member] = list(members)
        self.eta = eta
        self.raw_weights: list[float] = [1.0 / len(members)] * len(members)

    @property
    def weights(self) -> list[float]:
        total = sum(self.raw_weights)
        return [w / total for w in self.raw_weights]

    def member_votes(self, features: ClusterFeatures) -> list[float]:
        return [member(features) for member in self.members]

    def predict(self, features: ClusterFeatures) -> float:
        votes = self.member_votes(features)
        return sum(w * v for w, v in zip(self.weights, votes))

    def update(self, votes: Sequence[float], outcome: int) -> list[float]:
        """Apply one evidence outcome; returns the new normalized weights."""
        if outcome not in (1, -1):
            raise ValueError(f"outcome must be +1 or -1, got {outcome}")
        if len(votes) != len(self.members):
            raise ValueError("one vote per member required")
        for v in votes:
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"votes must lie in [0, 1], got {v}")
        self.raw_weights = [
            w * math.exp(self.eta * outcome * (2.0 * v - 1.0))
            for w, v in zip(self.raw_weights, votes)
        ]
        return self.weights

    def add_member(self, member: Member) -> None:
        """Insert at weight 1/(m+1); existing members share the rest.

        Resets the raw scale (normalized weights scaled by m/(m+1) become
        the new raws), so decay bookkeeping restarts from here.
        """
        m = len(self.members)
        scaled = [w * m / (m + 1.0) for w in self.weights]
        self.members.append(member)
        self.raw_weights = scaled + [1.0 / (m + 1.0)]


def team_predict(classifier: TeamedClassifier, features: ClusterFeatures) -> float:
    return classifier.predict(features)


def update_weights(classifier: TeamedClassifier, member_votes: Sequence[float], outcome: int) -> list[float]:
    return classifier.update(member_votes, outcome)


# -- member factories ---------------------------------------------------------

def keyword_presence_member(member_id: str, terms: Iterable[str]) -> Member:
    wanted = {t.strip().lower() for t in terms if t.strip()}

    def scorer(features: ClusterFeatures) -> float:
        return 1.0 if wanted & features.topic_terms else 0.0

    return Member(id=member_id, scorer=scorer)


def cluster_size_member(member_id: str = "size", scale: int = 10) -> Member:
    def scorer(features: ClusterFeatures) -> float:
        return min(features.size / scale, 1.0)

    return Member(id=member_id, scorer=scorer)


def sentiment_extremity_member(member_id: str = "sentiment") -> Member:
    def scorer(features: ClusterFeatures) -> float:
        return min(features.mean_abs_sentiment, 1.0)

    return Member(id=member_id, scorer=scorer)


def source_diversity_member(member_id: str = "diversity", scale: int = 3) -> Member:
    def scorer(features: ClusterFeatures) -> float:
        return min(features.channels / scale, 1.0)

    return Member(id=member_id, scorer=scorer)


def default_team(topic_terms: Iterable[str], eta: float = DEFAULT_LEARNING_RATE) -> TeamedClassifier:
    return TeamedClassifier(
        members=[
            keyword_presence_member("keywords", topic_terms),
            cluster_size_member(),
            sentiment_extremity_member(),
            source_diversity_member(),
        ],
        eta=eta,
    )


def add_member(classifier: TeamedClassifier, trend_posts: Sequence, top_k: int = 5) -> TeamedClassifier:
    """Grow the team with a scorer built from a new trend's top terms."""
    if not trend_posts:
        raise ValueError("trend_data must be non-empty")
    doc_freq: Counter = Counter()
    for post in trend_posts:
        doc_freq.update(set(tokenize(post.post.text)))
    ranked = sorted(doc_freq.items(), key=lambda item: (-item[1], item[0]))
    terms = [term for term, _ in ranked[:top_k]]
    label = terms[0] if terms else "trend"
    classifier.add_member(keyword_presence_member(f"trend:{label}", terms))
    return classifier
