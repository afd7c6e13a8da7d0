"""Topic-group tagging for the three tracked outcome groups."""

from __future__ import annotations

import json
from pathlib import Path

from .model import TOPIC_GROUPS

# Editable defaults, not ground truth; override via a lexicon file.
DEFAULT_GROUP_LEXICONS: dict[str, tuple[str, ...]] = {
    "deaths_hospitalizations": ("death", "died", "hospitaliz", "icu", "ventilator"),
    "positive_tests": ("positive", "tested positive", "diagnosed"),
    "symptomatic": ("fever", "cough", "loss of taste", "symptoms"),
}


def assign_topic_groups(text: str, group_lexicons: dict[str, tuple[str, ...]]) -> set[str]:
    """Groups whose lexicon has at least one case-insensitive hit in ``text``.

    Groups are not mutually exclusive; a post about a hospitalization after
    a positive test belongs to both. Lexicon terms are expected lowercase
    (the loader normalizes).
    """
    lowered = text.lower()
    return {
        group
        for group, terms in group_lexicons.items()
        if any(term in lowered for term in terms)
    }


def load_group_lexicons(path: str | Path) -> dict[str, tuple[str, ...]]:
    with open(Path(path), "r", encoding="utf-8") as f:
        data = json.load(f)
    unknown = set(data) - set(TOPIC_GROUPS)
    if unknown:
        raise ValueError(f"unknown topic groups in lexicon file: {sorted(unknown)}")
    return {group: tuple(str(t).lower() for t in terms) for group, terms in data.items()}
