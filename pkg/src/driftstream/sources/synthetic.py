"""Deterministic synthetic post corpora with planted drift and ground truth.

The generator writes an archive (JSON lines, same schema the replayer
reads) plus a ground-truth sidecar keyed by post id. Labels live only in
the sidecar, never in the text. Everything is driven by one seeded RNG, so
a config generates byte-identical files on every run.

Drift terms follow the two-phase schedule: from ``co_start`` the term is
injected into posts that also carry seed keywords; from ``solo_start`` the
stream additionally carries posts that mention the term alone, with no seed
keyword at all.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from ..timeutil import format_timestamp, parse_timestamp

DEFAULT_START_TIME = "2020-03-01T00:00:00Z"

DEFAULT_RELEVANT_FILLER = (
    "cases testing lockdown quarantine vaccine outbreak hospital doctors "
    "stay home safe numbers rising update news today city county health officials"
).split()

DEFAULT_IRRELEVANT_FILLER = (
    "weather sunny coffee morning football match music concert recipe dinner "
    "travel photos weekend movie garden puppy birthday holiday traffic game"
).split()

DEFAULT_MISINFO_TERMS = ("plandemic", "bioweapon", "5g towers", "microchip")

DEFAULT_REGION_POOL = (
    "california",
    "new york",
    "hubei",
    "lombardy",
    "sturgis",
    "madrid",
)

DEFAULT_LANG_WEIGHTS = {
    "en": 0.634,
    "es": 0.123,
    "id": 0.038,
    "fr": 0.035,
    "pt": 0.032,
    "und": 0.138,
}

DEFAULT_GROUP_TERMS = {
    "deaths_hospitalizations": ("death", "died", "hospitalization", "icu", "ventilator"),
    "positive_tests": ("positive", "tested positive", "diagnosed"),
    "symptomatic": ("fever", "cough", "loss of taste", "symptoms"),
}

DEFAULT_AUTHORITATIVE_CHANNELS = ("who.int", "cdc.gov", "nytimes.com")


class SyntheticConfigError(ValueError):
    pass


@dataclass
class DriftTermSchedule:
    term: str
    co_start: float  # seconds from stream start
    solo_start: float
    p_co: float = 0.3  # chance a relevant post in the co phase carries the term
    p_solo: float = 0.15  # chance a post after solo_start is a seed-free term post


@dataclass
class SyntheticConfig:
    seed: int
    duration_minutes: float = 60.0
    base_rate_per_minute: float = 60.0
    start_time: str = DEFAULT_START_TIME
    seed_keywords: tuple[str, ...] = ("corona", "covid-19", "pandemic", "virus", "wuhan")
    relevant_filler: tuple[str, ...] = tuple(DEFAULT_RELEVANT_FILLER)
    irrelevant_filler: tuple[str, ...] = tuple(DEFAULT_IRRELEVANT_FILLER)
    misinfo_terms: tuple[str, ...] = DEFAULT_MISINFO_TERMS
    drift_schedule: list[DriftTermSchedule] = field(default_factory=list)
    region_pool: tuple[str, ...] = DEFAULT_REGION_POOL
    group_terms: dict = field(default_factory=lambda: dict(DEFAULT_GROUP_TERMS))
    lang_weights: dict = field(default_factory=lambda: dict(DEFAULT_LANG_WEIGHTS))
    authoritative_channels: tuple[str, ...] = DEFAULT_AUTHORITATIVE_CHANNELS
    p_relevant: float = 0.3
    p_region: float = 0.35
    p_region_irrelevant: float = 0.05
    p_topic: float = 0.4
    p_misinfo: float = 0.06
    p_retweet: float = 0.08
    p_authoritative: float = 0.02
    # How much ordinary vocabulary leaks across topics: without it every
    # on-topic filler word correlates perfectly with the seeds and the
    # promotion threshold stops meaning anything.
    p_vocab_bleed: float = 0.5
    p_offtopic_symptom: float = 0.05
    base_id: int = 1_000_000

    def validate(self) -> None:
        if self.duration_minutes <= 0 or self.base_rate_per_minute <= 0:
            raise SyntheticConfigError("duration and base_rate must be positive")
        for entry in self.drift_schedule:
            if entry.solo_start <= entry.co_start:
                raise SyntheticConfigError(
                    f"drift term {entry.term!r}: solo phase must start after "
                    f"co-occurrence phase (co_start={entry.co_start}, "
                    f"solo_start={entry.solo_start})"
                )
        # A seed keyword hiding inside filler text would contaminate the
        # no-seed guarantee of solo-phase and irrelevant posts.
        for pool_name, pool in (
            ("irrelevant_filler", self.irrelevant_filler),
            ("relevant_filler", self.relevant_filler),
        ):
            for word in pool:
                for kw in self.seed_keywords:
                    if kw in word:
                        raise SyntheticConfigError(
                            f"{pool_name} word {word!r} contains seed keyword {kw!r}"
                        )

    @classmethod
    def from_dict(cls, data: dict) -> "SyntheticConfig":
        data = dict(data)
        schedule = [
            DriftTermSchedule(**entry) if isinstance(entry, dict) else entry
            for entry in data.pop("drift_schedule", [])
        ]
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise SyntheticConfigError(f"unknown synthetic config fields: {sorted(unknown)}")
        cfg = cls(drift_schedule=schedule, **data)
        cfg.validate()
        return cfg


@dataclass
class GeneratedCorpus:
    archive_path: Path
    truth_path: Path
    post_count: int
    stats: dict


def generate_synthetic(config: SyntheticConfig, out_dir: str | Path) -> GeneratedCorpus:
    """Write ``archive.jsonl`` and ``truth.jsonl`` under ``out_dir``."""
    config.validate()
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    archive_path = out / "archive.jsonl"
    truth_path = out / "truth.jsonl"

    rng = random.Random(config.seed)
    start = parse_timestamp(config.start_time)
    end = start + config.duration_minutes * 60.0
    mean_gap = 60.0 / config.base_rate_per_minute

    langs = sorted(config.lang_weights)
    lang_weights = [config.lang_weights[l] for l in langs]
    group_names = sorted(config.group_terms)
    recent: list[tuple[int, bool]] = []  # (id, relevant) pool for retweets

    stats = {"posts": 0, "relevant": 0, "solo_drift": 0, "retweets": 0, "misinfo": 0}
    next_id = config.base_id
    t = start

    with open(archive_path, "w", encoding="utf-8") as arc, open(
        truth_path, "w", encoding="utf-8"
    ) as truth:
        while True:
            t += rng.expovariate(1.0 / mean_gap)
            if t >= end:
                break
            offset = t - start
            post_id = next_id
            next_id += 1
            lang = rng.choices(langs, weights=lang_weights)[0]
            channel = (
                rng.choice(config.authoritative_channels)
                if rng.random() < config.p_authoritative
                else "twitter"
            )

            words: list[str] = []
            region: Optional[str] = None
            misinfo: list[str] = []
            drift_term: Optional[str] = None
            drift_phase: Optional[str] = None
            retweet_of: Optional[int] = None
            relevant = False

            if recent and rng.random() < config.p_retweet:
                retweet_of, relevant = recent[rng.randrange(len(recent))]
                words = rng.sample(config.irrelevant_filler, k=rng.randint(2, 4))
                stats["retweets"] += 1
            else:
                solo_entry = None
                for entry in config.drift_schedule:
                    if offset >= entry.solo_start and rng.random() < entry.p_solo:
                        solo_entry = entry
                        break
                if solo_entry is not None:
                    relevant = True
                    drift_term, drift_phase = solo_entry.term, "solo"
                    words = [solo_entry.term] + rng.sample(
                        config.irrelevant_filler, k=rng.randint(2, 5)
                    )
                    rng.shuffle(words)
                    stats["solo_drift"] += 1
                elif rng.random() < config.p_relevant:
                    relevant = True
                    words = rng.sample(
                        list(config.seed_keywords), k=rng.randint(1, 2)
                    ) + rng.sample(config.relevant_filler, k=rng.randint(2, 6))
                    for entry in config.drift_schedule:
                        if entry.co_start <= offset and rng.random() < entry.p_co:
                            words.append(entry.term)
                            drift_term, drift_phase = entry.term, (
                                "co" if offset < entry.solo_start else "late_co"
                            )
                    if rng.random() < config.p_topic:
                        group = group_names[rng.randrange(len(group_names))]
                        words.append(rng.choice(config.group_terms[group]))
                    if rng.random() < config.p_misinfo:
                        term = rng.choice(config.misinfo_terms)
                        words.append(term)
                        misinfo.append(term)
                        stats["misinfo"] += 1
                    rng.shuffle(words)
                    if rng.random() < config.p_region:
                        region = rng.choice(config.region_pool)
                        words.append(f"in {region.title()}")
                else:
                    words = rng.sample(config.irrelevant_filler, k=rng.randint(3, 8))
                    if rng.random() < config.p_vocab_bleed:
                        words.extend(rng.sample(config.relevant_filler, k=rng.randint(1, 2)))
                    if rng.random() < config.p_offtopic_symptom:
                        group = group_names[rng.randrange(len(group_names))]
                        words.append(rng.choice(config.group_terms[group]))
                    rng.shuffle(words)
                    if rng.random() < config.p_region_irrelevant:
                        region = rng.choice(config.region_pool)
                        words.append(f"in {region.title()}")

            text = " ".join(words)
            lowered = text.lower()
            topic_groups = sorted(
                g
                for g in group_names
                if any(term in lowered for term in config.group_terms[g])
            )
            if relevant:
                stats["relevant"] += 1
            stats["posts"] += 1

            line = {"created_at": format_timestamp(t), "id": post_id, "text": text, "lang": lang, "channel": channel}
            if retweet_of is not None:
                line["retweeted_id"] = retweet_of
            arc.write(json.dumps(line) + "\n")

            label = {
                "id": post_id,
                "relevant": relevant,
                "misinfo_terms": misinfo,
                "region": region,
                "topic_group": topic_groups,
                "drift_term": drift_term,
                "drift_phase": drift_phase,
            }
            truth.write(json.dumps(label) + "\n")

            if retweet_of is None:
                recent.append((post_id, relevant))
                if len(recent) > 100:
                    recent.pop(0)

    return GeneratedCorpus(
        archive_path=archive_path,
        truth_path=truth_path,
        post_count=stats["posts"],
        stats=stats,
    )


def load_ground_truth(path: str | Path) -> dict[int, dict]:
    labels = {}
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            if line.strip():
                obj = json.loads(line)
                labels[obj["id"]] = obj
    return labels
