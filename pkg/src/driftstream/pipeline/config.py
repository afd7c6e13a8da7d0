"""Pipeline configuration: one declarative file wiring every job.

YAML or JSON, with environment-variable overrides for scalar fields
(DRIFTSTREAM_SEED, DRIFTSTREAM_ARCHIVE, DRIFTSTREAM_OUT_DIR,
DRIFTSTREAM_SPEED). Validation reports every broken field at once, by name,
instead of dying on the first.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

import yaml

from ..keywords import DEFAULT_SEED_KEYWORDS
from ..misinfo.keywords import DEFAULT_MISINFO_SEEDS
from ..timeutil import DAY, HOUR, MINUTE, TimestampError, parse_timestamp

DEFAULT_AUTHORITATIVE_SOURCES = (
    "who.int",
    "cdc.gov",
    "jhu.edu",
    "nytimes.com",
    "cnn.com",
)

# The standard topology: the seven collection/tagging jobs plus the drift
# and corroboration jobs. Every entry is instantiable from config alone.
DEFAULT_TOPOLOGY = (
    {"name": "ingest", "kind": "archive_ingest"},
    {"name": "extract", "kind": "metadata_extract"},
    {"name": "sentiment", "kind": "sentiment"},
    {"name": "misinfo_sources", "kind": "misinfo_sources"},
    {"name": "misinfo_extract", "kind": "misinfo_extract"},
    {"name": "misinfo_filter", "kind": "misinfo_filter"},
    {"name": "authoritative", "kind": "authoritative_tag"},
    {"name": "drift", "kind": "drift_adapt"},
    {"name": "corroborate", "kind": "cluster_corroborate"},
)

KNOWN_JOB_KINDS = {entry["kind"] for entry in DEFAULT_TOPOLOGY}


class ConfigError(ValueError):
    def __init__(self, errors: list[str]):
        self.errors = errors
        super().__init__("; ".join(errors))


@dataclass
class KeywordConfig:
    seeds: tuple[str, ...] = DEFAULT_SEED_KEYWORDS
    match_mode: str = "substring"
    tracked_phrases: tuple[str, ...] = ()
    retweet_ttl: float = 24 * HOUR


@dataclass
class DriftConfig:
    enabled: bool = True
    window: float = 60 * MINUTE
    slide: float = 10 * MINUTE
    min_count: int = 25
    min_score: float = 0.7
    scorer: str = "pmi"
    trending_k: int = 10


@dataclass
class EnrichmentConfig:
    gazetteer: tuple[str, ...] = ()
    gazetteer_file: Optional[str] = None
    sentiment_lexicon_file: Optional[str] = None
    group_lexicons_file: Optional[str] = None
    location_cache_ttl: float = 7 * DAY


@dataclass
class MisinfoConfig:
    seeds: tuple[str, ...] = DEFAULT_MISINFO_SEEDS
    sources: tuple[dict, ...] = ()
    refresh_interval: float = 60 * MINUTE
    window: float = MINUTE
    piggyback_threshold: float = 0.7
    tombstones: tuple[str, ...] = ()


@dataclass
class ClusterConfig:
    window: float = 60 * MINUTE
    min_size: int = 3
    lag_tolerance: float = 14 * DAY
    eta: float = 0.5


@dataclass
class PipelineConfig:
    seed: int
    archive: str
    out_dir: str = "reports"
    speed: Any = "max"
    until: Optional[float] = None
    keywords: KeywordConfig = field(default_factory=KeywordConfig)
    drift: DriftConfig = field(default_factory=DriftConfig)
    enrichment: EnrichmentConfig = field(default_factory=EnrichmentConfig)
    misinfo: MisinfoConfig = field(default_factory=MisinfoConfig)
    clusters: ClusterConfig = field(default_factory=ClusterConfig)
    authoritative: tuple[str, ...] = DEFAULT_AUTHORITATIVE_SOURCES
    evidence_feed: Optional[str] = None
    case_feed: Optional[str] = None
    max_lag_days: int = 21
    topology: tuple[dict, ...] = DEFAULT_TOPOLOGY


def _get(data: dict, key: str, default):
    value = data.get(key)
    return default if value is None else value


def _minutes(data: dict, key: str, default_seconds: float) -> float:
    if key in data and data[key] is not None:
        return float(data[key]) * MINUTE
    return default_seconds


def parse_config(data: dict, base_dir: Optional[Path] = None) -> PipelineConfig:
    """Build and validate a PipelineConfig from parsed file data."""
    errors: list[str] = []
    base = base_dir or Path.cwd()

    def resolve(p: Optional[str]) -> Optional[str]:
        if p is None:
            return None
        path = Path(p)
        return str(path if path.is_absolute() else base / path)

    env = os.environ
    seed = env.get("DRIFTSTREAM_SEED", data.get("seed"))
    if seed is None:
        errors.append("seed: required for reproducible runs")
        seed = 0
    else:
        try:
            seed = int(seed)
        except (TypeError, ValueError):
            errors.append(f"seed: must be an integer, got {seed!r}")
            seed = 0

    archive = env.get("DRIFTSTREAM_ARCHIVE", data.get("archive"))
    if not archive:
        errors.append("archive: required")
        archive = ""
    else:
        archive = resolve(str(archive))
        if not Path(archive).is_file():
            errors.append(f"archive: file not found: {archive}")

    out_dir = env.get("DRIFTSTREAM_OUT_DIR", _get(data, "out_dir", "reports"))
    speed = env.get("DRIFTSTREAM_SPEED", _get(data, "speed", "max"))
    if speed != "max":
        try:
            speed = float(speed)
            if speed <= 0:
                raise ValueError
        except (TypeError, ValueError):
            errors.append(f"speed: must be a positive number or 'max', got {speed!r}")
            speed = "max"

    kw = data.get("keywords", {}) or {}
    keywords = KeywordConfig(
        seeds=tuple(_get(kw, "seeds", list(DEFAULT_SEED_KEYWORDS))),
        match_mode=_get(kw, "match_mode", "substring"),
        tracked_phrases=tuple(_get(kw, "tracked_phrases", [])),
        retweet_ttl=float(_get(kw, "retweet_ttl_hours", 24)) * HOUR,
    )
    if keywords.match_mode not in ("substring", "token"):
        errors.append(f"keywords.match_mode: must be substring or token, got {keywords.match_mode!r}")
    if not keywords.seeds:
        errors.append("keywords.seeds: must be non-empty")

    dr = data.get("drift", {}) or {}
    drift = DriftConfig(
        enabled=bool(_get(dr, "enabled", True)),
        window=_minutes(dr, "window_minutes", 60 * MINUTE),
        slide=_minutes(dr, "slide_minutes", 10 * MINUTE),
        min_count=int(_get(dr, "min_count", 25)),
        min_score=float(_get(dr, "min_score", 0.7)),
        scorer=_get(dr, "scorer", "pmi"),
        trending_k=int(_get(dr, "trending_k", 10)),
    )
    if drift.scorer not in ("pmi", "jaccard"):
        errors.append(f"drift.scorer: must be pmi or jaccard, got {drift.scorer!r}")
    if drift.window <= 0 or drift.slide <= 0 or drift.window % drift.slide != 0:
        errors.append("drift: window_minutes must be a positive multiple of slide_minutes")
    if drift.min_count < 1:
        errors.append("drift.min_count: must be >= 1")
    if drift.min_score <= 0:
        errors.append("drift.min_score: must be > 0")

    en = data.get("enrichment", {}) or {}
    enrichment = EnrichmentConfig(
        gazetteer=tuple(_get(en, "gazetteer", [])),
        gazetteer_file=resolve(en.get("gazetteer_file")),
        sentiment_lexicon_file=resolve(en.get("sentiment_lexicon_file")),
        group_lexicons_file=resolve(en.get("group_lexicons_file")),
        location_cache_ttl=float(_get(en, "location_cache_ttl_days", 7)) * DAY,
    )
    for name in ("gazetteer_file", "sentiment_lexicon_file", "group_lexicons_file"):
        path = getattr(enrichment, name)
        if path is not None and not Path(path).is_file():
            errors.append(f"enrichment.{name}: file not found: {path}")

    mi = data.get("misinfo", {}) or {}
    misinfo = MisinfoConfig(
        seeds=tuple(_get(mi, "seeds", list(DEFAULT_MISINFO_SEEDS))),
        sources=tuple(
            {**src, "path": resolve(src.get("path"))} for src in _get(mi, "sources", [])
        ),
        refresh_interval=_minutes(mi, "refresh_interval_minutes", 60 * MINUTE),
        window=float(_get(mi, "window_seconds", 60)),
        piggyback_threshold=float(_get(mi, "piggyback_threshold", 0.7)),
        tombstones=tuple(_get(mi, "tombstones", [])),
    )
    if misinfo.window <= 0:
        errors.append("misinfo.window_seconds: must be > 0")
    for i, src in enumerate(misinfo.sources):
        if not src.get("path"):
            errors.append(f"misinfo.sources[{i}].path: required")
        elif not Path(src["path"]).is_file():
            errors.append(f"misinfo.sources[{i}].path: file not found: {src['path']}")

    cl = data.get("clusters", {}) or {}
    clusters = ClusterConfig(
        window=_minutes(cl, "window_minutes", 60 * MINUTE),
        min_size=int(_get(cl, "min_size", 3)),
        lag_tolerance=float(_get(cl, "lag_tolerance_days", 14)) * DAY,
        eta=float(_get(cl, "eta", 0.5)),
    )
    if clusters.min_size < 1:
        errors.append("clusters.min_size: must be >= 1")
    if clusters.eta <= 0:
        errors.append("clusters.eta: must be > 0")

    authoritative = tuple(_get(data, "authoritative", list(DEFAULT_AUTHORITATIVE_SOURCES)))
    if not authoritative:
        errors.append("authoritative: must be non-empty")

    evidence_feed = resolve(data.get("evidence_feed"))
    if evidence_feed is not None and not Path(evidence_feed).is_file():
        errors.append(f"evidence_feed: file not found: {evidence_feed}")
    case_feed = resolve(data.get("case_feed"))
    if case_feed is not None and not Path(case_feed).is_file():
        errors.append(f"case_feed: file not found: {case_feed}")

    until = data.get("until")
    if isinstance(until, str):
        try:
            until = parse_timestamp(until)
        except TimestampError as exc:
            errors.append(f"until: {exc}")
            until = None
    elif until is not None:
        until = float(until)

    topology = tuple(_get(data, "topology", list(DEFAULT_TOPOLOGY)))
    seen_names = set()
    for i, job in enumerate(topology):
        name = job.get("name")
        if not name:
            errors.append(f"topology[{i}].name: required")
        elif name in seen_names:
            errors.append(f"topology[{i}].name: duplicate job name {name!r}")
        seen_names.add(name)
        if job.get("kind") not in KNOWN_JOB_KINDS:
            errors.append(
                f"topology[{i}].kind: unknown job kind {job.get('kind')!r}"
            )

    if errors:
        raise ConfigError(errors)

    return PipelineConfig(
        seed=seed,
        archive=archive,
        out_dir=str(out_dir),
        speed=speed,
        until=until,
        keywords=keywords,
        drift=drift,
        enrichment=enrichment,
        misinfo=misinfo,
        clusters=clusters,
        authoritative=authoritative,
        evidence_feed=evidence_feed,
        case_feed=case_feed,
        max_lag_days=int(_get(data, "max_lag_days", 21)),
        topology=topology,
    )


def load_config(path: str | Path) -> PipelineConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError([f"config: unreadable: {exc}"]) from exc
    if path.suffix == ".json":
        data = json.loads(text)
    else:
        data = yaml.safe_load(text)
    if not isinstance(data, dict):
        raise ConfigError(["config: top level must be a mapping"])
    return parse_config(data, base_dir=path.parent)
