"""Deterministic single-process executor for the default topology.

Jobs conceptually run as independent units linked by queues; at desk scale
the runner advances them in lockstep, record by record and window by
window, driven purely by event time. That makes two runs over the same
archive, config, and seed byte-identical — the property the report-bundle
determinism contract depends on. The simulated clock follows the stream's
event time; no wall-clock value ever reaches an output file.

Dataflow per record: parse -> clean/relevance -> locations -> sentiment ->
topic groups -> authoritative tag -> minute-window misinformation tagging.
Tagged windows then feed drift adaptation, piggyback detection, cluster
formation, and the analytics counters. Evidence is applied after stream
exhaustion, in arrival order, with retroactive correction.
"""

from __future__ import annotations

import csv
import json
import threading
import time
from collections import Counter, deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from ..analytics.correlation import CorrelationResult, correlate_regions, daily_series
from ..analytics.tables import emit_report
from ..core.store import SharedStore
from ..corroboration.clusters import cluster_features, form_clusters
from ..corroboration.evidence import ClusterStore, MatchRule, load_evidence_feed
from ..corroboration.team import default_team
from ..drift.adapter import DriftAdapter
from ..drift.cooccurrence import CooccurrenceStats
from ..drift.promotion import PromotionPolicy
from ..drift.trending import detect_trending
from ..enrich.clean import clean_post
from ..enrich.locations import (
    Gazetteer,
    LocationCache,
    absorb_authoritative_locations,
    extract_locations,
    load_case_reports,
)
from ..enrich.model import EnrichedPost
from ..enrich.sentiment import DEFAULT_SENTIMENT_LEXICON, load_sentiment_lexicon, score_sentiment
from ..enrich.topics import DEFAULT_GROUP_LEXICONS, assign_topic_groups, load_group_lexicons
from ..keywords import KeywordSet
from ..misinfo.keywords import MisinfoKeywordSet, refresh_misinfo_keywords
from ..misinfo.piggyback import detect_piggyback, observe_misinfo_cooccurrence
from ..misinfo.tagging import AuthoritativeSourceList, tag_authoritative, tag_misinformation_window
from ..sources.posts import Post, Rejection, parse_post
from ..timeutil import DAY, ManualClock, day_key, month_key
from .config import PipelineConfig


@dataclass
class RunResult:
    exit_code: int
    out_dir: Path
    summary: dict
    report_paths: list[Path] = field(default_factory=list)
    posts_per_sec: Optional[float] = None


class _DayKeyCache:
    """Epoch -> (day string, month string) without re-deriving per post."""

    def __init__(self):
        self._cache: dict[int, tuple[str, str]] = {}

    def get(self, epoch: float) -> tuple[str, str]:
        day_index = int(epoch // DAY)
        hit = self._cache.get(day_index)
        if hit is None:
            hit = (day_key(epoch), month_key(epoch))
            self._cache[day_index] = hit
        return hit


class PipelineRunner:
    def __init__(self, config: PipelineConfig):
        self.config = config
        self.clock = ManualClock()
        self.store = SharedStore(clock=self.clock)
        self.keywords = KeywordSet(
            seeds=config.keywords.seeds, match_mode=config.keywords.match_mode
        )
        self.drift = (
            DriftAdapter(
                self.keywords,
                policy=PromotionPolicy(
                    min_count=config.drift.min_count,
                    min_score=config.drift.min_score,
                    scorer=config.drift.scorer,
                ),
                window_length=config.drift.window,
                slide=config.drift.slide,
                tracked_phrases=config.keywords.tracked_phrases,
            )
            if config.drift.enabled
            else None
        )
        self.misinfo_set = MisinfoKeywordSet(
            seeds=config.misinfo.seeds, tombstones=config.misinfo.tombstones
        )
        self.authoritative = AuthoritativeSourceList(config.authoritative)
        gaz_names = list(config.enrichment.gazetteer)
        if config.enrichment.gazetteer_file:
            gaz_names.extend(
                line.strip()
                for line in Path(config.enrichment.gazetteer_file).read_text().splitlines()
                if line.strip()
            )
        self.gazetteer = Gazetteer(gaz_names)
        self.location_cache = LocationCache(ttl=config.enrichment.location_cache_ttl)
        self.store.put("location_cache", self.location_cache)
        self.sentiment_lexicon = (
            load_sentiment_lexicon(config.enrichment.sentiment_lexicon_file)
            if config.enrichment.sentiment_lexicon_file
            else dict(DEFAULT_SENTIMENT_LEXICON)
        )
        self.group_lexicons = (
            load_group_lexicons(config.enrichment.group_lexicons_file)
            if config.enrichment.group_lexicons_file
            else dict(DEFAULT_GROUP_LEXICONS)
        )
        self.team = default_team(config.keywords.seeds, eta=config.clusters.eta)
        self.cluster_store = ClusterStore(
            rule=MatchRule(lag_tolerance=config.clusters.lag_tolerance)
        )

        # streaming state
        self._minute_buffers: dict[float, list[EnrichedPost]] = {}
        self._cluster_buffers: dict[float, list[EnrichedPost]] = {}
        self._watermark: Optional[float] = None
        self._next_refresh: Optional[float] = None
        self._pb_slide_index: Optional[int] = None
        self._pb_stats: deque = deque(maxlen=int(config.drift.window // config.drift.slide))
        self._pb_current: Optional[CooccurrenceStats] = None
        self._pb_history: deque[Counter] = deque(maxlen=6)

        # outputs
        self.window_rows: list[tuple] = []
        self.piggyback_rows: list[dict] = []
        self.counters: Counter = Counter()
        self.rejections: Counter = Counter()
        self._day_cache = _DayKeyCache()
        self.month_counts: Counter = Counter()
        self.language_counts: Counter = Counter()
        self.region_day_counts: Counter = Counter()
        self.topic_region_day_counts: Counter = Counter()
        self.social_day_counts: dict[str, Counter] = {}  # region -> day epoch -> count

    # -- per-record path ------------------------------------------------------

    def process_line(self, line: Union[bytes, str]) -> None:
        parsed = parse_post(line)
        if isinstance(parsed, Rejection):
            self.rejections[parsed.reason] += 1
            return
        self.ingest_post(parsed)

    def ingest_post(self, parsed: Post) -> None:
        self.counters["records_in"] += 1
        self._advance_watermark(parsed.created_at)
        enriched = clean_post(parsed, self.keywords, self.store)
        if enriched is None:
            self.counters["discarded"] += 1
            return
        if enriched.relevance:
            self.counters["relevant"] += 1
            self.store.put(
                f"match:{parsed.id}",
                sorted(enriched.matched_terms),
                ttl=self.config.keywords.retweet_ttl,
            )
        enriched.locations = extract_locations(
            parsed.text, self.gazetteer, self.location_cache, now=parsed.created_at
        )
        enriched.sentiment = score_sentiment(parsed.text, self.sentiment_lexicon)
        enriched.topic_groups = assign_topic_groups(parsed.text, self.group_lexicons)
        tag_authoritative(enriched, self.authoritative)
        if enriched.authoritative:
            self.counters["authoritative"] += 1

        window_start = (
            parsed.created_at // self.config.misinfo.window
        ) * self.config.misinfo.window
        self._minute_buffers.setdefault(window_start, []).append(enriched)

    def _advance_watermark(self, event_time: float) -> None:
        if self._watermark is not None and event_time <= self._watermark:
            return
        self._watermark = event_time
        self.clock.set(event_time)
        if self._next_refresh is None or event_time >= self._next_refresh:
            self._refresh_misinfo(event_time)
        self._flush_minute_windows(upto=event_time)
        self._flush_cluster_windows(upto=event_time)

    def _refresh_misinfo(self, now: float) -> None:
        added = refresh_misinfo_keywords(
            list(self.config.misinfo.sources), self.misinfo_set, now
        )
        self.counters["misinfo_terms_added"] += len(added)
        interval = self.config.misinfo.refresh_interval
        self._next_refresh = (now // interval + 1) * interval

    # -- windowed jobs ----------------------------------------------------------

    def _flush_minute_windows(self, upto: Optional[float]) -> None:
        if not self._minute_buffers:
            return
        length = self.config.misinfo.window
        ready = sorted(
            start
            for start in self._minute_buffers
            if upto is None or start + length <= upto
        )
        for start in ready:
            posts = self._minute_buffers.pop(start)
            tagged_posts, report = tag_misinformation_window(
                posts, self.misinfo_set, window_length=length
            )
            self.window_rows.append(
                (
                    report.window.window_start,
                    report.posts_in,
                    report.tagged,
                    ";".join(report.top_terms()),
                )
            )
            self.counters["tagged"] += report.tagged
            for post in tagged_posts:
                self._route_tagged(post)

    def _route_tagged(self, enriched: EnrichedPost) -> None:
        created = enriched.post.created_at
        if self.drift is not None:
            promotions = self.drift.observe(enriched)
            self.counters["promoted_terms"] += len(promotions)
        self._observe_piggyback(enriched)

        if enriched.relevance and enriched.locations and not enriched.misinfo_terms:
            cluster_start = (
                created // self.config.clusters.window
            ) * self.config.clusters.window
            self._cluster_buffers.setdefault(cluster_start, []).append(enriched)

        day, month = self._day_cache.get(created)
        self.month_counts[month] += 1
        self.language_counts[enriched.post.lang] += 1
        region = enriched.locations[0] if enriched.locations else "none"
        self.region_day_counts[(region, day)] += 1
        groups = "+".join(sorted(enriched.topic_groups)) if enriched.topic_groups else "none"
        self.topic_region_day_counts[(groups, region, day)] += 1
        if enriched.relevance and not enriched.misinfo_terms:
            day_epoch = (created // DAY) * DAY
            for location in enriched.locations:
                self.social_day_counts.setdefault(location, Counter())[day_epoch] += 1

    def _observe_piggyback(self, enriched: EnrichedPost) -> None:
        slide = self.config.drift.slide
        index = int(enriched.post.created_at // slide)
        if self._pb_current is None:
            self._pb_slide_index = index
            self._pb_current = CooccurrenceStats(
                self.config.drift.window, self.config.keywords.tracked_phrases
            )
        elif index > self._pb_slide_index:
            self._roll_piggyback()
            self._pb_slide_index = index
            self._pb_current = CooccurrenceStats(
                self.config.drift.window, self.config.keywords.tracked_phrases
            )
        observe_misinfo_cooccurrence(self._pb_current, enriched)

    def _roll_piggyback(self) -> None:
        closed = self._pb_current
        closed_index = self._pb_slide_index
        self._pb_stats.append(closed)
        self._pb_history.append(Counter(closed.term_counts))
        if len(self._pb_history) < 2:
            return
        merged = CooccurrenceStats(self.config.drift.window)
        for stats in self._pb_stats:
            merged.merge(stats)
        trending = detect_trending(list(self._pb_history), self.config.drift.trending_k)
        candidates = detect_piggyback(
            trending,
            self.misinfo_set,
            merged,
            threshold=self.config.misinfo.piggyback_threshold,
        )
        if candidates:
            window_end = (closed_index + 1) * self.config.drift.slide
            self.piggyback_rows.append(
                {"window_end": window_end, "candidates": sorted(candidates)}
            )

    def _flush_cluster_windows(self, upto: Optional[float]) -> None:
        if not self._cluster_buffers:
            return
        length = self.config.clusters.window
        ready = sorted(
            start
            for start in self._cluster_buffers
            if upto is None or start + length <= upto
        )
        for start in ready:
            posts = self._cluster_buffers.pop(start)
            clusters = form_clusters(
                posts,
                window_length=length,
                min_cluster_size=self.config.clusters.min_size,
            )
            for cluster in clusters:
                features = cluster_features(cluster, posts)
                cluster.team_score = self.team.predict(features)
                self.cluster_store.add_cluster(cluster, features)
            self.counters["clusters"] += len(clusters)

    # -- run ----------------------------------------------------------------------

    def run(self, stop_signal: Optional[threading.Event] = None) -> RunResult:
        config = self.config
        started = time.monotonic()

        if config.case_feed:
            for report in load_case_reports(config.case_feed):
                if absorb_authoritative_locations(report, self.location_cache):
                    self.counters["case_reports"] += 1
                else:
                    self.counters["case_reports_skipped"] += 1

        speed = config.speed
        paced = speed != "max"
        last_event: Optional[float] = None
        with open(config.archive, "rb") as f:
            for raw_line in f:
                if stop_signal is not None and stop_signal.is_set():
                    self.counters["stopped_early"] = 1
                    break
                parsed = parse_post(raw_line.rstrip(b"\n"))
                if isinstance(parsed, Rejection):
                    self.rejections[parsed.reason] += 1
                    continue
                if config.until is not None and parsed.created_at > config.until:
                    break
                if paced and last_event is not None:
                    gap = (parsed.created_at - last_event) / float(speed)
                    if gap > 0:
                        time.sleep(gap)
                last_event = parsed.created_at
                self.ingest_post(parsed)

        # end of stream: close everything still buffered
        self._flush_minute_windows(upto=None)
        if self.drift is not None:
            promotions = self.drift.flush()
            self.counters["promoted_terms"] += len(promotions)
        self._flush_cluster_windows(upto=None)

        if config.evidence_feed:
            for ev in load_evidence_feed(config.evidence_feed):
                changes = self.cluster_store.ingest_evidence(ev, classifier=self.team)
                self.counters["evidence_applied"] += 1
                self.counters["status_changes"] += len(changes)

        elapsed = time.monotonic() - started
        report_paths = self._write_reports()
        summary = self._summary()
        summary_path = Path(config.out_dir) / "summary.json"
        summary_path.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
        report_paths.append(summary_path)
        posts_per_sec = (
            self.counters["records_in"] / elapsed if elapsed > 0 else None
        )
        return RunResult(0, Path(config.out_dir), summary, report_paths, posts_per_sec)

    # -- reporting ------------------------------------------------------------------

    def _write_reports(self) -> list[Path]:
        out = Path(self.config.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        paths: list[Path] = []

        windows_path = out / "windows.csv"
        with open(windows_path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(["window_start", "posts_in", "tagged", "top_terms"])
            for row in self.window_rows:
                writer.writerow(row)
        paths.append(windows_path)

        clusters_path = out / "clusters.json"
        clusters_path.write_text(
            json.dumps(self.cluster_store.export(), indent=2, sort_keys=True) + "\n"
        )
        paths.append(clusters_path)

        changes_path = out / "changes.csv"
        with open(changes_path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(["cluster_id", "old_status", "new_status", "evidence_id"])
            for change in self.cluster_store.change_log:
                writer.writerow(
                    [change.cluster_id, change.old_status, change.new_status, change.evidence_id]
                )
        paths.append(changes_path)

        audit_path = out / "keywords.jsonl"
        with open(audit_path, "w", encoding="utf-8") as f:
            if self.drift is not None:
                for event in self.drift.audit:
                    f.write(json.dumps(event.to_json_obj(), sort_keys=True) + "\n")
        paths.append(audit_path)

        piggyback_path = out / "piggyback.jsonl"
        with open(piggyback_path, "w", encoding="utf-8") as f:
            for row in self.piggyback_rows:
                f.write(json.dumps(row, sort_keys=True) + "\n")
        paths.append(piggyback_path)

        results = self._correlation_results()
        tables = {
            "month": dict(self.month_counts),
            "language": dict(self.language_counts),
            "region_day": dict(self.region_day_counts),
            "topic_region_day": dict(self.topic_region_day_counts),
        }
        paths.extend(emit_report(tables, results, out))
        return paths

    def _correlation_results(self) -> list[CorrelationResult]:
        if not self.config.case_feed:
            return []
        social = {
            region: daily_series(region, dict(counts))
            for region, counts in self.social_day_counts.items()
        }
        cases: dict[str, Counter] = {}
        for report in load_case_reports(self.config.case_feed):
            region = report.region.strip().lower()
            day = (report.date // DAY) * DAY
            cases.setdefault(region, Counter())[day] += report.new_cases
        cases_series = {r: daily_series(r, dict(c)) for r, c in cases.items()}
        return correlate_regions(social, cases_series, max_lag=self.config.max_lag_days)

    def _summary(self) -> dict:
        # Deterministic by construction: counts and event-time values only.
        return {
            "records_in": self.counters.get("records_in", 0),
            "rejections": dict(sorted(self.rejections.items())),
            "discarded": self.counters.get("discarded", 0),
            "relevant": self.counters.get("relevant", 0),
            "authoritative": self.counters.get("authoritative", 0),
            "tagged": self.counters.get("tagged", 0),
            "windows": len(self.window_rows),
            "clusters": self.counters.get("clusters", 0),
            "promoted_terms": self.counters.get("promoted_terms", 0),
            "misinfo_terms_added": self.counters.get("misinfo_terms_added", 0),
            "evidence_applied": self.counters.get("evidence_applied", 0),
            "status_changes": self.counters.get("status_changes", 0),
            "case_reports": self.counters.get("case_reports", 0),
            "active_keywords": self.keywords.active_terms(),
        }


def run_pipeline(config: PipelineConfig, stop_signal: Optional[threading.Event] = None) -> RunResult:
    runner = PipelineRunner(config)
    return runner.run(stop_signal=stop_signal)
