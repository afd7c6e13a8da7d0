"""Dataset statistics tables and deterministic report files.

The month and language tables mirror the shape of the collection-summary
tables the report bundle is compared against: month/count, and
language/count/pct with the percentage floored to one decimal so the
column never sums past 100.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path
from typing import Iterable

from ..enrich.model import EnrichedPost
from ..timeutil import day_key, month_key

DIMENSIONS = ("month", "language", "region_day", "topic_region_day")


def _primary_region(post: EnrichedPost) -> str:
    # Multi-location posts count once, under their first (sorted) location,
    # to keep every dimension an exact partition of the stream.
    return post.locations[0] if post.locations else "none"


def _group_label(post: EnrichedPost) -> str:
    return "+".join(sorted(post.topic_groups)) if post.topic_groups else "none"


def bucket_counts(posts: Iterable[EnrichedPost], key: str) -> dict:
    """Exact counts per key; values over all keys sum to the stream length."""
    if key not in DIMENSIONS:
        raise ValueError(f"unknown dimension {key!r}, expected one of {DIMENSIONS}")
    counts: dict = {}
    for post in posts:
        created = post.post.created_at
        if key == "month":
            bucket = month_key(created)
        elif key == "language":
            bucket = post.post.lang
        elif key == "region_day":
            bucket = (_primary_region(post), day_key(created))
        else:
            bucket = (_group_label(post), _primary_region(post), day_key(created))
        counts[bucket] = counts.get(bucket, 0) + 1
    return counts


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def emit_report(tables: dict[str, dict], results: list, out_dir: str | Path) -> list[Path]:
    """Write the stats tables and correlation results; returns the paths.

    Output is byte-deterministic: fixed orderings, fixed float formatting,
    nothing derived from wall-clock time.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    if "month" in tables:
        path = out / "month.csv"
        rows = [[m, c] for m, c in sorted(tables["month"].items())]
        _write_csv(path, ["month", "count"], rows)
        written.append(path)

    if "language" in tables:
        path = out / "languages.csv"
        total = sum(tables["language"].values())
        ranked = sorted(tables["language"].items(), key=lambda kv: (-kv[1], kv[0]))
        rows = []
        for lang, count in ranked:
            pct = math.floor(count * 1000.0 / total) / 10.0 if total else 0.0
            rows.append([lang, count, f"{pct:.1f}"])
        _write_csv(path, ["language", "count", "pct"], rows)
        written.append(path)

    if "region_day" in tables:
        path = out / "region_day.csv"
        rows = [[r, d, c] for (r, d), c in sorted(tables["region_day"].items())]
        _write_csv(path, ["region", "day", "count"], rows)
        written.append(path)

    if "topic_region_day" in tables:
        path = out / "topic_region_day.csv"
        rows = [
            [g, r, d, c]
            for (g, r, d), c in sorted(tables["topic_region_day"].items())
        ]
        _write_csv(path, ["topic_groups", "region", "day", "count"], rows)
        written.append(path)

    if results:
        path = out / "correlation.jsonl"
        with open(path, "w", encoding="utf-8") as f:
            for result in results:
                f.write(json.dumps(result.to_json_obj(), sort_keys=True) + "\n")
        written.append(path)

    return written
