"""Command-line entry point.

Subcommands: run (full pipeline), synth (generate a corpus), replay (drive
an archive through a single job), report (stats tables from an archive),
keywords (active keyword set at a point in time), clusters (inspect a run's
cluster export). Exit codes: 0 success, 2 validation error, 3 runtime
error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import yaml

from .analytics.tables import emit_report
from .core.job import JobSpec, JobStartupError, execute_job
from .keywords import KeywordSet
from .pipeline.config import ConfigError, load_config
from .pipeline.runner import run_pipeline
from .sources.posts import Rejection, parse_post
from .sources.synthetic import SyntheticConfig, SyntheticConfigError, generate_synthetic
from .timeutil import TimestampError, format_timestamp, month_key, parse_timestamp

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_RUNTIME = 3


def _cmd_run(args: argparse.Namespace) -> int:
    try:
        config = load_config(args.config)
    except ConfigError as exc:
        for error in exc.errors:
            print(f"config error: {error}", file=sys.stderr)
        return EXIT_VALIDATION
    if args.seed is not None:
        config.seed = args.seed
    if args.out_dir is not None:
        config.out_dir = args.out_dir
    if args.speed is not None:
        config.speed = args.speed if args.speed == "max" else float(args.speed)
    if args.until is not None:
        try:
            config.until = parse_timestamp(args.until)
        except TimestampError as exc:
            print(f"--until: {exc}", file=sys.stderr)
            return EXIT_VALIDATION
    try:
        result = run_pipeline(config)
    except Exception as exc:  # noqa: BLE001 - surface as runtime exit code
        print(f"pipeline failed: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    print(json.dumps(result.summary, indent=2, sort_keys=True))
    print(f"reports written to {result.out_dir}", file=sys.stderr)
    return result.exit_code


def _cmd_synth(args: argparse.Namespace) -> int:
    try:
        with open(args.config, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
        config = SyntheticConfig.from_dict(data)
    except (OSError, SyntheticConfigError, TypeError) as exc:
        print(f"synth config error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    corpus = generate_synthetic(config, args.out)
    print(
        json.dumps(
            {
                "archive": str(corpus.archive_path),
                "truth": str(corpus.truth_path),
                **corpus.stats,
            },
            indent=2,
        )
    )
    return EXIT_OK


def _cmd_replay(args: argparse.Namespace) -> int:
    speed = args.speed if args.speed == "max" else float(args.speed)
    emit = {"kind": "null"}
    if args.out:
        from .core.log import DurableLog

        emit = {"kind": "log", "log": DurableLog(args.out)}
    spec = JobSpec(
        name="replay",
        ingest={"kind": "archive", "path": args.archive, "speed": speed},
        emit=emit,
    )
    try:
        report = execute_job(spec)
    except JobStartupError as exc:
        print(f"replay failed to start: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    print(
        json.dumps(
            {"records_in": report.records_in, "records_out": report.records_out, "errors": report.errors}
        )
    )
    return EXIT_OK


def _cmd_report(args: argparse.Namespace) -> int:
    months: dict[str, int] = {}
    languages: dict[str, int] = {}
    try:
        f = open(args.archive, "rb")
    except OSError as exc:
        print(f"report: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    with f:
        for line in f:
            parsed = parse_post(line.rstrip(b"\n"))
            if isinstance(parsed, Rejection):
                continue
            month = month_key(parsed.created_at)
            months[month] = months.get(month, 0) + 1
            languages[parsed.lang] = languages.get(parsed.lang, 0) + 1
    paths = emit_report({"month": months, "language": languages}, [], args.out)
    for path in paths:
        print(path)
    return EXIT_OK


def _cmd_keywords(args: argparse.Namespace) -> int:
    if args.action != "show":
        print(f"unknown keywords action: {args.action}", file=sys.stderr)
        return EXIT_VALIDATION
    try:
        at = parse_timestamp(args.at) if args.at else None
    except TimestampError as exc:
        print(f"--at: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    seeds = list(KeywordSet().seed_terms())
    if args.config:
        try:
            config = load_config(args.config)
            seeds = sorted(config.keywords.seeds)
        except ConfigError as exc:
            print(f"config error: {exc}", file=sys.stderr)
            return EXIT_VALIDATION
    entries = [{"term": t, "origin": "seed", "promoted_at": None} for t in seeds]
    if args.audit:
        with open(args.audit, "r", encoding="utf-8") as f:
            for line in f:
                if not line.strip():
                    continue
                event = json.loads(line)
                if at is None or event["promoted_at"] <= at:
                    entries.append(
                        {
                            "term": event["term"],
                            "origin": "learned",
                            "promoted_at": format_timestamp(event["promoted_at"]),
                        }
                    )
    print(json.dumps(entries, indent=2))
    return EXIT_OK


def _cmd_clusters(args: argparse.Namespace) -> int:
    path = Path(args.report_dir) / "clusters.json"
    if not path.is_file():
        print(f"no cluster export at {path}", file=sys.stderr)
        return EXIT_VALIDATION
    clusters = json.loads(path.read_text())
    if args.status:
        clusters = [c for c in clusters if c["status"] == args.status]
    print(json.dumps(clusters, indent=2, sort_keys=True))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="driftstream",
        description="Live-knowledge pipeline over social post streams",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run the full pipeline from a config file")
    run.add_argument("--config", required=True)
    run.add_argument("--seed", type=int)
    run.add_argument("--out-dir")
    run.add_argument("--speed")
    run.add_argument("--until", help="stop at this simulated time (ISO-8601)")
    run.set_defaults(func=_cmd_run)

    synth = sub.add_parser("synth", help="generate a synthetic corpus")
    synth.add_argument("--config", required=True)
    synth.add_argument("--out", required=True)
    synth.set_defaults(func=_cmd_synth)

    replay = sub.add_parser("replay", help="replay an archive through a job")
    replay.add_argument("--archive", required=True)
    replay.add_argument("--speed", default="max")
    replay.add_argument("--out", help="durable log directory to append into")
    replay.set_defaults(func=_cmd_replay)

    report = sub.add_parser("report", help="stats tables from an archive")
    report.add_argument("--archive", required=True)
    report.add_argument("--out", required=True)
    report.set_defaults(func=_cmd_report)

    keywords = sub.add_parser("keywords", help="inspect the keyword set")
    keywords.add_argument("action", choices=["show"])
    keywords.add_argument("--at", help="simulated time cutoff (ISO-8601)")
    keywords.add_argument("--audit", help="promoted-keyword audit log (keywords.jsonl)")
    keywords.add_argument("--config")
    keywords.set_defaults(func=_cmd_keywords)

    clusters = sub.add_parser("clusters", help="inspect a run's cluster export")
    clusters.add_argument("report_dir")
    clusters.add_argument("--status", choices=["tentative", "corroborated", "refuted"])
    clusters.set_defaults(func=_cmd_clusters)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
