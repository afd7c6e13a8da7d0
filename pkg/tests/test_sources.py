"""Parsing, archive replay, and the synthetic generator."""

from __future__ import annotations

import json

import pytest

from driftstream.sources.posts import Post, Rejection, parse_post
from driftstream.sources.archive import posts_from_archive, replay_archive
from driftstream.sources.synthetic import (
    DriftTermSchedule,
    SyntheticConfig,
    SyntheticConfigError,
    generate_synthetic,
    load_ground_truth,
)
from driftstream.timeutil import parse_timestamp


SAMPLE_LINE = json.dumps(
    {
        "created_at": "Sat Feb 29 18:59:56 +0000 2020",
        "id": 1233829273691049984,
        "text": "Coronavirus will spread in California, health officials say: "
        "'It's already out of the bag'",
    }
)


class TestParsePost:
    def test_legacy_timestamp_line_parses(self):
        post = parse_post(SAMPLE_LINE)
        assert isinstance(post, Post)
        assert post.id == 1233829273691049984
        assert post.created_at == parse_timestamp("2020-02-29T18:59:56Z")

    def test_iso_timestamp_line_parses(self):
        line = json.dumps({"created_at": "2020-03-01T00:00:00Z", "id": 5, "text": "hi virus"})
        post = parse_post(line)
        assert isinstance(post, Post)
        assert post.created_at == parse_timestamp("2020-03-01T00:00:00Z")

    def test_empty_line_rejected(self):
        rejection = parse_post("")
        assert isinstance(rejection, Rejection)
        assert rejection.reason == "empty"

    def test_missing_text_rejected(self):
        line = json.dumps({"created_at": "2020-03-01T00:00:00Z", "id": 5})
        rejection = parse_post(line)
        assert rejection == Rejection("missing_field", "text")

    def test_missing_id_rejected(self):
        line = json.dumps({"created_at": "2020-03-01T00:00:00Z", "text": "x"})
        assert parse_post(line).reason == "missing_field"

    def test_bad_json_rejected(self):
        assert parse_post("{not json").reason == "bad_json"
        assert parse_post('"just a string"').reason == "bad_json"

    def test_bad_timestamp_rejected(self):
        line = json.dumps({"created_at": "yesterday-ish", "id": 5, "text": "x"})
        assert parse_post(line).reason == "bad_timestamp"

    def test_invalid_utf8_rejected(self):
        assert parse_post(b'{"id": 1, "text": "\xff\xfe"}').reason == "bad_utf8"

    def test_non_numeric_id_rejected(self):
        line = json.dumps({"created_at": "2020-03-01T00:00:00Z", "id": "abc", "text": "x"})
        assert parse_post(line).reason == "bad_id"

    def test_retweeted_id_round_trips(self):
        line = json.dumps(
            {"created_at": "2020-03-01T00:00:00Z", "id": 9, "text": "rt", "retweeted_id": 7}
        )
        post = parse_post(line)
        assert post.is_retweet_of == 7


class TestReplayArchive:
    def test_counts_rejections_and_emits_valid(self, tmp_path):
        archive = tmp_path / "a.jsonl"
        lines = [
            SAMPLE_LINE,
            "",
            "{broken",
            json.dumps({"created_at": "2020-03-01T00:00:00Z", "id": 2, "text": "ok"}),
        ]
        archive.write_text("\n".join(lines) + "\n")
        source = replay_archive(archive, speed="max")
        records = list(source)
        assert len(records) == 2
        assert source.emitted == 2
        assert source.rejections == {"empty": 1, "bad_json": 1}

    def test_double_replay_identical(self, tmp_path):
        archive = tmp_path / "a.jsonl"
        archive.write_text(
            "\n".join(
                json.dumps({"created_at": "2020-03-01T00:00:00Z", "id": i, "text": f"post {i}"})
                for i in range(10)
            )
            + "\n"
        )
        first = [r.payload for r in replay_archive(archive)]
        second = [r.payload for r in replay_archive(archive)]
        assert first == second

    def test_missing_file_is_startup_error(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            replay_archive(tmp_path / "nope.jsonl")

    def test_bad_speed_rejected(self, tmp_path):
        archive = tmp_path / "a.jsonl"
        archive.write_text("\n")
        with pytest.raises(ValueError):
            replay_archive(archive, speed=0)

    def test_emitted_count_matches_offline_parse_oracle(self, tmp_path):
        corpus = generate_synthetic(
            SyntheticConfig(seed=21, duration_minutes=90, base_rate_per_minute=110),
            tmp_path,
        )
        oracle = 0
        with open(corpus.archive_path, "rb") as f:
            for line in f:
                if isinstance(parse_post(line.rstrip(b"\n")), Post):
                    oracle += 1
        source = replay_archive(corpus.archive_path, speed="max")
        assert sum(1 for _ in source) == oracle == corpus.post_count


class TestSyntheticGenerator:
    def test_same_seed_gives_byte_identical_files(self, tmp_path):
        config = SyntheticConfig(
            seed=1,
            duration_minutes=20,
            drift_schedule=[DriftTermSchedule("facemask", 0, 600)],
        )
        a = generate_synthetic(config, tmp_path / "a")
        b = generate_synthetic(config, tmp_path / "b")
        assert a.archive_path.read_bytes() == b.archive_path.read_bytes()
        assert a.truth_path.read_bytes() == b.truth_path.read_bytes()

    def test_different_seed_differs(self, tmp_path):
        a = generate_synthetic(SyntheticConfig(seed=1, duration_minutes=10), tmp_path / "a")
        b = generate_synthetic(SyntheticConfig(seed=2, duration_minutes=10), tmp_path / "b")
        assert a.archive_path.read_bytes() != b.archive_path.read_bytes()

    def test_solo_posts_start_at_solo_phase_and_carry_no_seed(self, tmp_path):
        config = SyntheticConfig(
            seed=5,
            duration_minutes=60,
            base_rate_per_minute=60,
            drift_schedule=[DriftTermSchedule("facemask", 0, 1800)],
        )
        corpus = generate_synthetic(config, tmp_path)
        truth = load_ground_truth(corpus.truth_path)
        solo_ids = {pid for pid, label in truth.items() if label["drift_phase"] == "solo"}
        assert solo_ids, "fixture must produce solo posts"
        start = parse_timestamp(config.start_time)
        for post in posts_from_archive(corpus.archive_path):
            if post.id in solo_ids:
                assert post.created_at - start >= 1800
                lowered = post.text.lower()
                assert "facemask" in lowered
                assert not any(k in lowered for k in config.seed_keywords)
                assert truth[post.id]["relevant"] is True

    def test_contradictory_schedule_rejected(self):
        with pytest.raises(SyntheticConfigError):
            SyntheticConfig(
                seed=1,
                drift_schedule=[DriftTermSchedule("facemask", 600, 600)],
            ).validate()

    def test_post_count_within_poisson_band(self, tmp_path):
        from scipy.stats import poisson

        corpus = generate_synthetic(
            SyntheticConfig(seed=8, duration_minutes=10, base_rate_per_minute=60),
            tmp_path,
        )
        low, high = poisson.interval(0.99, 600)
        assert low <= corpus.post_count <= high

    def test_sidecar_covers_every_post_and_labels_match_text(self, tmp_path):
        corpus = generate_synthetic(
            SyntheticConfig(seed=13, duration_minutes=15), tmp_path
        )
        truth = load_ground_truth(corpus.truth_path)
        seen = 0
        for post in posts_from_archive(corpus.archive_path):
            seen += 1
            label = truth[post.id]
            lowered = post.text.lower()
            for term in label["misinfo_terms"]:
                assert term in lowered
            if label["region"]:
                assert label["region"] in lowered
        assert seen == len(truth) == corpus.post_count

    def test_ids_unique_and_timestamps_nondecreasing(self, tmp_path):
        corpus = generate_synthetic(
            SyntheticConfig(seed=2, duration_minutes=30), tmp_path
        )
        ids = set()
        previous = None
        for post in posts_from_archive(corpus.archive_path):
            assert post.id not in ids
            ids.add(post.id)
            if previous is not None:
                assert post.created_at >= previous
            previous = post.created_at

    def test_unknown_config_field_rejected(self):
        with pytest.raises(SyntheticConfigError):
            SyntheticConfig.from_dict({"seed": 1, "bogus_field": True})
