from .archive import ArchiveSource, posts_from_archive, replay_archive
from .posts import Post, Rejection, parse_post
from .synthetic import (
    DriftTermSchedule,
    GeneratedCorpus,
    SyntheticConfig,
    SyntheticConfigError,
    generate_synthetic,
    load_ground_truth,
)

__all__ = [
    "ArchiveSource",
    "DriftTermSchedule",
    "GeneratedCorpus",
    "Post",
    "Rejection",
    "SyntheticConfig",
    "SyntheticConfigError",
    "generate_synthetic",
    "load_ground_truth",
    "parse_post",
    "posts_from_archive",
    "replay_archive",
]
