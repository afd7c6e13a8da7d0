from .clean import clean_post
from .locations import (
    CaseReport,
    Gazetteer,
    LocationCache,
    absorb_authoritative_locations,
    extract_locations,
    load_case_reports,
    normalize_location,
)
from .model import TOPIC_GROUPS, EnrichedPost
from .sentiment import DEFAULT_SENTIMENT_LEXICON, load_sentiment_lexicon, score_sentiment
from .topics import DEFAULT_GROUP_LEXICONS, assign_topic_groups, load_group_lexicons

__all__ = [
    "CaseReport",
    "DEFAULT_GROUP_LEXICONS",
    "DEFAULT_SENTIMENT_LEXICON",
    "EnrichedPost",
    "Gazetteer",
    "LocationCache",
    "TOPIC_GROUPS",
    "absorb_authoritative_locations",
    "assign_topic_groups",
    "clean_post",
    "extract_locations",
    "load_case_reports",
    "load_group_lexicons",
    "load_sentiment_lexicon",
    "normalize_location",
    "score_sentiment",
]
