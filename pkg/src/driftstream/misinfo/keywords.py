"""Misinformation keyword set and its external source feeds.

The set starts from a couple of notorious seed terms and grows by polling
source snapshots: plain term lists, or sectioned documents whose headlines
are distilled into phrases. Within a run the set only grows; removal is a
config-level tombstone, never a delete, so tagging coverage of a fixed
corpus never shrinks mid-run.
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Iterable, Optional

from ..keywords import DEFAULT_STOPWORDS, KeywordEntry

DEFAULT_MISINFO_SEEDS = ("bioweapon", "plandemic")

# Filler that carries no keyword value in a headline about a rumor.
GENERIC_HEADLINE_WORDS = frozenset(
    "conspiracy conspiracies theory theories hoax hoaxes rumor rumors rumour "
    "rumours claim claims claimed says said misinformation disinformation "
    "fake news debunked false".split()
)

_PUNCT = re.compile(r"[^\w\s-]")


class MisinfoKeywordSet:
    def __init__(
        self,
        seeds: Iterable[str] = DEFAULT_MISINFO_SEEDS,
        tombstones: Iterable[str] = (),
        now: float = 0.0,
    ):
        self.entries: dict[str, KeywordEntry] = {}
        self.source_version: dict[str, float] = {}
        self.tombstones = {t.strip().lower() for t in tombstones}
        self.skipped_sources = 0
        self.missing_sections = 0
        for term in seeds:
            self._add(term, now)

    def _add(self, term: str, now: float) -> bool:
        entry = KeywordEntry(term=term, origin="misinfo", first_seen=now)
        if entry.term in self.entries:
            return False
        self.entries[entry.term] = entry
        return True

    def active_terms(self) -> list[str]:
        return sorted(t for t in self.entries if t not in self.tombstones)

    def match(self, text: str) -> set[str]:
        lowered = text.lower()
        return {t for t in self.active_terms() if t in lowered}

    def __contains__(self, term: str) -> bool:
        return term.strip().lower() in self.entries

    def __len__(self) -> int:
        return len(self.entries)


def _split_sections(document: str) -> dict[str, list[str]]:
    """Markdown-style sections: ``# Heading`` lines open a section, the
    non-empty lines below it are its headlines."""
    sections: dict[str, list[str]] = {}
    current: Optional[str] = None
    for raw_line in document.splitlines():
        line = raw_line.strip()
        if not line:
            continue
        if line.startswith("#"):
            current = line.lstrip("#").strip().lower()
            sections.setdefault(current, [])
        elif current is not None:
            sections[current].append(line)
    return sections


def _headline_phrase(headline: str, drop_words: frozenset[str]) -> str:
    cleaned = _PUNCT.sub(" ", headline.lower())
    kept = [
        token
        for token in cleaned.split()
        if len(token) >= 3 and token not in DEFAULT_STOPWORDS and token not in drop_words
    ]
    return " ".join(kept)


def extract_misinfo_terms(document: str, sections: tuple[str, ...] = ("conspiracy",)) -> list[str]:
    """One normalized phrase per headline in the configured sections.

    Stopwords and generic rumor-vocabulary are stripped, so a headline like
    "Plandemic conspiracy" yields just "plandemic".
    """
    parsed = _split_sections(document)
    drop = GENERIC_HEADLINE_WORDS | frozenset(s.lower() for s in sections)
    terms: list[str] = []
    seen = set()
    for section in sections:
        for headline in parsed.get(section.lower(), []):
            phrase = _headline_phrase(headline, drop)
            if phrase and phrase not in seen:
                seen.add(phrase)
                terms.append(phrase)
    return terms


def refresh_misinfo_keywords(
    sources: list[dict],
    keyword_set: MisinfoKeywordSet,
    now: float,
) -> list[str]:
    """Poll source snapshots; returns newly added terms (sorted).

    Unreadable sources are skipped and counted; the existing set is always
    retained. Re-reading an unchanged source adds nothing.
    """
    added: list[str] = []
    for descriptor in sources:
        kind = descriptor.get("kind", "terms_file")
        path = Path(descriptor["path"])
        name = descriptor.get("name", str(path))
        try:
            text = path.read_text(encoding="utf-8")
        except OSError:
            keyword_set.skipped_sources += 1
            continue
        if kind == "terms_file":
            try:
                terms = [str(t) for t in json.loads(text).get("terms", [])]
            except (json.JSONDecodeError, AttributeError):
                keyword_set.skipped_sources += 1
                continue
        elif kind == "headlines":
            sections = tuple(descriptor.get("sections", ("conspiracy",)))
            parsed = _split_sections(text)
            if not any(s.lower() in parsed for s in sections):
                keyword_set.missing_sections += 1
            terms = extract_misinfo_terms(text, sections)
        else:
            keyword_set.skipped_sources += 1
            continue
        for term in terms:
            if keyword_set._add(term, now):
                added.append(term.strip().lower())
        keyword_set.source_version[name] = now
    return sorted(added)
