"""Rule-based entity extraction from vulnerability descriptions.

The extractor runs six ordered passes over a description, one per entity
kind.  Earlier passes win: a later candidate that overlaps an accepted
span is discarded.  Within a pass, longer lexicon phrases are tried
before shorter ones.

Lexicons ship as plain text data files (one phrase per line, ``#``
comments) and are user-extensible; the literal token ``...`` inside a
phrase matches up to six intervening words.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path


class EntityLabel(enum.Enum):
    VulnerabilityType = "VulnerabilityType"
    AffectedProduct = "AffectedProduct"
    RootCause = "RootCause"
    Impact = "Impact"
    AttackerType = "AttackerType"
    AttackVector = "AttackVector"


@dataclass(frozen=True)
class EntitySpan:
    label: EntityLabel
    text: str
    start: int
    end: int

    def __post_init__(self):
        if not 0 <= self.start < self.end:
            raise ValueError(f"bad span offsets [{self.start}, {self.end})")

    def overlaps(self, other: "EntitySpan") -> bool:
        return self.start < other.end and other.start < self.end


def load_lexicon(path: str | Path) -> list[str]:
    """Read phrases from a lexicon file, skipping blanks and comments."""
    lines = Path(path).read_text("utf-8").splitlines()
    phrases = []
    for line in lines:
        phrase = line.split("#", 1)[0].strip()
        if phrase:
            phrases.append(phrase)
    return phrases


def _default_lexicon(name: str) -> list[str]:
    raw = resources.files("postural.data.lexicons").joinpath(f"{name}.txt").read_text("utf-8")
    return [p.split("#", 1)[0].strip() for p in raw.splitlines() if p.split("#", 1)[0].strip()]


def _phrase_pattern(phrase: str) -> re.Pattern:
    parts = []
    for word in phrase.split():
        if word == "...":
            parts.append(r"(?:\S+\s+){0,6}?")
        else:
            parts.append(re.escape(word) + r"\s+")
    body = "".join(parts).removesuffix(r"\s+")
    return re.compile(rf"\b{body}\b", re.IGNORECASE)


@lru_cache(maxsize=8)
def _compiled_lexicon(phrases: tuple[str, ...]) -> tuple[re.Pattern, ...]:
    ordered = sorted(phrases, key=lambda p: (-len(p), p))
    return tuple(_phrase_pattern(p) for p in ordered)


# A product mention: run of capitalized-ish tokens followed by a version,
# e.g. "LibSass 3.4.5" or "EC-CUBE versions from 3.0.0 to 3.0.18".
_CAP_TOKEN = r"[A-Z][A-Za-z0-9_.+-]*"
_VERSION = r"v?\d[\w.]*"
_PRODUCT_RE = re.compile(
    rf"(?:{_CAP_TOKEN})(?:\s+{_CAP_TOKEN})*"
    rf"\s+(?:versions?\s+)?(?:from\s+)?(?:before\s+|prior\s+to\s+)?"
    rf"{_VERSION}(?:\s+(?:to|through)\s+{_VERSION})*"
)
_PRODUCT_BEFORE_RE = re.compile(
    rf"\bin\s+((?:{_CAP_TOKEN})(?:\s+[A-Za-z][\w.+-]*)*?\s+before\s+(?:version\s+)?{_VERSION})"
)
# Clause bodies run to sentence punctuation or the next subordinate clause.
_CLAUSE_BODY = r"((?:(?!\b(?:because|due\s+to|via|which|allowing|leading)\b)[^.;,])+)"
_VECTOR_RE = re.compile(rf"\bvia\s+{_CLAUSE_BODY}", re.IGNORECASE)
_CAUSE_RE = re.compile(rf"\b(?:due\s+to|because\s+of|because)\s+{_CLAUSE_BODY}", re.IGNORECASE)


@dataclass(frozen=True)
class ExtractionRules:
    """Lexicons driving the first three passes; defaults ship with the package."""

    attacker_types: tuple[str, ...]
    impacts: tuple[str, ...]
    vulnerability_types: tuple[str, ...]

    @classmethod
    def default(cls) -> "ExtractionRules":
        return cls(
            attacker_types=tuple(_default_lexicon("attacker_types")),
            impacts=tuple(_default_lexicon("impacts")),
            vulnerability_types=tuple(_default_lexicon("vulnerability_types")),
        )


def _accept(accepted: list[EntitySpan], candidate: EntitySpan) -> bool:
    if any(candidate.overlaps(span) for span in accepted):
        return False
    accepted.append(candidate)
    return True


def _lexicon_pass(description: str, label: EntityLabel,
                  phrases: tuple[str, ...], accepted: list[EntitySpan]):
    for pattern in _compiled_lexicon(phrases):
        for m in pattern.finditer(description):
            span = EntitySpan(label, description[m.start():m.end()], m.start(), m.end())
            _accept(accepted, span)


def _trimmed_group_span(description: str, label: EntityLabel, m: re.Match) -> EntitySpan | None:
    start, end = m.start(1), m.end(1)
    while end > start and description[end - 1].isspace():
        end -= 1
    if end <= start:
        return None
    return EntitySpan(label, description[start:end], start, end)


def extract_entities(description: str,
                     rules: ExtractionRules | None = None) -> list[EntitySpan]:
    """Extract entity spans; a description matching no rule yields []."""
    if not description.strip():
        raise ValueError("empty description")
    rules = rules or ExtractionRules.default()
    accepted: list[EntitySpan] = []

    _lexicon_pass(description, EntityLabel.AttackerType, rules.attacker_types, accepted)
    _lexicon_pass(description, EntityLabel.Impact, rules.impacts, accepted)
    _lexicon_pass(description, EntityLabel.VulnerabilityType, rules.vulnerability_types, accepted)

    # Leading product-with-version noun phrase: first non-overlapping hit only.
    candidates = []
    for m in _PRODUCT_BEFORE_RE.finditer(description):
        span = _trimmed_group_span(description, EntityLabel.AffectedProduct, m)
        if span:
            candidates.append(span)
    for m in _PRODUCT_RE.finditer(description):
        candidates.append(EntitySpan(EntityLabel.AffectedProduct,
                                     description[m.start():m.end()], m.start(), m.end()))
    for span in sorted(candidates, key=lambda s: (s.start, -s.end)):
        if _accept(accepted, span):
            break

    for regex, label in ((_VECTOR_RE, EntityLabel.AttackVector),
                         (_CAUSE_RE, EntityLabel.RootCause)):
        for m in regex.finditer(description):
            span = _trimmed_group_span(description, label, m)
            if span:
                _accept(accepted, span)

    return sorted(accepted, key=lambda s: (s.start, s.end))
