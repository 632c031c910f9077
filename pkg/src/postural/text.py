"""Text normalization shared by the extraction and semantics modules.

Two distinct rules live here on purpose:

* ``clean_tokens`` is the corpus-cleaning rule: lowercase, every
  punctuation character (including hyphens) becomes a separator, stop
  words are kept.  "XSS (cross-site scripting)!" -> ["xss", "cross",
  "site", "scripting"].
* ``normalize_phrase`` is the milder rule used for attack-node port
  phrases, which stay human-readable on the dashboard: boundary
  punctuation is stripped but hyphens and dots *inside* a token survive,
  so "EC-CUBE 3.0.0 to 3.0.18" normalizes to "ec-cube 3.0.0 to 3.0.18".
"""

from __future__ import annotations

import re

_TOKEN_RE = re.compile(r"[a-z0-9]+")
# Token = alphanumeric runs optionally joined by single '-' or '.' characters.
_PHRASE_TOKEN_RE = re.compile(r"[a-z0-9]+(?:[-.][a-z0-9]+)*")


def clean_tokens(text: str) -> list[str]:
    """Corpus cleaning: lowercase, split on anything non-alphanumeric."""
    return _TOKEN_RE.findall(text.lower())


def normalize_phrase(text: str) -> str:
    """Port-phrase normalization: lowercase, keep intra-token '-'/'.'."""
    return " ".join(_PHRASE_TOKEN_RE.findall(text.lower()))
