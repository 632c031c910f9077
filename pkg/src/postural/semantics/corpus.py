"""Security-corpus assembly and sliding-window sampling."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from ..ingest.records import CveRecord
from ..text import clean_tokens


@dataclass
class Corpus:
    """Cleaned token documents with parallel provenance tags.

    Cleaning lowercases and strips punctuation but keeps stop words:
    phrases like "denial of service" lose their meaning without them.
    """

    documents: list[list[str]]
    source_tags: list[str]

    def __post_init__(self):
        if len(self.documents) != len(self.source_tags):
            raise ValueError("documents and source_tags must be parallel")

    def token_count(self) -> int:
        return sum(len(doc) for doc in self.documents)


@dataclass(frozen=True)
class TrainingSample:
    center: str
    context: tuple[str, ...]


def build_corpus(records: Iterable[CveRecord], extra_docs: Iterable[str] = ()) -> Corpus:
    """One document per CVE description plus one per extra text."""
    documents: list[list[str]] = []
    tags: list[str] = []
    for record in records:
        documents.append(clean_tokens(record.description))
        tags.append(f"cve:{record.id}")
    for i, text in enumerate(extra_docs):
        documents.append(clean_tokens(text))
        tags.append(f"doc:{i}")
    return Corpus(documents=documents, source_tags=tags)


def sample_windows(corpus: Corpus, window: int) -> Iterator[TrainingSample]:
    """Emit one sample per token position: center plus in-bounds neighbors.

    Exactly sum(len(doc)) samples come out regardless of window size;
    a single-token document yields one sample with empty context.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    for doc in corpus.documents:
        for i, center in enumerate(doc):
            context = tuple(doc[max(0, i - window):i] + doc[i + 1:i + 1 + window])
            yield TrainingSample(center=center, context=context)
