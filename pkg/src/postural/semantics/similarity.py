"""Phrase vectors and the similarity used to match node ports."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DimensionMismatch
from ..text import clean_tokens
from .embeddings import EmbeddingModel


@dataclass(frozen=True)
class PhraseVector:
    values: np.ndarray
    coverage: float  # fraction of phrase tokens found in vocabulary


def phrase_vector(model: EmbeddingModel, phrase: str) -> PhraseVector:
    """Mean of in-vocabulary token vectors; all-OOV gives the zero vector."""
    tokens = clean_tokens(phrase)
    rows = [model.vocabulary[t] for t in tokens if t in model.vocabulary]
    if not rows:
        return PhraseVector(values=np.zeros(model.dim), coverage=0.0)
    return PhraseVector(
        values=model.vectors[rows].mean(axis=0),
        coverage=len(rows) / len(tokens),
    )


def similarity(a: PhraseVector, b: PhraseVector) -> float:
    """Cosine similarity, clamped to [-1, 1]; zero vectors compare as 0."""
    if a.values.shape != b.values.shape:
        raise DimensionMismatch(
            f"vector dims differ: {a.values.shape[0]} vs {b.values.shape[0]}"
        )
    na = float(np.linalg.norm(a.values))
    nb = float(np.linalg.norm(b.values))
    if na == 0.0 or nb == 0.0:
        return 0.0
    value = float(a.values @ b.values) / (na * nb)
    return max(-1.0, min(1.0, value))


def port_similarity(model: EmbeddingModel, out_port: list[str], in_port: list[str]) -> float:
    """Best clamped pairwise similarity between two ports.

    Max aggregation: a single postcondition enabling a single
    precondition is enough to link two nodes.
    """
    if not out_port or not in_port:
        raise ValueError("ports must be non-empty")
    out_vecs = [phrase_vector(model, p) for p in out_port]
    in_vecs = [phrase_vector(model, p) for p in in_port]
    best = 0.0
    for ov in out_vecs:
        for iv in in_vecs:
            best = max(best, similarity(ov, iv))
    return best
