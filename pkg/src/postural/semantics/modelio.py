"""Vector-model file format.

Text layout, exact round-trip (floats serialized via repr):

    PVEC 1 <|vocab|> <dim>
    <training-config JSON>
    <token> <f0> <f1> ... per vocabulary row, in index order
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from ..errors import CorruptDocument
from .embeddings import EmbeddingModel, TrainingConfig

MAGIC = "PVEC"
FORMAT_VERSION = 1


def save_model(model: EmbeddingModel, path: str | Path) -> None:
    path = Path(path)
    lines = [
        f"{MAGIC} {FORMAT_VERSION} {len(model.vocabulary)} {model.dim}",
        json.dumps(model.config.to_dict(), sort_keys=True),
    ]
    ordered = sorted(model.vocabulary.items(), key=lambda kv: kv[1])
    for token, index in ordered:
        row = " ".join(repr(float(x)) for x in model.vectors[index])
        lines.append(f"{token} {row}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_model(path: str | Path) -> EmbeddingModel:
    path = Path(path)
    lines = path.read_text("utf-8").splitlines()
    if not lines:
        raise CorruptDocument(f"{path}: empty model file")
    header = lines[0].split()
    if len(header) != 4 or header[0] != MAGIC:
        raise CorruptDocument(f"{path}: bad model header")
    version, vocab_size, dim = (int(x) for x in header[1:])
    if version != FORMAT_VERSION:
        raise CorruptDocument(f"{path}: unsupported model version {version}")
    if len(lines) != 2 + vocab_size:
        raise CorruptDocument(f"{path}: expected {vocab_size} rows")

    config = TrainingConfig.from_dict(json.loads(lines[1]))
    vocabulary: dict[str, int] = {}
    vectors = np.empty((vocab_size, dim))
    for i, line in enumerate(lines[2:]):
        fields = line.split()
        if len(fields) != dim + 1:
            raise CorruptDocument(f"{path}: row {i} has wrong arity")
        vocabulary[fields[0]] = i
        vectors[i] = [float(x) for x in fields[1:]]
    if len(vocabulary) != vocab_size:
        raise CorruptDocument(f"{path}: duplicate tokens in model file")
    return EmbeddingModel(vocabulary=vocabulary, dim=dim, vectors=vectors, config=config)
