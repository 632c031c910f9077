"""Word-vector training on the security corpus.

Both objectives predict through a shared negative-sampling step: a mean
of input-side vectors is scored against one positive and a handful of
sampled negative output-side vectors.  For the bag-of-words objective
the inputs are the window context and the positive is the center word;
for skip-gram the input is the center and each context word is a
positive in its own step.

``step_loss_and_grads`` is the single implementation of the step math;
the trainer applies its gradients and the test suite finite-differences
it, so there is no second code path to drift.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

import numpy as np

from ..errors import CorpusTooSmall
from .corpus import Corpus

_TABLE_SIZE = 1 << 17


@dataclass(frozen=True)
class TrainingConfig:
    architecture: str = "cbow"  # "cbow" | "skipgram"
    dim: int = 100
    window: int = 5
    epochs: int = 5
    learning_rate: float = 0.025
    min_learning_rate: float = 1e-4
    negative_samples: int = 5
    min_count: int = 2
    seed: int = 1
    workers: int = 1  # >1 trades determinism for lock-free parallel updates

    def __post_init__(self):
        if self.architecture not in ("cbow", "skipgram"):
            raise ValueError(f"unknown architecture {self.architecture!r}")
        if self.dim < 1 or self.window < 1 or self.epochs < 1 or self.workers < 1:
            raise ValueError("dim, window, epochs, workers must be >= 1")

    def to_dict(self) -> dict:
        return {
            "architecture": self.architecture,
            "dim": self.dim,
            "window": self.window,
            "epochs": self.epochs,
            "learning_rate": self.learning_rate,
            "min_learning_rate": self.min_learning_rate,
            "negative_samples": self.negative_samples,
            "min_count": self.min_count,
            "seed": self.seed,
            "workers": self.workers,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TrainingConfig":
        return cls(**d)


@dataclass(eq=False)
class EmbeddingModel:
    vocabulary: dict[str, int]
    dim: int
    vectors: np.ndarray  # |vocab| x dim projection-layer rows
    config: TrainingConfig
    epoch_losses: tuple[float, ...] = ()

    def vector(self, token: str) -> np.ndarray | None:
        index = self.vocabulary.get(token)
        return None if index is None else self.vectors[index]

    def equivalent(self, other: "EmbeddingModel") -> bool:
        return (
            self.vocabulary == other.vocabulary
            and self.dim == other.dim
            and self.config == other.config
            and np.array_equal(self.vectors, other.vectors)
        )


def _sigmoid(x: np.ndarray) -> np.ndarray:
    return 0.5 * (1.0 + np.tanh(0.5 * x))


def step_loss_and_grads(input_vectors: np.ndarray, output_vectors: np.ndarray,
                        input_rows, positive: int, negatives):
    """Negative-sampling loss for one step plus exact gradients.

    h = mean(input_vectors[input_rows]); score_j = output_vectors[t_j] . h
    with targets t = [positive, *negatives];
    loss = softplus(-score_pos) + sum softplus(score_neg).

    Returns (loss, grad wrt each input row, targets, grad wrt each target
    row).  Duplicate rows are legal; the caller accumulates with add.at.
    """
    rows = np.asarray(input_rows, dtype=np.intp)
    h = input_vectors[rows].mean(axis=0)
    targets = np.empty(1 + len(negatives), dtype=np.intp)
    targets[0] = positive
    targets[1:] = negatives
    target_vectors = output_vectors[targets]
    scores = target_vectors @ h
    loss = float(np.logaddexp(0.0, -scores[0]) + np.logaddexp(0.0, scores[1:]).sum())
    delta = _sigmoid(scores)  # dloss/dscore_j, after the label shift below
    delta[0] -= 1.0
    grad_targets = np.outer(delta, h)
    grad_h = delta @ target_vectors
    grad_inputs = np.tile(grad_h / len(rows), (len(rows), 1))
    return loss, grad_inputs, targets, grad_targets


def _apply_step(input_vectors, output_vectors, input_rows, positive, negatives, lr):
    loss, grad_inputs, targets, grad_targets = step_loss_and_grads(
        input_vectors, output_vectors, input_rows, positive, negatives
    )
    np.add.at(output_vectors, targets, -lr * grad_targets)
    np.add.at(input_vectors, np.asarray(input_rows, dtype=np.intp), -lr * grad_inputs)
    return loss


def _build_vocab(corpus: Corpus, min_count: int) -> tuple[dict[str, int], np.ndarray]:
    counts: dict[str, int] = {}
    for doc in corpus.documents:
        for token in doc:
            counts[token] = counts.get(token, 0) + 1
    kept = sorted(
        ((t, c) for t, c in counts.items() if c >= min_count),
        key=lambda item: (-item[1], item[0]),
    )
    vocabulary = {token: i for i, (token, _) in enumerate(kept)}
    freqs = np.array([c for _, c in kept], dtype=np.float64)
    return vocabulary, freqs


def _negative_table(freqs: np.ndarray) -> np.ndarray:
    weights = freqs ** 0.75
    shares = np.maximum(1, np.round(weights / weights.sum() * _TABLE_SIZE)).astype(np.intp)
    return np.repeat(np.arange(len(freqs), dtype=np.intp), shares)


def _doc_steps(doc: list[int], architecture: str, window: int) -> int:
    if architecture == "skipgram":
        return sum(
            min(i, window) + min(len(doc) - 1 - i, window) for i in range(len(doc))
        )
    return sum(1 for i in range(len(doc)) if len(doc) > 1)


def _train_docs(docs, W, V, table, config, lr_for, step_offset, rng, loss_out,
                lock=None, draws=None):
    """One epoch over ``docs``.

    ``draws`` is an optional pre-generated (steps, k) negative-sample
    block for the deterministic single-worker path; racy workers draw
    per step from their own generator.
    """
    k = config.negative_samples
    window = config.window
    step = step_offset
    local = 0
    total_loss = 0.0
    for doc in docs:
        for i in range(len(doc)):
            context = doc[max(0, i - window):i] + doc[i + 1:i + 1 + window]
            if not context:
                continue
            if config.architecture == "cbow":
                if draws is not None:
                    negatives = draws[local]
                else:
                    negatives = table[rng.integers(0, len(table), size=k)]
                center = doc[i]
                negatives = negatives[negatives != center]
                total_loss += _apply_step(W, V, context, center, negatives,
                                          lr_for(step))
                step += 1
                local += 1
            else:
                center_row = [doc[i]]
                for c in context:
                    if draws is not None:
                        negatives = draws[local]
                    else:
                        negatives = table[rng.integers(0, len(table), size=k)]
                    negatives = negatives[negatives != c]
                    total_loss += _apply_step(W, V, center_row, c, negatives,
                                              lr_for(step))
                    step += 1
                    local += 1
    if lock:
        with lock:
            loss_out[0] += total_loss
            loss_out[1] += step - step_offset
    else:
        loss_out[0] += total_loss
        loss_out[1] += step - step_offset
    return step


def train_embeddings(corpus: Corpus, config: TrainingConfig | None = None) -> EmbeddingModel:
    """Train vectors by SGD on the chosen objective with negative sampling.

    With ``workers == 1`` the update order is fixed, so identical corpus,
    config, and seed give bit-identical vectors.
    """
    config = config or TrainingConfig()
    vocabulary, freqs = _build_vocab(corpus, config.min_count)
    if len(vocabulary) < 2:
        raise CorpusTooSmall(
            f"need at least 2 tokens with count >= {config.min_count}, got {len(vocabulary)}"
        )

    docs = [
        [vocabulary[t] for t in doc if t in vocabulary]
        for doc in corpus.documents
    ]
    docs = [d for d in docs if d]
    steps_per_epoch = sum(_doc_steps(d, config.architecture, config.window) for d in docs)
    if steps_per_epoch == 0:
        raise CorpusTooSmall("corpus has no center/context pairs to train on")

    rng = np.random.default_rng(config.seed)
    W = (rng.random((len(vocabulary), config.dim)) - 0.5) / config.dim
    V = np.zeros((len(vocabulary), config.dim))
    table = _negative_table(freqs)

    total_steps = steps_per_epoch * config.epochs
    lr0, lr_min = config.learning_rate, config.min_learning_rate

    def lr_for(step: int) -> float:
        return max(lr_min, lr0 - (lr0 - lr_min) * step / total_steps)

    epoch_losses = []
    for epoch in range(config.epochs):
        loss_out = [0.0, 0]
        if config.workers == 1:
            draws = table[rng.integers(
                0, len(table), size=(steps_per_epoch, config.negative_samples)
            )]
            _train_docs(docs, W, V, table, config, lr_for,
                        epoch * steps_per_epoch, rng, loss_out, draws=draws)
        else:
            shards = [docs[w::config.workers] for w in range(config.workers)]
            lock = threading.Lock()
            threads = [
                threading.Thread(
                    target=_train_docs,
                    args=(shard, W, V, table, config, lr_for, epoch * steps_per_epoch,
                          np.random.default_rng((config.seed, epoch, w)), loss_out, lock),
                )
                for w, shard in enumerate(shards)
            ]
            for t in threads:
                t.start()
            for t in threads:
                t.join()
        epoch_losses.append(loss_out[0] / max(1, loss_out[1]))

    return EmbeddingModel(
        vocabulary=vocabulary,
        dim=config.dim,
        vectors=W,
        config=config,
        epoch_losses=tuple(epoch_losses),
    )
