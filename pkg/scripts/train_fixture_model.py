#!/usr/bin/env python3
"""Train and freeze the committed fixture embedding model.

Deterministic (single worker, fixed seed): rerunning this script must
reproduce tests/fixtures/models/fixture.pvec byte for byte.
"""

from pathlib import Path

from postural.ingest.feeds import read_feed_file
from postural.semantics import TrainingConfig, build_corpus, save_model, train_embeddings

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "tests" / "fixtures"

CONFIG = TrainingConfig(
    architecture="cbow",
    dim=32,
    window=3,
    epochs=120,
    learning_rate=0.05,
    negative_samples=5,
    min_count=2,
    seed=7,
)


def main() -> None:
    records = read_feed_file(FIXTURES / "feeds" / "fixture-nvd11.json")
    lines = [
        line
        for line in (FIXTURES / "corpus" / "security_phrases.txt").read_text().splitlines()
        if line.strip()
    ]
    corpus = build_corpus(records, lines)
    model = train_embeddings(corpus, CONFIG)
    out = FIXTURES / "models" / "fixture.pvec"
    out.parent.mkdir(parents=True, exist_ok=True)
    save_model(model, out)
    print(f"wrote {out}: vocab {len(model.vocabulary)}, dim {model.dim}, "
          f"loss {model.epoch_losses[0]:.4f} -> {model.epoch_losses[-1]:.4f}")


if __name__ == "__main__":
    main()
