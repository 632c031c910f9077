from .corpus import Corpus, TrainingSample, build_corpus, sample_windows
from .embeddings import EmbeddingModel, TrainingConfig, step_loss_and_grads, train_embeddings
from .modelio import load_model, save_model
from .similarity import PhraseVector, phrase_vector, port_similarity, similarity

__all__ = [
    "Corpus",
    "EmbeddingModel",
    "PhraseVector",
    "TrainingConfig",
    "TrainingSample",
    "build_corpus",
    "load_model",
    "phrase_vector",
    "port_similarity",
    "sample_windows",
    "save_model",
    "similarity",
    "step_loss_and_grads",
    "train_embeddings",
]
