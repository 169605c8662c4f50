"""Trigger-action comment classification."""
from .embeddings import Embeddings, FormatError, load_embeddings
from .evaluation import DatasetError, LabeledComment, Metrics, format_table, load_dataset, loo_cross_validate
from .features import FeatureVector, MissingEmbeddings, featurize
from .logreg import ClassifierModel, DegenerateDataset, Hyperparameters, loss_and_grad, train_logreg
from .text import special_token_class, tag_pos, tokenize_text

__all__ = [
    "Embeddings", "FormatError", "load_embeddings", "DatasetError", "LabeledComment", "Metrics",
    "format_table", "load_dataset", "loo_cross_validate", "FeatureVector", "MissingEmbeddings", "featurize",
    "ClassifierModel", "DegenerateDataset", "Hyperparameters", "loss_and_grad", "train_logreg",
    "special_token_class", "tag_pos", "tokenize_text",
]
