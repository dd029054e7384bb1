"""headcheck: ambiguous and misleading news headline detection.

Two independent binary tasks over pre-tokenized news documents:

* ambiguity, from headline word-class features plus mined class
  sequential rules;
* misleadingness, from headline/body consistency features, optionally
  improved with two-view co-training over unlabeled documents.
"""

__version__ = "0.1.0"

from .corpus import (
    Document,
    EmbeddingTable,
    LexiconSet,
    load_corpus,
    load_embeddings,
    load_lexicons,
    parse_corpus,
    split_train_test,
)
from .csrmine import ClassSequentialRule, MiningConfig, confidence, csr_features, mine, support
from .encoder import ItemInventory, LabelSequence, SequenceDatabase, encode_headline, is_subsequence
from .features import (
    FeatureVector,
    RteWeights,
    SimilarityStats,
    TfidfModel,
    ambiguous_vector,
    basic_features,
    misleading_body_vector,
    misleading_head_vector,
    rte_score,
    similarity_stats,
    summarize,
)
from .classifier import Model, TrainConfig, predict, predict_score, train
from .cotrain import CoTrainConfig, CoTrainState, co_train, combined_score, sweep
from .metrics import (
    DomainCounts,
    EvalReport,
    domain_breakdown,
    precision_recall_f,
    prevalence_baseline,
    sign_test,
)

__all__ = [
    "ClassSequentialRule",
    "CoTrainConfig",
    "CoTrainState",
    "Document",
    "DomainCounts",
    "EmbeddingTable",
    "EvalReport",
    "FeatureVector",
    "ItemInventory",
    "LabelSequence",
    "LexiconSet",
    "MiningConfig",
    "Model",
    "RteWeights",
    "SequenceDatabase",
    "SimilarityStats",
    "TfidfModel",
    "TrainConfig",
    "ambiguous_vector",
    "basic_features",
    "co_train",
    "combined_score",
    "confidence",
    "csr_features",
    "domain_breakdown",
    "encode_headline",
    "is_subsequence",
    "load_corpus",
    "load_embeddings",
    "load_lexicons",
    "mine",
    "misleading_body_vector",
    "misleading_head_vector",
    "parse_corpus",
    "precision_recall_f",
    "predict",
    "predict_score",
    "prevalence_baseline",
    "rte_score",
    "sign_test",
    "similarity_stats",
    "split_train_test",
    "sweep",
    "summarize",
    "support",
    "train",
]
