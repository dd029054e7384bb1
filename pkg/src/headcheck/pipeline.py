"""Wiring shared by the CLI commands: feature extractors bound to loaded
resources, and the artifact files a trained pipeline consists of."""

from __future__ import annotations

from collections.abc import Callable, Sequence
from pathlib import Path

from . import classifier
from .corpus import Document, EmbeddingTable, LexiconSet
from .csrmine import ClassSequentialRule
from .encoder import ItemInventory
from .features import (
    FeatureVector,
    RteWeights,
    SUMMARY_SENTENCES,
    TfidfModel,
    ambiguous_vector,
    concat_vectors,
    misleading_body_features,
    misleading_head_vector,
)

Extractor = Callable[[Document], FeatureVector]


def build_inventory(lexicons: LexiconSet, config_path: str | Path | None = None) -> ItemInventory:
    if config_path is None:
        return ItemInventory.build(lexicons)
    return ItemInventory.from_config(config_path, lexicons)


def fit_idf(train_docs: Sequence[Document]) -> TfidfModel:
    """Freeze idf over the training documents (headline plus body)."""
    return TfidfModel.fit(list(doc.headline) + doc.body_tokens() for doc in train_docs)


def ambiguous_extractor(
    lex: LexiconSet, inventory: ItemInventory, rules: Sequence[ClassSequentialRule]
) -> Extractor:
    def extract(doc: Document) -> FeatureVector:
        return ambiguous_vector(doc, lex, inventory, rules)

    return extract


def head_extractor(lex: LexiconSet) -> Extractor:
    def extract(doc: Document) -> FeatureVector:
        return misleading_head_vector(doc, lex)

    return extract


def body_extractor(
    lex: LexiconSet,
    emb: EmbeddingTable,
    idf: TfidfModel,
    weights: RteWeights = RteWeights(),
    summary_size: int = SUMMARY_SENTENCES,
) -> Extractor:
    def extract(doc: Document) -> FeatureVector:
        return misleading_body_features(doc, lex, emb, idf, weights, summary_size)[0]

    return extract


def all_features_extractor(
    lex: LexiconSet,
    emb: EmbeddingTable,
    idf: TfidfModel,
    weights: RteWeights = RteWeights(),
    summary_size: int = SUMMARY_SENTENCES,
) -> Extractor:
    head = head_extractor(lex)
    body = body_extractor(lex, emb, idf, weights, summary_size)

    def extract(doc: Document) -> FeatureVector:
        return concat_vectors("misleading-all", head(doc), body(doc))

    return extract


def supervised_predictor(model: classifier.Model, extractor: Extractor) -> Callable[[Document], bool]:
    def predict_doc(doc: Document) -> bool:
        return classifier.predict(model, extractor(doc))

    return predict_doc


def combined_predictor(
    model_h: classifier.Model,
    model_b: classifier.Model,
    head_view: Extractor,
    body_view: Extractor,
) -> Callable[[Document], bool]:
    def predict_doc(doc: Document) -> bool:
        score = 0.5 * (
            classifier.predict_score(model_h, head_view(doc))
            + classifier.predict_score(model_b, body_view(doc))
        )
        return score >= 0.5

    return predict_doc
