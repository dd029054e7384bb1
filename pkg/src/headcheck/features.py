"""Feature extraction for both detection tasks.

Headline features are raw counts; body features are frequencies.  The
consistency features (gaps, similarity, entailment score) compare a
headline against its body and degrade to zeros, with a per-document flag,
when the annotations they need are missing.
"""

from __future__ import annotations

import hashlib
import json
import math
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import _kernels
from .corpus import Document, EmbeddingTable, LexiconSet
from .csrmine import ClassSequentialRule, csr_features
from .encoder import (
    ItemInventory,
    encode_headline,
    is_ellipsis,
    is_exclaim,
    is_numeral,
    is_question,
)

SUMMARY_SENTENCES = 3


class FeatureError(ValueError):
    """Invalid feature vector construction."""


@dataclass(frozen=True, eq=False)
class FeatureVector:
    """Named, ordered, finite feature values under a schema id."""

    schema_id: str
    names: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        object.__setattr__(self, "values", values)
        if len(self.names) != values.shape[0]:
            raise FeatureError(
                f"{self.schema_id}: {len(self.names)} names vs {values.shape[0]} values"
            )
        if len(set(self.names)) != len(self.names):
            raise FeatureError(f"{self.schema_id}: duplicate feature names")
        if not np.all(np.isfinite(values)):
            bad = [n for n, v in zip(self.names, values) if not math.isfinite(v)]
            raise FeatureError(f"{self.schema_id}: non-finite values for {bad}")

    def __len__(self) -> int:
        return len(self.names)

    def as_dict(self) -> dict[str, float]:
        return {name: float(v) for name, v in zip(self.names, self.values)}


@dataclass(frozen=True)
class RteWeights:
    """Per-match-kind weights for the dependency-pair entailment score."""

    exact: float = 1.0
    synonym: float = 0.8
    hypernym: float = 0.6
    hyponym: float = 0.6
    antonym: float = -1.0

    def __post_init__(self):
        for name in ("exact", "synonym", "hypernym", "hyponym", "antonym"):
            if not math.isfinite(getattr(self, name)):
                raise FeatureError(f"RTE weight {name} must be finite")

    def for_relation(self, relation: str) -> float:
        return getattr(self, relation)


@dataclass(frozen=True)
class SimilarityStats:
    """Headline/body similarity evidence.

    ``scored_tokens`` is the number of non-entity headline tokens that
    received a best-match cosine; when it is zero the min/avg fields are
    zero-filled and ``degraded`` is set.  ``entity_annotated`` records
    whether both entity annotations were present.
    """

    entity_misses: int
    min_sim: float
    avg_sim: float
    summary_sim: float
    scored_tokens: int
    entity_annotated: bool

    @property
    def degraded(self) -> bool:
        return self.scored_tokens == 0 or not self.entity_annotated


def _count_in(tokens: Iterable[str], words: frozenset[str]) -> int:
    return sum(1 for t in tokens if t in words)


BASIC_FEATURE_NAMES = (
    "wordcnt",
    "number",
    "baitword",
    "slang",
    "punctuation",
    "degree_very",
    "degree_extreme",
    "pos_eval",
    "neg_eval",
    "pos_emotion",
    "neg_emotion",
    "dep_distance",
    "whword",
    "forward_ref",
)


def basic_features(doc: Document, lex: LexiconSet) -> FeatureVector:
    """Headline-only counts: length, word classes, punctuation, and the
    mean head-dependent index distance (0 when no parse is attached)."""
    tokens = doc.headline
    if doc.headline_deps:
        distance = float(np.mean([abs(h - d) for h, d in doc.headline_deps]))
    else:
        distance = 0.0
    values = [
        float(len(tokens)),
        float(sum(1 for t in tokens if is_numeral(t))),
        float(_count_in(tokens, lex.clickbait_words)),
        float(_count_in(tokens, lex.slang)),
        float(sum(1 for t in tokens if is_exclaim(t) or is_question(t) or is_ellipsis(t))),
        float(_count_in(tokens, lex.degree_very)),
        float(_count_in(tokens, lex.degree_extreme)),
        float(_count_in(tokens, lex.pos_eval)),
        float(_count_in(tokens, lex.neg_eval)),
        float(_count_in(tokens, lex.pos_emotion)),
        float(_count_in(tokens, lex.neg_emotion)),
        distance,
        float(_count_in(tokens, lex.interrogatives)),
        float(_count_in(tokens, lex.forward_ref)),
    ]
    return FeatureVector("headline-basic", BASIC_FEATURE_NAMES, np.array(values))


def informality(tokens: Sequence[str], lex: LexiconSet) -> np.ndarray:
    """(slang frequency, bait-word frequency, token count)."""
    if not tokens:
        return np.zeros(3)
    n = len(tokens)
    return np.array(
        [_count_in(tokens, lex.slang) / n, _count_in(tokens, lex.clickbait_words) / n, float(n)]
    )


SENTIMENT_CLASSES = ("pos_eval", "neg_eval", "pos_emotion", "neg_emotion", "subjective")


def sentiment(tokens: Sequence[str], lex: LexiconSet) -> np.ndarray:
    """Frequencies of the five sentiment classes; a token may count in
    several classes at once."""
    if not tokens:
        return np.zeros(len(SENTIMENT_CLASSES))
    n = len(tokens)
    return np.array(
        [_count_in(tokens, getattr(lex, cls)) / n for cls in SENTIMENT_CLASSES]
    )


def informal_gap(doc: Document, lex: LexiconSet) -> float:
    """Mean absolute difference of the two informality frequencies
    between headline and body."""
    head = informality(doc.headline, lex)[:2]
    body = informality(doc.body_tokens(), lex)[:2]
    return float(np.mean(np.abs(head - body)))


def senti_gap(doc: Document, lex: LexiconSet) -> np.ndarray:
    """Elementwise absolute sentiment-frequency differences."""
    return np.abs(sentiment(doc.headline, lex) - sentiment(doc.body_tokens(), lex))


class TfidfModel:
    """Term idf table frozen from a training corpus.

    idf(t) = ln((N + 1) / (df(t) + 1)); a term never seen in training has
    df 0, so unseen lookups resolve to ln(N + 1).
    """

    def __init__(self, n_docs: int, idf: dict[str, float]):
        self.n_docs = n_docs
        self._idf = idf
        self._default = math.log(n_docs + 1)

    @classmethod
    def fit(cls, documents: Iterable[Sequence[str]]) -> "TfidfModel":
        df: Counter = Counter()
        n_docs = 0
        for tokens in documents:
            n_docs += 1
            df.update(set(tokens))
        idf = {term: math.log((n_docs + 1) / (count + 1)) for term, count in df.items()}
        return cls(n_docs, idf)

    def idf(self, term: str) -> float:
        return self._idf.get(term, self._default)

    def weights(self, tokens: Sequence[str]) -> dict[str, float]:
        return {term: tf * self.idf(term) for term, tf in Counter(tokens).items()}

    def cosine(self, tokens_a: Sequence[str], tokens_b: Sequence[str]) -> float:
        """tf-idf cosine of two token multisets; 0 when either is empty."""
        wa = self.weights(tokens_a)
        wb = self.weights(tokens_b)
        dot = sum(w * wb[t] for t, w in wa.items() if t in wb)
        norm_a = math.sqrt(sum(w * w for w in wa.values()))
        norm_b = math.sqrt(sum(w * w for w in wb.values()))
        if norm_a == 0.0 or norm_b == 0.0:
            return 0.0
        return dot / (norm_a * norm_b)

    def to_json(self) -> str:
        return json.dumps(
            {"n_docs": self.n_docs, "idf": self._idf},
            ensure_ascii=False,
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "TfidfModel":
        payload = json.loads(text)
        return cls(payload["n_docs"], dict(payload["idf"]))

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "TfidfModel":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


def summarize(
    body: Sequence[Sequence[str]], k: int = SUMMARY_SENTENCES
) -> list[Sequence[str]]:
    """Extractive body digest: the k sentences closest (tf-idf cosine,
    idf over the body's own sentences) to the whole body, in original
    order.  Bodies of at most k sentences pass through unchanged."""
    if k <= 0:
        raise FeatureError("summary size must be positive")
    if len(body) <= k:
        return list(body)
    model = TfidfModel.fit(body)
    whole = [tok for sent in body for tok in sent]
    scores = [model.cosine(sent, whole) for sent in body]
    chosen = sorted(sorted(range(len(body)), key=lambda i: (-scores[i], i))[:k])
    return [body[i] for i in chosen]


def similarity_stats(
    doc: Document,
    emb: EmbeddingTable,
    summary: Sequence[Sequence[str]],
    idf: TfidfModel,
) -> SimilarityStats:
    """Entity misses, best-match embedding similarities, and the tf-idf
    cosine between headline and summary."""
    entity_annotated = (
        doc.headline_entities is not None and doc.body_entity_strings is not None
    )
    if entity_annotated:
        misses = sum(
            1
            for i in doc.headline_entities
            if doc.headline[i] not in doc.body_entity_strings
        )
    else:
        misses = 0

    entity_idx = doc.headline_entities or frozenset()
    head_vecs = [
        emb.get(tok)
        for i, tok in enumerate(doc.headline)
        if i not in entity_idx and tok in emb
    ]
    body_vecs = [emb.get(tok) for tok in doc.body_tokens() if tok in emb]
    if head_vecs and body_vecs:
        sims = _kernels.best_cosine(
            np.stack(head_vecs), np.stack(body_vecs)
        )
        sims = np.clip(sims, -1.0, 1.0)
        min_sim = float(sims.min())
        avg_sim = float(sims.mean())
        scored = len(head_vecs)
    else:
        min_sim = avg_sim = 0.0
        scored = 0

    summary_tokens = [tok for sent in summary for tok in sent]
    summary_sim = idf.cosine(list(doc.headline), summary_tokens)
    return SimilarityStats(
        entity_misses=misses,
        min_sim=min_sim,
        avg_sim=avg_sim,
        summary_sim=summary_sim,
        scored_tokens=scored,
        entity_annotated=entity_annotated,
    )


def _word_match_score(head_word: str, body_word: str, lex: LexiconSet, w: RteWeights) -> float:
    if head_word == body_word:
        return w.exact
    relation = lex.relations.get((head_word, body_word))
    if relation is not None:
        return w.for_relation(relation)
    return 0.0


def rte_score(doc: Document, lex: LexiconSet, w: RteWeights = RteWeights()) -> float:
    """Dependency-pair entailment evidence.

    Every headline (governor, dependent) surface pair is matched against
    all body pairs; a pair's score is the product of its two word scores
    (exact match or relation-lexicon match), and the headline pair
    contributes its best body match.  Returns 0 when either side lacks a
    parse.
    """
    if not doc.headline_deps:
        return 0.0
    body_pairs: list[tuple[str, str]] = []
    if doc.body_deps:
        for sent, deps in zip(doc.body, doc.body_deps):
            body_pairs.extend((sent[g], sent[d]) for g, d in deps)
    if not body_pairs:
        return 0.0
    total = 0.0
    for g, d in doc.headline_deps:
        head_gov, head_dep = doc.headline[g], doc.headline[d]
        total += max(
            _word_match_score(head_gov, body_gov, lex, w)
            * _word_match_score(head_dep, body_dep, lex, w)
            for body_gov, body_dep in body_pairs
        )
    return total


def degraded_inputs(doc: Document, stats: SimilarityStats) -> tuple[str, ...]:
    """Tags naming which degraded-input fallbacks fired for a document."""
    tags = []
    if not doc.headline_deps:
        tags.append("no_headline_deps")
    if not stats.entity_annotated:
        tags.append("no_entity_annotations")
    if stats.scored_tokens == 0:
        tags.append("no_scorable_tokens")
    return tuple(tags)


def ambiguous_vector(
    doc: Document,
    lex: LexiconSet,
    inventory: ItemInventory,
    rules: Sequence[ClassSequentialRule],
) -> FeatureVector:
    """Basic headline features followed by the binary rule features."""
    basic = basic_features(doc, lex)
    sequence = encode_headline(doc.headline, inventory)
    rule_values = csr_features(sequence, rules)
    names = basic.names + tuple(f"csr_{k:03d}" for k in range(len(rules)))
    return FeatureVector(
        ambiguous_schema_id(rules), names, np.concatenate([basic.values, rule_values])
    )


def ambiguous_schema_id(rules: Sequence[ClassSequentialRule]) -> str:
    fingerprint = hashlib.sha1(
        json.dumps(
            [[list(r.pattern), r.target] for r in rules], ensure_ascii=False
        ).encode("utf-8")
    ).hexdigest()[:8]
    return f"ambiguous-csr{len(rules)}-{fingerprint}"


def misleading_head_vector(doc: Document, lex: LexiconSet) -> FeatureVector:
    """Headline view: the basic features without forward_ref, which only
    signals ambiguity."""
    basic = basic_features(doc, lex)
    keep = [i for i, name in enumerate(basic.names) if name != "forward_ref"]
    return FeatureVector(
        "misleading-head",
        tuple(basic.names[i] for i in keep),
        basic.values[keep],
    )


BODY_FEATURE_NAMES = (
    "body_slang_freq",
    "body_bait_freq",
    "body_len",
    "body_pos_eval_freq",
    "body_neg_eval_freq",
    "body_pos_emotion_freq",
    "body_neg_emotion_freq",
    "body_subjective_freq",
    "informal_gap",
    "senti_gap_pos_eval",
    "senti_gap_neg_eval",
    "senti_gap_pos_emotion",
    "senti_gap_neg_emotion",
    "senti_gap_subjective",
    "entity_misses",
    "min_sim",
    "avg_sim",
    "summary_sim",
    "rte_score",
)


def misleading_body_features(
    doc: Document,
    lex: LexiconSet,
    emb: EmbeddingTable,
    idf: TfidfModel,
    rte_weights: RteWeights = RteWeights(),
    summary_size: int = SUMMARY_SENTENCES,
) -> tuple[FeatureVector, tuple[str, ...]]:
    """Body view features plus the degraded-input tags for run reports."""
    body_tokens = doc.body_tokens()
    stats = similarity_stats(doc, emb, summarize(doc.body, summary_size), idf)
    values = np.concatenate(
        [
            informality(body_tokens, lex),
            sentiment(body_tokens, lex),
            [informal_gap(doc, lex)],
            senti_gap(doc, lex),
            [float(stats.entity_misses), stats.min_sim, stats.avg_sim, stats.summary_sim],
            [rte_score(doc, lex, rte_weights)],
        ]
    )
    vector = FeatureVector("misleading-body", BODY_FEATURE_NAMES, values)
    return vector, degraded_inputs(doc, stats)


def misleading_body_vector(
    doc: Document,
    lex: LexiconSet,
    emb: EmbeddingTable,
    idf: TfidfModel,
    rte_weights: RteWeights = RteWeights(),
    summary_size: int = SUMMARY_SENTENCES,
) -> FeatureVector:
    return misleading_body_features(doc, lex, emb, idf, rte_weights, summary_size)[0]


def concat_vectors(schema_id: str, *vectors: FeatureVector) -> FeatureVector:
    names = tuple(name for fv in vectors for name in fv.names)
    values = np.concatenate([fv.values for fv in vectors]) if vectors else np.zeros(0)
    return FeatureVector(schema_id, names, values)


def write_feature_matrix(
    path: str | Path, rows: Sequence[tuple[str, FeatureVector]]
) -> None:
    """CSV export: header of feature names, one row per document id."""
    if not rows:
        raise FeatureError("nothing to export")
    schema = rows[0][1].schema_id
    names = rows[0][1].names
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("id," + ",".join(names) + "\n")
        for doc_id, fv in rows:
            if fv.schema_id != schema or fv.names != names:
                raise FeatureError(
                    f"row {doc_id!r} has schema {fv.schema_id!r}, expected {schema!r}"
                )
            handle.write(doc_id + "," + ",".join(repr(float(v)) for v in fv.values) + "\n")
