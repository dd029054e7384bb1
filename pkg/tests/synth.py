"""Synthetic corpora shared by the pipeline, co-training, and CLI tests."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from headcheck.corpus import Document

TOPIC_A = tuple(f"a{i}" for i in range(12))
TOPIC_B = tuple(f"b{i}" for i in range(12))


def ambiguous_corpus(n: int = 200, seed: int = 7) -> list[Document]:
    """Separable by design: positives carry bait words, exclamations, and
    forward references; negatives are plain declaratives."""
    rng = random.Random(seed)
    docs = []
    for i in range(n):
        label = i % 2 == 0
        filler = [f"w{rng.randrange(30)}" for _ in range(4)]
        if label:
            headline = ["震惊", "！", "这", "真相"] + filler
        else:
            headline = ["市政府", "公布", "年度", "报告"] + filler
        docs.append(
            Document(
                id=f"amb{i:04d}",
                headline=tuple(headline),
                body=(("正文", "内容", f"w{rng.randrange(30)}"),),
                domain="other",
                source="synth",
                label_ambiguous=label,
            )
        )
    return docs


def misleading_corpus(
    n_labeled: int = 120, n_pool: int = 0, seed: int = 11
) -> list[Document]:
    """Positive headlines diverge from their bodies (different embedding
    topic, bait markers); negative headlines quote their bodies."""
    rng = random.Random(seed)
    docs = []
    for i in range(n_labeled + n_pool):
        label = i % 2 == 0
        if label:
            headline = [rng.choice(TOPIC_A) for _ in range(5)] + ["震惊", "！"]
            body_tokens = [rng.choice(TOPIC_B) for _ in range(10)]
        else:
            body_tokens = [rng.choice(TOPIC_B) for _ in range(10)]
            headline = body_tokens[:5]
        body = (tuple(body_tokens[:5]), tuple(body_tokens[5:]))
        docs.append(
            Document(
                id=f"mis{i:04d}",
                headline=tuple(headline),
                body=body,
                domain="other",
                source="synth",
                label_misleading=label if i < n_labeled else None,
            )
        )
    return docs


def write_embeddings_file(path: Path, dim: int = 4) -> None:
    """Two near-orthogonal topic clusters with deterministic jitter."""
    words = []
    for k, word in enumerate(TOPIC_A):
        vec = np.zeros(dim)
        vec[0] = 1.0
        vec[2] = 0.05 * (k % 3)
        words.append((word, vec))
    for k, word in enumerate(TOPIC_B):
        vec = np.zeros(dim)
        vec[1] = 1.0
        vec[3] = 0.05 * (k % 3)
        words.append((word, vec))
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(f"{len(words)} {dim}\n")
        for word, vec in words:
            handle.write(word + " " + " ".join(repr(float(v)) for v in vec) + "\n")


def write_corpus_file(docs, path: Path) -> None:
    from headcheck.corpus import document_to_dict

    with open(path, "w", encoding="utf-8") as handle:
        for doc in docs:
            handle.write(json.dumps(document_to_dict(doc), ensure_ascii=False, sort_keys=True))
            handle.write("\n")


@dataclass(frozen=True)
class VecDoc:
    """Bare two-view synthetic document for co-training tests."""

    id: str
    label: bool
    h: np.ndarray
    b: np.ndarray


def two_view_corpus(
    n: int,
    seed: int,
    dim: int = 6,
    strength: float = 1.6,
    informative_frac: float = 0.6,
    contradictions: int = 0,
) -> list[VecDoc]:
    """Gaussian two-view data where each view is only informative on a
    random subset, so neither view alone separates everything.

    ``contradictions`` appends documents whose head view screams positive
    while the body view screams negative; selected by both views, they
    exercise the conflict-exclusion path.
    """
    rng = np.random.default_rng(seed)
    docs = []
    for i in range(n):
        label = bool(i % 2 == 0)
        mu = strength if label else -strength
        h_mu = mu if rng.random() < informative_frac else 0.0
        b_mu = mu if rng.random() < informative_frac else 0.0
        docs.append(
            VecDoc(
                id=f"v{i:05d}",
                label=label,
                h=rng.normal(h_mu, 1.0, dim),
                b=rng.normal(b_mu, 1.0, dim),
            )
        )
    for j in range(contradictions):
        docs.append(
            VecDoc(
                id=f"x{j:05d}",
                label=True,
                h=np.full(dim, 4.0 * strength),
                b=np.full(dim, -4.0 * strength),
            )
        )
    return docs


def vec_views():
    """Feature extractors over VecDoc for both views."""
    from headcheck.features import FeatureVector

    def head_view(doc: VecDoc) -> FeatureVector:
        names = tuple(f"h{i}" for i in range(doc.h.shape[0]))
        return FeatureVector("synth-head", names, doc.h)

    def body_view(doc: VecDoc) -> FeatureVector:
        names = tuple(f"b{i}" for i in range(doc.b.shape[0]))
        return FeatureVector("synth-body", names, doc.b)

    return head_view, body_view
