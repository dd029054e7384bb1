"""Class sequential rule mining.

A rule ``X -> y`` pairs a sequence pattern with a class label.  An entry
(s, y') covers the rule when X embeds into s, and satisfies it when
additionally y' == y.  Support is the satisfying fraction of the whole
database, confidence the satisfying fraction of the covering entries.
Occurrence counting is binary per entry: multiple embeddings of X into
one sequence count once.

Mining is prefix growth over projected databases with support-based
pruning; completeness is checked extensionally against a brute-force
oracle in the test suite, so the strategy itself is an implementation
detail.
"""

from __future__ import annotations

import json
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import _kernels
from .encoder import LabelSequence, SequenceDatabase, is_subsequence


class MiningError(ValueError):
    """Invalid mining input or configuration."""


class ZeroCoverageError(MiningError):
    """Confidence requested for a rule no entry covers."""


@dataclass(frozen=True)
class ClassSequentialRule:
    pattern: tuple[str, ...]
    target: str
    support: float
    confidence: float

    def __post_init__(self):
        if not self.pattern:
            raise MiningError("rule pattern must be nonempty")
        if not (0.0 <= self.support <= 1.0 and 0.0 <= self.confidence <= 1.0):
            raise MiningError("support and confidence must lie in [0, 1]")


@dataclass(frozen=True)
class MiningConfig:
    minsup: float
    minconf: float
    max_pattern_length: int = 5

    def __post_init__(self):
        if not 0.0 < self.minsup <= 1.0:
            raise MiningError(f"minsup must be in (0, 1], got {self.minsup}")
        if not 0.0 < self.minconf <= 1.0:
            raise MiningError(f"minconf must be in (0, 1], got {self.minconf}")
        if self.max_pattern_length < 1:
            raise MiningError("max_pattern_length must be positive")


def _pattern_items(pattern) -> tuple[str, ...]:
    return pattern.items if isinstance(pattern, LabelSequence) else tuple(pattern)


def _cover_satisfy_counts(db: SequenceDatabase, pattern, target: str) -> tuple[int, int]:
    items = _pattern_items(pattern)
    cover = 0
    satisfy = 0
    for seq, cls in db.entries:
        if is_subsequence(items, seq):
            cover += 1
            if cls == target:
                satisfy += 1
    return cover, satisfy


def support(db: SequenceDatabase, pattern, target: str) -> float:
    """Fraction of database entries that satisfy the rule."""
    if len(db) == 0:
        raise MiningError("support is undefined on an empty database")
    _, satisfy = _cover_satisfy_counts(db, pattern, target)
    return satisfy / len(db)


def confidence(db: SequenceDatabase, pattern, target: str) -> float:
    """Satisfying fraction of the covering entries."""
    if len(db) == 0:
        raise MiningError("confidence is undefined on an empty database")
    cover, satisfy = _cover_satisfy_counts(db, pattern, target)
    if cover == 0:
        raise ZeroCoverageError(
            f"no entry covers pattern {_pattern_items(pattern)!r}"
        )
    return satisfy / cover


def _flatten_sequences(
    sequences: Sequence[Sequence[str]], item_ids: dict[str, int]
) -> tuple[np.ndarray, np.ndarray]:
    offsets = np.zeros(len(sequences) + 1, dtype=np.int64)
    flat: list[int] = []
    for i, seq in enumerate(sequences):
        flat.extend(item_ids[item] for item in seq)
        offsets[i + 1] = len(flat)
    return np.array(flat, dtype=np.int64), offsets


def mine(db: SequenceDatabase, cfg: MiningConfig) -> list[ClassSequentialRule]:
    """All rules meeting the thresholds, with exact support/confidence.

    Output order is deterministic: descending support, then descending
    confidence, then pattern, then class.
    """
    if len(db) == 0:
        raise MiningError("cannot mine an empty database")

    n_total = len(db)
    alphabet = sorted({item for seq, _ in db.entries for item in seq.items})
    classes = db.classes()
    item_ids = {item: i for i, item in enumerate(alphabet)}
    class_ids = {cls: i for i, cls in enumerate(classes)}
    db_flat, db_offsets = _flatten_sequences([seq.items for seq, _ in db.entries], item_ids)
    labels = np.array([class_ids[cls] for _, cls in db.entries], dtype=np.int64)

    rules: list[ClassSequentialRule] = []

    def grow(pattern: tuple[int, ...], entries: np.ndarray, positions: np.ndarray, parent_cover: int):
        cover = entries.shape[0]
        # pruning soundness: projections only ever shrink coverage
        assert cover <= parent_cover
        counts = np.bincount(labels[entries], minlength=len(classes))
        extendable = False
        for c, cls in enumerate(classes):
            sup = counts[c] / n_total
            if sup >= cfg.minsup:
                extendable = True
                conf = counts[c] / cover
                if conf >= cfg.minconf:
                    rules.append(
                        ClassSequentialRule(
                            pattern=tuple(alphabet[i] for i in pattern),
                            target=cls,
                            support=sup,
                            confidence=conf,
                        )
                    )
        # support is anti-monotone under extension, so a pattern that
        # cannot satisfy minsup for any class has no viable extensions
        if not extendable or len(pattern) >= cfg.max_pattern_length:
            return
        for item in range(len(alphabet)):
            sub_entries, sub_positions = _kernels.advance_projection(
                db_flat, db_offsets, entries, positions, item
            )
            if sub_entries.shape[0]:
                grow(pattern + (item,), sub_entries, sub_positions, cover)

    root_entries = np.arange(n_total, dtype=np.int64)
    root_positions = np.zeros(n_total, dtype=np.int64)
    for item in range(len(alphabet)):
        entries, positions = _kernels.advance_projection(
            db_flat, db_offsets, root_entries, root_positions, item
        )
        if entries.shape[0]:
            grow((item,), entries, positions, n_total)

    rules.sort(key=lambda r: (-r.support, -r.confidence, r.pattern, r.target))
    return rules


def csr_features(seq, rules: Sequence[ClassSequentialRule]) -> np.ndarray:
    """Binary vector: entry k is 1 iff rules[k].pattern embeds into seq."""
    items = seq.items if isinstance(seq, LabelSequence) else tuple(seq)
    return np.array(
        [1.0 if is_subsequence(rule.pattern, items) else 0.0 for rule in rules],
        dtype=np.float64,
    )


def csr_feature_matrix(
    sequences: Sequence[LabelSequence], rules: Sequence[ClassSequentialRule]
) -> np.ndarray:
    """csr_features for a whole corpus at once (kernel-backed)."""
    if not rules:
        return np.zeros((len(sequences), 0), dtype=np.float64)
    vocab: dict[str, int] = {}
    for seq in sequences:
        for item in seq.items:
            vocab.setdefault(item, len(vocab))
    for rule in rules:
        for item in rule.pattern:
            vocab.setdefault(item, len(vocab))
    seq_flat, seq_offsets = _flatten_sequences([s.items for s in sequences], vocab)
    pat_flat, pat_offsets = _flatten_sequences([r.pattern for r in rules], vocab)
    matrix = _kernels.pattern_match_matrix(seq_flat, seq_offsets, pat_flat, pat_offsets)
    return matrix.astype(np.float64)


def rules_to_json(rules: Sequence[ClassSequentialRule]) -> str:
    payload = [
        {
            "pattern": list(rule.pattern),
            "class": rule.target,
            "support": rule.support,
            "confidence": rule.confidence,
        }
        for rule in rules
    ]
    return json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True)


def rules_from_json(text: str) -> list[ClassSequentialRule]:
    payload = json.loads(text)
    return [
        ClassSequentialRule(
            pattern=tuple(entry["pattern"]),
            target=entry["class"],
            support=entry["support"],
            confidence=entry["confidence"],
        )
        for entry in payload
    ]


def save_rules(rules: Sequence[ClassSequentialRule], path: str | Path) -> None:
    Path(path).write_text(rules_to_json(rules), encoding="utf-8")


def load_rules(path: str | Path) -> list[ClassSequentialRule]:
    return rules_from_json(Path(path).read_text(encoding="utf-8"))
