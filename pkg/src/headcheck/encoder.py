"""Encode headlines as label sequences for sequential rule mining.

Each token is looked up against an ordered inventory of word classes;
the first class that matches wins and emits its label, unmatched tokens
are skipped.  Numerals and punctuation match by character shape, every
other class by exact lexicon membership.
"""

from __future__ import annotations

import json
import re
from collections.abc import Sequence
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import CONJUNCTION_CLASS_COUNT, Document, LexiconSet

_DIGIT_RUN = re.compile(r"\d+")
_EXCLAIM_CHARS = frozenset("!！")
_QUESTION_CHARS = frozenset("?？")


def is_numeral(token: str) -> bool:
    return bool(_DIGIT_RUN.fullmatch(token))


def is_exclaim(token: str) -> bool:
    return bool(token) and set(token) <= _EXCLAIM_CHARS


def is_question(token: str) -> bool:
    return bool(token) and set(token) <= _QUESTION_CHARS


def is_ellipsis(token: str) -> bool:
    if not token:
        return False
    chars = set(token)
    if chars <= {"…"}:
        return True
    return chars <= {"."} and len(token) >= 3


# classes matched by character shape rather than lexicon membership
_CHAR_CLASSES = {
    "number": is_numeral,
    "punct_exclaim": is_exclaim,
    "punct_question": is_question,
    "punct_ellipsis": is_ellipsis,
}

# default inventory: 12 word-type labels + 2 temporal + 9 conjunction
# classes, in priority order (first match wins)
DEFAULT_INVENTORY = (
    ("Number", "number"),
    ("Baitword", "clickbait_words"),
    ("Slang", "slang"),
    ("PunctExclaim", "punct_exclaim"),
    ("PunctQuestion", "punct_question"),
    ("PunctEllipsis", "punct_ellipsis"),
    ("DegreeVery", "degree_very"),
    ("DegreeExtreme", "degree_extreme"),
    ("PosEval", "pos_eval"),
    ("NegEval", "neg_eval"),
    ("WHword", "interrogatives"),
    ("Ref", "forward_ref"),
    ("Past", "temporal_past"),
    ("Present", "temporal_present"),
) + tuple(
    (f"Conj{i}", f"conj_{i}") for i in range(1, CONJUNCTION_CLASS_COUNT + 1)
)


class InventoryError(ValueError):
    """Invalid inventory configuration."""


@dataclass(frozen=True)
class ItemInventory:
    """Ordered label inventory; order doubles as match priority."""

    labels: tuple[str, ...]
    _matchers: tuple = field(repr=False, compare=False, default=())

    @classmethod
    def build(
        cls, lexicons: LexiconSet, spec: Sequence[tuple[str, str]] = DEFAULT_INVENTORY
    ) -> "ItemInventory":
        """Bind (label, class_name) pairs to the loaded lexicons."""
        labels = [label for label, _ in spec]
        if len(set(labels)) != len(labels):
            raise InventoryError("inventory label names must be unique")
        matchers = []
        for label, class_name in spec:
            if class_name in _CHAR_CLASSES:
                matchers.append(_CHAR_CLASSES[class_name])
            else:
                try:
                    wordset = lexicons.word_class(class_name)
                except KeyError:
                    raise InventoryError(
                        f"label {label!r} refers to unknown class {class_name!r}"
                    ) from None
                matchers.append(wordset.__contains__)
        return cls(labels=tuple(labels), _matchers=tuple(matchers))

    @classmethod
    def from_config(cls, path: str | Path, lexicons: LexiconSet) -> "ItemInventory":
        """Load a JSON object mapping label name -> class name (order matters)."""
        with open(path, encoding="utf-8") as handle:
            mapping = json.load(handle)
        if not isinstance(mapping, dict) or not mapping:
            raise InventoryError(f"{path}: expected a non-empty JSON object")
        return cls.build(lexicons, tuple(mapping.items()))

    def label_for(self, token: str) -> str | None:
        """First matching label in priority order, or None."""
        for label, matches in zip(self.labels, self._matchers):
            if matches(token):
                return label
        return None


@dataclass(frozen=True)
class LabelSequence:
    items: tuple[str, ...]
    source_id: str = ""

    def __len__(self) -> int:
        return len(self.items)


@dataclass(frozen=True)
class SequenceDatabase:
    """Labeled sequences as mined: (sequence, class-name) pairs."""

    entries: tuple[tuple[LabelSequence, str], ...]

    def __post_init__(self):
        for seq, cls in self.entries:
            if not isinstance(cls, str) or not cls:
                raise ValueError(f"entry {seq.source_id!r} is missing its class label")

    def __len__(self) -> int:
        return len(self.entries)

    def classes(self) -> tuple[str, ...]:
        return tuple(sorted({cls for _, cls in self.entries}))


def encode_headline(tokens: Sequence[str], inventory: ItemInventory) -> LabelSequence:
    """One label per matched token, in token order; misses are skipped."""
    items = []
    for token in tokens:
        label = inventory.label_for(token)
        if label is not None:
            items.append(label)
    return LabelSequence(items=tuple(items))


def is_subsequence(a, b) -> bool:
    """True iff ``a`` embeds into ``b`` at strictly increasing indices.

    Accepts LabelSequence or any item sequence on either side.
    """
    a_items = a.items if isinstance(a, LabelSequence) else tuple(a)
    b_items = b.items if isinstance(b, LabelSequence) else tuple(b)
    pos = 0
    for item in a_items:
        while pos < len(b_items) and b_items[pos] != item:
            pos += 1
        if pos == len(b_items):
            return False
        pos += 1
    return True


def task_class_names(task: str) -> tuple[str, str]:
    """(positive, negative) class names used in sequence databases."""
    if task == "ambiguous":
        return "ambiguous", "non-ambiguous"
    if task == "misleading":
        return "misleading", "non-misleading"
    raise ValueError(f"unknown task {task!r}")


def build_sequence_database(
    docs: Sequence[Document], inventory: ItemInventory, task: str
) -> SequenceDatabase:
    """Encode labeled documents into the miner's input database."""
    pos_name, neg_name = task_class_names(task)
    entries = []
    for doc in docs:
        label = doc.label_for(task)
        if label is None:
            raise ValueError(f"document {doc.id!r} lacks the {task} label")
        seq = encode_headline(doc.headline, inventory)
        entries.append((LabelSequence(seq.items, source_id=doc.id), pos_name if label else neg_name))
    return SequenceDatabase(entries=tuple(entries))
