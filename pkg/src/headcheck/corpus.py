"""Corpus ingestion and bookkeeping.

Documents arrive pre-tokenized as line-delimited JSON; lexicons are plain
UTF-8 word lists (one entry per line); embeddings use the textual
word2vec layout (``count dimension`` header, then one word per line).
Everything loaded here is immutable, so downstream stages can share it
freely across workers.
"""

from __future__ import annotations

import json
import random
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np

DOMAINS = (
    "domestic",
    "world",
    "society",
    "entertainment",
    "sports",
    "technology",
    "other",
)

RELATION_NAMES = ("synonym", "hypernym", "hyponym", "antonym")

CONJUNCTION_CLASS_COUNT = 9

# lexicon attribute -> file name; every file is optional except conj_*.txt
_LEXICON_FILES = {
    "clickbait_words": "clickbait_words.txt",
    "slang": "slang.txt",
    "degree_very": "degree_very.txt",
    "degree_extreme": "degree_extreme.txt",
    "pos_eval": "pos_eval.txt",
    "neg_eval": "neg_eval.txt",
    "pos_emotion": "pos_emotion.txt",
    "neg_emotion": "neg_emotion.txt",
    "subjective": "subjective.txt",
    "interrogatives": "interrogatives.txt",
    "forward_ref": "forward_ref.txt",
    "temporal_past": "temporal_past.txt",
    "temporal_present": "temporal_present.txt",
}


class CorpusError(ValueError):
    """Malformed corpus, lexicon, or embedding input."""


@dataclass(frozen=True)
class Document:
    """One news item: tokenized headline and body plus optional annotations.

    ``headline_deps`` / ``body_deps`` hold (head_index, dependent_index)
    pairs produced by an upstream parser; ``headline_entities`` holds token
    indices flagged as named entities.  All annotation fields are ``None``
    when the input record omitted them, which downstream features treat as
    degraded input rather than an error.
    """

    id: str
    headline: tuple[str, ...]
    body: tuple[tuple[str, ...], ...]
    domain: str
    source: str
    headline_deps: tuple[tuple[int, int], ...] | None = None
    body_deps: tuple[tuple[tuple[int, int], ...], ...] | None = None
    headline_entities: frozenset[int] | None = None
    body_entity_strings: frozenset[str] | None = None
    label_ambiguous: bool | None = None
    label_misleading: bool | None = None

    def body_tokens(self) -> list[str]:
        return [tok for sentence in self.body for tok in sentence]

    def label_for(self, task: str) -> bool | None:
        if task == "ambiguous":
            return self.label_ambiguous
        if task == "misleading":
            return self.label_misleading
        raise ValueError(f"unknown task {task!r}")


def _check_dep_pairs(raw, n_tokens: int, where: str) -> tuple[tuple[int, int], ...]:
    pairs = []
    if not isinstance(raw, list):
        raise CorpusError(f"{where}: dependency list must be an array")
    for pair in raw:
        if (
            not isinstance(pair, (list, tuple))
            or len(pair) != 2
            or not all(isinstance(i, int) and not isinstance(i, bool) for i in pair)
        ):
            raise CorpusError(f"{where}: dependency pair must be [head, dependent] integers")
        head, dep = pair
        if not (0 <= head < n_tokens and 0 <= dep < n_tokens):
            raise CorpusError(
                f"{where}: dependency index out of range (tokens={n_tokens}, pair={pair})"
            )
        pairs.append((head, dep))
    return tuple(pairs)


def _token_list(raw, where: str) -> tuple[str, ...]:
    if not isinstance(raw, list) or not all(isinstance(t, str) for t in raw):
        raise CorpusError(f"{where}: expected an array of strings")
    return tuple(raw)


def document_from_dict(record: dict, where: str = "record") -> Document:
    """Validate one decoded JSON record and build a Document."""
    if not isinstance(record, dict):
        raise CorpusError(f"{where}: expected a JSON object")
    try:
        doc_id = record["id"]
        headline = record["headline"]
        body = record["body"]
        domain = record["domain"]
        source = record["source"]
    except KeyError as exc:
        raise CorpusError(f"{where}: missing required key {exc.args[0]!r}") from None
    if not isinstance(doc_id, str) or not doc_id:
        raise CorpusError(f"{where}: id must be a non-empty string")
    headline = _token_list(headline, f"{where}: headline")
    if not isinstance(body, list):
        raise CorpusError(f"{where}: body must be an array of sentences")
    body_sentences = tuple(
        _token_list(sent, f"{where}: body sentence {i}") for i, sent in enumerate(body)
    )
    if domain not in DOMAINS:
        raise CorpusError(f"{where}: unknown domain {domain!r}")
    if not isinstance(source, str):
        raise CorpusError(f"{where}: source must be a string")

    headline_deps = None
    if "headline_deps" in record:
        headline_deps = _check_dep_pairs(
            record["headline_deps"], len(headline), f"{where}: headline_deps"
        )
    body_deps = None
    if "body_deps" in record:
        raw = record["body_deps"]
        if not isinstance(raw, list) or len(raw) != len(body_sentences):
            raise CorpusError(f"{where}: body_deps must list one entry per body sentence")
        body_deps = tuple(
            _check_dep_pairs(sent_deps, len(body_sentences[i]), f"{where}: body_deps[{i}]")
            for i, sent_deps in enumerate(raw)
        )
    headline_entities = None
    if "headline_entities" in record:
        raw = record["headline_entities"]
        if not isinstance(raw, list) or not all(
            isinstance(i, int) and not isinstance(i, bool) for i in raw
        ):
            raise CorpusError(f"{where}: headline_entities must be an array of integers")
        for i in raw:
            if not 0 <= i < len(headline):
                raise CorpusError(f"{where}: headline entity index {i} out of range")
        headline_entities = frozenset(raw)
    body_entity_strings = None
    if "body_entity_strings" in record:
        raw = record["body_entity_strings"]
        if not isinstance(raw, list) or not all(isinstance(s, str) for s in raw):
            raise CorpusError(f"{where}: body_entity_strings must be an array of strings")
        body_entity_strings = frozenset(raw)

    labels = {}
    for key in ("label_ambiguous", "label_misleading"):
        if key in record:
            value = record[key]
            if not isinstance(value, bool):
                raise CorpusError(f"{where}: {key} must be a JSON boolean")
            labels[key] = value

    return Document(
        id=doc_id,
        headline=headline,
        body=body_sentences,
        domain=domain,
        source=source,
        headline_deps=headline_deps,
        body_deps=body_deps,
        headline_entities=headline_entities,
        body_entity_strings=body_entity_strings,
        label_ambiguous=labels.get("label_ambiguous"),
        label_misleading=labels.get("label_misleading"),
    )


def document_to_dict(doc: Document) -> dict:
    """Inverse of document_from_dict; omits fields that were absent."""
    record: dict = {
        "id": doc.id,
        "headline": list(doc.headline),
        "body": [list(sent) for sent in doc.body],
        "domain": doc.domain,
        "source": doc.source,
    }
    if doc.headline_deps is not None:
        record["headline_deps"] = [list(p) for p in doc.headline_deps]
    if doc.body_deps is not None:
        record["body_deps"] = [[list(p) for p in sent] for sent in doc.body_deps]
    if doc.headline_entities is not None:
        record["headline_entities"] = sorted(doc.headline_entities)
    if doc.body_entity_strings is not None:
        record["body_entity_strings"] = sorted(doc.body_entity_strings)
    if doc.label_ambiguous is not None:
        record["label_ambiguous"] = doc.label_ambiguous
    if doc.label_misleading is not None:
        record["label_misleading"] = doc.label_misleading
    return record


def parse_corpus(lines: Iterable[str]) -> list[Document]:
    """Parse line-delimited JSON records into Documents, in input order.

    Raises CorpusError naming the 1-based line number for any malformed
    line, invalid field, or duplicate id.  Blank lines are skipped.
    """
    docs: list[Document] = []
    seen: set[str] = set()
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusError(f"line {lineno}: invalid JSON ({exc.msg})") from None
        doc = document_from_dict(record, where=f"line {lineno}")
        if doc.id in seen:
            raise CorpusError(f"line {lineno}: duplicate document id {doc.id!r}")
        seen.add(doc.id)
        docs.append(doc)
    return docs


def load_corpus(path: str | Path) -> list[Document]:
    with open(path, encoding="utf-8") as handle:
        return parse_corpus(handle)


def write_corpus(docs: Sequence[Document], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for doc in docs:
            handle.write(json.dumps(document_to_dict(doc), ensure_ascii=False, sort_keys=True))
            handle.write("\n")


def docs_for_task(docs: Sequence[Document], task: str) -> list[Document]:
    """Documents carrying the task's gold label, ready for training.

    A labeled document with an empty headline is a data error: it cannot
    be admitted to training.
    """
    selected = [d for d in docs if d.label_for(task) is not None]
    for doc in selected:
        if not doc.headline:
            raise CorpusError(f"document {doc.id!r} is labeled but has an empty headline")
    return selected


def unlabeled_pool(docs: Sequence[Document], task: str) -> list[Document]:
    return [d for d in docs if d.label_for(task) is None and d.headline]


@dataclass(frozen=True)
class LexiconSet:
    """All word lists driving feature extraction and headline encoding.

    Sets are exact-match and case-preserving.  ``conjunction_classes``
    always holds exactly nine entries; ``relations`` maps directed
    (word, word) pairs to one of synonym/hypernym/hyponym/antonym.
    """

    clickbait_words: frozenset[str] = frozenset()
    slang: frozenset[str] = frozenset()
    degree_very: frozenset[str] = frozenset()
    degree_extreme: frozenset[str] = frozenset()
    pos_eval: frozenset[str] = frozenset()
    neg_eval: frozenset[str] = frozenset()
    pos_emotion: frozenset[str] = frozenset()
    neg_emotion: frozenset[str] = frozenset()
    subjective: frozenset[str] = frozenset()
    interrogatives: frozenset[str] = frozenset()
    forward_ref: frozenset[str] = frozenset()
    temporal_past: frozenset[str] = frozenset()
    temporal_present: frozenset[str] = frozenset()
    conjunction_classes: tuple[frozenset[str], ...] = tuple(
        frozenset() for _ in range(CONJUNCTION_CLASS_COUNT)
    )
    relations: dict[tuple[str, str], str] = None  # type: ignore[assignment]

    def __post_init__(self):
        if len(self.conjunction_classes) != CONJUNCTION_CLASS_COUNT:
            raise CorpusError(
                f"expected {CONJUNCTION_CLASS_COUNT} conjunction classes, "
                f"got {len(self.conjunction_classes)}"
            )
        if self.relations is None:
            object.__setattr__(self, "relations", {})

    def word_class(self, name: str) -> frozenset[str]:
        """Look up a lexicon class by its loader name (e.g. ``conj_3``)."""
        if name.startswith("conj_"):
            try:
                index = int(name.split("_", 1)[1])
            except ValueError:
                raise KeyError(name) from None
            if not 1 <= index <= CONJUNCTION_CLASS_COUNT:
                raise KeyError(name)
            return self.conjunction_classes[index - 1]
        if name in _LEXICON_FILES:
            return getattr(self, name)
        raise KeyError(name)

    def with_relations(self, relations: dict[tuple[str, str], str]) -> "LexiconSet":
        """Copy of this lexicon set with the relation map replaced."""
        fields = {attr: getattr(self, attr) for attr in _LEXICON_FILES}
        return LexiconSet(
            conjunction_classes=self.conjunction_classes,
            relations=dict(relations),
            **fields,
        )


def _read_wordlist(path: Path) -> frozenset[str]:
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise CorpusError(f"{path.name}: not valid UTF-8 ({exc.reason})") from None
    return frozenset(line.strip() for line in text.splitlines() if line.strip())


def load_lexicons(directory: str | Path) -> LexiconSet:
    """Load every word list from ``directory``.

    Missing optional files yield empty sets; the nine conjunction files
    are mandatory.  ``relations.txt`` (tab-separated word1, word2,
    relation) is optional.
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise CorpusError(f"lexicon directory not found: {directory}")

    fields: dict = {}
    for attr, filename in _LEXICON_FILES.items():
        path = directory / filename
        fields[attr] = _read_wordlist(path) if path.exists() else frozenset()

    conj = []
    for i in range(1, CONJUNCTION_CLASS_COUNT + 1):
        path = directory / f"conj_{i}.txt"
        if not path.exists():
            raise CorpusError(
                f"missing conjunction class file conj_{i}.txt "
                f"(all {CONJUNCTION_CLASS_COUNT} are required)"
            )
        conj.append(_read_wordlist(path))

    rel_path = directory / "relations.txt"
    relations = load_relations(rel_path) if rel_path.exists() else {}

    return LexiconSet(conjunction_classes=tuple(conj), relations=relations, **fields)


def load_relations(path: str | Path) -> dict[tuple[str, str], str]:
    """Parse a tab-separated (word1, word2, relation) file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise CorpusError(f"{path.name}: not valid UTF-8 ({exc.reason})") from None
    relations: dict[tuple[str, str], str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.rstrip("\n").split("\t")
        if len(parts) != 3:
            raise CorpusError(
                f"{path.name} line {lineno}: expected word1<TAB>word2<TAB>relation"
            )
        word1, word2, relation = (p.strip() for p in parts)
        if relation not in RELATION_NAMES:
            raise CorpusError(f"{path.name} line {lineno}: unknown relation {relation!r}")
        relations[(word1, word2)] = relation
    return relations


class EmbeddingTable:
    """Word -> dense vector lookup with an explicit OOV signal."""

    def __init__(self, dimension: int, vectors: dict[str, np.ndarray]):
        if dimension <= 0:
            raise CorpusError("embedding dimension must be positive")
        for word, vec in vectors.items():
            if vec.shape != (dimension,):
                raise CorpusError(
                    f"embedding for {word!r} has shape {vec.shape}, expected ({dimension},)"
                )
        self.dimension = dimension
        self._vectors = vectors

    def __contains__(self, word: str) -> bool:
        return word in self._vectors

    def __len__(self) -> int:
        return len(self._vectors)

    def get(self, word: str) -> np.ndarray | None:
        """Vector for ``word``, or None when out of vocabulary."""
        return self._vectors.get(word)

    def vector(self, word: str) -> np.ndarray:
        try:
            return self._vectors[word]
        except KeyError:
            raise KeyError(f"out-of-vocabulary word: {word!r}") from None


def load_embeddings(path: str | Path) -> EmbeddingTable:
    """Read a text embedding file: ``count dimension`` header, then rows."""
    path = Path(path)
    with open(path, encoding="utf-8") as handle:
        header = handle.readline().split()
        if len(header) != 2:
            raise CorpusError(f"{path.name}: header must be 'count dimension'")
        try:
            count, dimension = int(header[0]), int(header[1])
        except ValueError:
            raise CorpusError(f"{path.name}: header must be two integers") from None
        vectors: dict[str, np.ndarray] = {}
        for lineno, line in enumerate(handle, start=2):
            if not line.strip():
                continue
            parts = line.rstrip("\n").split(" ")
            if len(parts) != dimension + 1:
                raise CorpusError(
                    f"{path.name} line {lineno}: expected word plus {dimension} values"
                )
            try:
                vectors[parts[0]] = np.array([float(v) for v in parts[1:]], dtype=np.float64)
            except ValueError:
                raise CorpusError(f"{path.name} line {lineno}: non-numeric value") from None
    if len(vectors) != count:
        raise CorpusError(
            f"{path.name}: header declares {count} vectors, file holds {len(vectors)}"
        )
    return EmbeddingTable(dimension, vectors)


def split_train_test(
    docs: Sequence[Document],
    ratio: tuple[int, int] = (3, 1),
    seed: int = 0,
    stratify_by: Callable[[Document], object] | None = None,
) -> tuple[list[Document], list[Document]]:
    """Deterministic train/test partition.

    Test size is floor(N / (train_parts + test_parts)) * test_parts with
    the remainder going to train.  With ``stratify_by`` the same rule is
    applied within each key group and the groups are concatenated.
    """
    if not docs:
        raise CorpusError("cannot split an empty corpus")
    train_parts, test_parts = ratio
    if train_parts <= 0 or test_parts <= 0:
        raise CorpusError("split ratio parts must be positive integers")

    if stratify_by is not None:
        groups: dict = {}
        for doc in docs:
            groups.setdefault(stratify_by(doc), []).append(doc)
        train: list[Document] = []
        test: list[Document] = []
        # group order is fixed by first appearance; each group reuses the
        # same seeded rule so the overall partition stays deterministic
        for key_index, group in enumerate(groups.values()):
            sub_train, sub_test = split_train_test(
                group, ratio=ratio, seed=seed + key_index, stratify_by=None
            )
            train.extend(sub_train)
            test.extend(sub_test)
        return train, test

    n_test = (len(docs) // (train_parts + test_parts)) * test_parts
    order = list(range(len(docs)))
    random.Random(seed).shuffle(order)
    test_idx = set(order[:n_test])
    train = [doc for i, doc in enumerate(docs) if i not in test_idx]
    test = [doc for i, doc in enumerate(docs) if i in test_idx]
    return train, test
