"""Two-view co-training over a labeled seed set and an unlabeled pool.

Each iteration trains both view classifiers on the current labeled set,
lets each view pick its most confident p positives and n negatives from
the pool, and promotes the union with predicted labels.  Documents the
two views label differently are conflicts: they leave the pool but never
enter the labeled set.  Gold labels are immutable throughout.
"""

from __future__ import annotations

import json
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from pathlib import Path

from .classifier import Model, TrainConfig, TrainingError, predict_score, train
from .features import FeatureVector

PROVENANCE_GOLD = "gold"
PROVENANCE_HEAD = "promoted_h"
PROVENANCE_BODY = "promoted_b"


@dataclass(frozen=True)
class CoTrainConfig:
    p: int = 10
    n: int = 20
    iterations: int = 50

    def __post_init__(self):
        if self.p < 1 or self.n < 1:
            raise TrainingError("p and n must be at least 1")
        if self.iterations < 1:
            raise TrainingError("iterations must be at least 1")


@dataclass(frozen=True)
class IterationRecord:
    iteration: int
    promoted_h_pos: int
    promoted_h_neg: int
    promoted_b_pos: int
    promoted_b_neg: int
    conflicts: int
    labeled_size: int
    unlabeled_size: int
    conflict_ids: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "iteration": self.iteration,
            "promoted_h_pos": self.promoted_h_pos,
            "promoted_h_neg": self.promoted_h_neg,
            "promoted_b_pos": self.promoted_b_pos,
            "promoted_b_neg": self.promoted_b_neg,
            "conflicts": self.conflicts,
            "L_size": self.labeled_size,
            "U_size": self.unlabeled_size,
        }


@dataclass
class CoTrainState:
    """Labeled/unlabeled bookkeeping across iterations.

    ``labeled`` entries are (document id, label, provenance); the ids in
    ``labeled``, ``unlabeled``, and ``excluded`` stay pairwise disjoint.
    """

    labeled: list[tuple[str, bool, str]] = field(default_factory=list)
    unlabeled: list[str] = field(default_factory=list)
    iteration: int = 0
    history: list[IterationRecord] = field(default_factory=list)
    excluded: list[str] = field(default_factory=list)

    def check_disjoint(self) -> None:
        labeled_ids = {doc_id for doc_id, _, _ in self.labeled}
        pool_ids = set(self.unlabeled)
        excluded_ids = set(self.excluded)
        assert not labeled_ids & pool_ids
        assert not labeled_ids & excluded_ids
        assert not pool_ids & excluded_ids


def _select_confident(scores: dict[str, float], p: int, n: int) -> dict[str, bool]:
    """Top-p ids by score as positives, bottom-n of the rest as negatives.

    Ties break on document id so selection is deterministic.
    """
    by_score_desc = sorted(scores, key=lambda i: (-scores[i], i))
    positives = by_score_desc[: min(p, len(by_score_desc))]
    rest = by_score_desc[len(positives) :]
    negatives = sorted(rest, key=lambda i: (scores[i], i))[: min(n, len(rest))]
    selection = {i: True for i in positives}
    selection.update({i: False for i in negatives})
    return selection


def co_train(
    gold: Sequence[tuple[object, bool]],
    pool: Sequence[object],
    head_view: Callable[[object], FeatureVector],
    body_view: Callable[[object], FeatureVector],
    cfg: CoTrainConfig,
    tcfg: TrainConfig,
    checkpoint_hook: Callable[[int, Model, Model], None] | None = None,
) -> tuple[Model, Model, CoTrainState]:
    """Run the co-training loop; returns both final models and the state.

    ``gold`` holds (document, label) pairs; documents expose an ``id``
    attribute.  ``checkpoint_hook(k, model_h, model_b)`` fires whenever
    models trained on the labeled set after k iterations exist: during
    iteration k+1 and once more for the final retrained models.
    """
    gold_ids = [doc.id for doc, _ in gold]
    pool_ids = [doc.id for doc in pool]
    all_ids = gold_ids + pool_ids
    if len(set(all_ids)) != len(all_ids):
        raise TrainingError("document ids must be unique and gold/pool disjoint")
    labels = {doc.id for doc, label in gold if label}
    if not labels or len(labels) == len(gold):
        raise TrainingError("gold set must contain both classes")

    feats_h = {doc.id: head_view(doc) for doc, _ in gold}
    feats_b = {doc.id: body_view(doc) for doc, _ in gold}
    for doc in pool:
        feats_h[doc.id] = head_view(doc)
        feats_b[doc.id] = body_view(doc)

    state = CoTrainState(
        labeled=[(doc.id, label, PROVENANCE_GOLD) for doc, label in gold],
        unlabeled=list(pool_ids),
    )

    def fit_views() -> tuple[Model, Model]:
        examples_h = [(feats_h[i], label) for i, label, _ in state.labeled]
        examples_b = [(feats_b[i], label) for i, label, _ in state.labeled]
        return train(examples_h, tcfg), train(examples_b, tcfg)

    for it in range(1, cfg.iterations + 1):
        if not state.unlabeled:
            break
        model_h, model_b = fit_views()
        if checkpoint_hook is not None:
            checkpoint_hook(it - 1, model_h, model_b)

        scores_h = {i: predict_score(model_h, feats_h[i]) for i in state.unlabeled}
        scores_b = {i: predict_score(model_b, feats_b[i]) for i in state.unlabeled}
        sel_h = _select_confident(scores_h, cfg.p, cfg.n)
        sel_b = _select_confident(scores_b, cfg.p, cfg.n)

        union = set(sel_h) | set(sel_b)
        conflicts = sorted(
            i for i in set(sel_h) & set(sel_b) if sel_h[i] != sel_b[i]
        )
        for doc_id in sorted(union - set(conflicts)):
            if doc_id in sel_h:
                state.labeled.append((doc_id, sel_h[doc_id], PROVENANCE_HEAD))
            else:
                state.labeled.append((doc_id, sel_b[doc_id], PROVENANCE_BODY))
        state.excluded.extend(conflicts)
        state.unlabeled = [i for i in state.unlabeled if i not in union]
        state.iteration = it
        state.history.append(
            IterationRecord(
                iteration=it,
                promoted_h_pos=sum(1 for v in sel_h.values() if v),
                promoted_h_neg=sum(1 for v in sel_h.values() if not v),
                promoted_b_pos=sum(1 for v in sel_b.values() if v),
                promoted_b_neg=sum(1 for v in sel_b.values() if not v),
                conflicts=len(conflicts),
                labeled_size=len(state.labeled),
                unlabeled_size=len(state.unlabeled),
                conflict_ids=tuple(conflicts),
            )
        )
        state.check_disjoint()

    model_h, model_b = fit_views()
    if checkpoint_hook is not None:
        checkpoint_hook(state.iteration, model_h, model_b)
    return model_h, model_b, state


def combined_score(
    model_h: Model,
    model_b: Model,
    doc: object,
    head_view: Callable[[object], FeatureVector],
    body_view: Callable[[object], FeatureVector],
) -> float:
    """Mean of the two views' prediction scores."""
    return 0.5 * (
        predict_score(model_h, head_view(doc)) + predict_score(model_b, body_view(doc))
    )


def write_run_report(state: CoTrainState, path: str | Path) -> None:
    """One JSON line per iteration with promotion and pool counts."""
    with open(path, "w", encoding="utf-8") as handle:
        for record in state.history:
            handle.write(json.dumps(record.to_dict(), sort_keys=True))
            handle.write("\n")


def sweep(
    gold: Sequence[tuple[object, bool]],
    pool: Sequence[object],
    test: Sequence[tuple[object, bool]],
    head_view: Callable[[object], FeatureVector],
    body_view: Callable[[object], FeatureVector],
    p_grid: Sequence[int],
    checkpoints: Sequence[int],
    tcfg: TrainConfig,
) -> list[dict]:
    """Grid over promotion sizes with n = 2p, evaluating the combined
    score on held-out data at each iteration checkpoint.

    Checkpoint 0 is the supervised baseline; checkpoints past pool
    exhaustion repeat the frozen final state.
    """
    from .metrics import precision_recall_f

    checkpoint_set = sorted(set(checkpoints))
    if not checkpoint_set or checkpoint_set[0] < 0:
        raise TrainingError("checkpoints must be nonnegative iteration counts")
    test_h = [head_view(doc) for doc, _ in test]
    test_b = [body_view(doc) for doc, _ in test]
    test_gold = [label for _, label in test]

    rows: list[dict] = []
    for p in p_grid:
        cfg = CoTrainConfig(p=p, n=2 * p, iterations=max(max(checkpoint_set), 1))
        evals: dict[int, dict] = {}

        def evaluate(model_h: Model, model_b: Model) -> dict:
            preds = [
                0.5 * (predict_score(model_h, fh) + predict_score(model_b, fb)) >= 0.5
                for fh, fb in zip(test_h, test_b)
            ]
            report = precision_recall_f(preds, test_gold)
            return {
                "precision": report.precision,
                "recall": report.recall,
                "f_score": report.f_score,
            }

        def hook(k: int, model_h: Model, model_b: Model) -> None:
            if k in checkpoint_set and k not in evals:
                evals[k] = evaluate(model_h, model_b)

        model_h, model_b, _ = co_train(
            gold, pool, head_view, body_view, cfg, tcfg, checkpoint_hook=hook
        )
        for c in checkpoint_set:
            if c not in evals:
                # pool exhausted before this checkpoint: state is frozen
                evals[c] = evaluate(model_h, model_b)
            rows.append({"p": p, "n": 2 * p, "iteration": c, **evals[c]})
    return rows
