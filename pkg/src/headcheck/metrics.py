"""Evaluation: precision/recall/F, exact sign test, domain breakdown.

All rates are reported for the positive (inaccurate) class.  The sign
test is the exact two-sided binomial test over discordant predictions
(instances exactly one system gets right); ties are discarded.
"""

from __future__ import annotations

import json
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from pathlib import Path

from .corpus import DOMAINS, Document


class MetricError(ValueError):
    """Invalid metric input."""


@dataclass(frozen=True)
class EvalReport:
    precision: float
    recall: float
    f_score: float
    positives_predicted: int
    positives_gold: int

    def to_dict(self) -> dict:
        return {
            "precision": self.precision,
            "recall": self.recall,
            "f_score": self.f_score,
            "positives_predicted": self.positives_predicted,
            "positives_gold": self.positives_gold,
        }

    def as_table(self) -> str:
        lines = [
            f"{'precision':<20}{self.precision:.4f}",
            f"{'recall':<20}{self.recall:.4f}",
            f"{'f_score':<20}{self.f_score:.4f}",
            f"{'positives_predicted':<20}{self.positives_predicted}",
            f"{'positives_gold':<20}{self.positives_gold}",
        ]
        return "\n".join(lines)


def precision_recall_f(pred: Sequence[bool], gold: Sequence[bool]) -> EvalReport:
    if len(pred) != len(gold):
        raise MetricError(f"length mismatch: {len(pred)} predictions vs {len(gold)} gold")
    if not pred:
        raise MetricError("cannot evaluate an empty prediction list")
    tp = sum(1 for p, g in zip(pred, gold) if p and g)
    fp = sum(1 for p, g in zip(pred, gold) if p and not g)
    fn = sum(1 for p, g in zip(pred, gold) if not p and g)
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f_score = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return EvalReport(
        precision=precision,
        recall=recall,
        f_score=f_score,
        positives_predicted=tp + fp,
        positives_gold=tp + fn,
    )


def prevalence_baseline(gold: Sequence[bool]) -> float:
    """Positive fraction: the expected precision, recall, and F of a
    random classifier matched to the label proportion."""
    if not gold:
        raise MetricError("empty gold list")
    return sum(1 for g in gold if g) / len(gold)


def sign_test(
    pred_a: Sequence[bool], pred_b: Sequence[bool], gold: Sequence[bool]
) -> float:
    """Two-sided exact binomial p-value over discordant pairs.

    A pair is discordant when exactly one system predicts the gold label.
    With d discordant pairs of which k favor one system, p = 2 * P(X <=
    min(k, d-k)) for X ~ Binomial(d, 1/2), capped at 1; no discordant
    pairs gives p = 1.
    """
    if not (len(pred_a) == len(pred_b) == len(gold)):
        raise MetricError("sign test inputs must share one length")
    a_only = 0
    b_only = 0
    for a, b, g in zip(pred_a, pred_b, gold):
        a_correct = a == g
        b_correct = b == g
        if a_correct and not b_correct:
            a_only += 1
        elif b_correct and not a_correct:
            b_only += 1
    discordant = a_only + b_only
    if discordant == 0:
        return 1.0
    k = min(a_only, b_only)
    tail = sum(math.comb(discordant, i) for i in range(k + 1)) / 2.0**discordant
    return min(1.0, 2.0 * tail)


@dataclass(frozen=True)
class DomainCounts:
    accurate: int = 0
    ambiguous_only: int = 0
    misleading_only: int = 0
    both: int = 0

    @property
    def total(self) -> int:
        return self.accurate + self.ambiguous_only + self.misleading_only + self.both

    def to_dict(self) -> dict:
        return {
            "accurate": self.accurate,
            "ambiguous_only": self.ambiguous_only,
            "misleading_only": self.misleading_only,
            "both": self.both,
        }


def domain_breakdown(
    docs: Sequence[Document],
    predict_ambiguous: Callable[[Document], bool],
    predict_misleading: Callable[[Document], bool],
) -> dict[str, DomainCounts]:
    """Classify every document with both pipelines and tally the four
    mutually exclusive outcome categories per domain."""
    tallies = {domain: [0, 0, 0, 0] for domain in DOMAINS}
    for doc in docs:
        ambiguous = predict_ambiguous(doc)
        misleading = predict_misleading(doc)
        if ambiguous and misleading:
            slot = 3
        elif misleading:
            slot = 2
        elif ambiguous:
            slot = 1
        else:
            slot = 0
        tallies[doc.domain][slot] += 1
    return {
        domain: DomainCounts(
            accurate=t[0], ambiguous_only=t[1], misleading_only=t[2], both=t[3]
        )
        for domain, t in tallies.items()
        if sum(t) > 0
    }


_BREAKDOWN_COLUMNS = ("accurate", "ambiguous_only", "misleading_only", "both")


def breakdown_to_csv(breakdown: dict[str, DomainCounts]) -> str:
    lines = ["domain," + ",".join(_BREAKDOWN_COLUMNS)]
    for domain in sorted(breakdown):
        counts = breakdown[domain]
        lines.append(
            ",".join(
                [domain] + [str(getattr(counts, col)) for col in _BREAKDOWN_COLUMNS]
            )
        )
    return "\n".join(lines) + "\n"


def breakdown_from_csv(text: str) -> dict[str, DomainCounts]:
    lines = [line for line in text.splitlines() if line.strip()]
    header = lines[0].split(",")
    if header != ["domain", *_BREAKDOWN_COLUMNS]:
        raise MetricError(f"unexpected breakdown header: {lines[0]!r}")
    result = {}
    for line in lines[1:]:
        parts = line.split(",")
        result[parts[0]] = DomainCounts(**{
            col: int(value) for col, value in zip(_BREAKDOWN_COLUMNS, parts[1:])
        })
    return result


def breakdown_to_json(breakdown: dict[str, DomainCounts]) -> str:
    return json.dumps(
        {domain: counts.to_dict() for domain, counts in breakdown.items()},
        indent=2,
        sort_keys=True,
    )


def breakdown_from_json(text: str) -> dict[str, DomainCounts]:
    payload = json.loads(text)
    return {domain: DomainCounts(**counts) for domain, counts in payload.items()}


def save_breakdown(breakdown: dict[str, DomainCounts], directory: str | Path) -> None:
    directory = Path(directory)
    (directory / "breakdown.json").write_text(breakdown_to_json(breakdown), encoding="utf-8")
    (directory / "breakdown.csv").write_text(breakdown_to_csv(breakdown), encoding="utf-8")
