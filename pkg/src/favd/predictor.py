"""Classification of identifiers against a tuned dangerous-word model.

The rule: split the identifier, take the fraction of its unique terms that
appear among the first `cutoff` dangerous words, and predict vulnerable when
that fraction strictly exceeds `threshold`. The strict inequality makes a
threshold of 1.0 unsatisfiable and anchors ROC curves at (0, 0).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .corpus import LabeledCorpus
from .ranking import DangerousWordList, MinScorePolicy, Weight
from .splitter import split

VULNERABLE = "vulnerable"
BENIGN = "benign"


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int = 0
    fp: int = 0
    fn: int = 0
    tn: int = 0

    def __add__(self, other: "ConfusionCounts") -> "ConfusionCounts":
        return ConfusionCounts(
            self.tp + other.tp, self.fp + other.fp, self.fn + other.fn, self.tn + other.tn
        )


@dataclass
class TunedModel:
    """Dangerous word list plus the cutoff/threshold pair that deploys it."""

    dangerous: DangerousWordList
    cutoff: int
    threshold: Fraction
    policy: MinScorePolicy
    weight: Weight | None = None
    source: str | None = None
    _top: frozenset[str] | None = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.dangerous) == 0:
            if self.cutoff != 0:
                raise ValueError("empty dangerous list requires cutoff 0")
        elif not 1 <= self.cutoff <= len(self.dangerous):
            raise ValueError(
                f"cutoff {self.cutoff} outside [1, {len(self.dangerous)}]"
            )

    def top_terms(self) -> frozenset[str]:
        if self._top is None:
            self._top = self.dangerous.top_terms(self.cutoff)
        return self._top


@dataclass(frozen=True)
class Prediction:
    identifier: str
    label: str
    percentage: Fraction
    matched_terms: frozenset[str]


def classify(identifier: str, model: TunedModel) -> Prediction:
    """Label one identifier. Zero split terms means percentage 0 and benign."""
    terms = set(split(identifier))
    if not terms:
        return Prediction(identifier, BENIGN, Fraction(0), frozenset())
    matched = frozenset(terms & model.top_terms())
    percentage = Fraction(len(matched), len(terms))
    label = VULNERABLE if percentage > model.threshold else BENIGN
    return Prediction(identifier, label, percentage, matched)


def classify_corpus(
    corpus: LabeledCorpus, model: TunedModel
) -> tuple[list[Prediction], ConfusionCounts]:
    """Classify every name in the corpus and tally the confusion counts.

    Names are visited in sorted order per class (vulnerable first) so the
    prediction list is deterministic.
    """
    predictions: list[Prediction] = []
    tp = fp = fn = tn = 0
    for name in sorted(corpus.vulnerable):
        pred = classify(name, model)
        predictions.append(pred)
        if pred.label == VULNERABLE:
            tp += 1
        else:
            fn += 1
    for name in sorted(corpus.benign):
        pred = classify(name, model)
        predictions.append(pred)
        if pred.label == VULNERABLE:
            fp += 1
        else:
            tn += 1
    return predictions, ConfusionCounts(tp=tp, fp=fp, fn=fn, tn=tn)
