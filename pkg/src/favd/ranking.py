"""Term dangerousness scoring and ranked dangerous-word lists.

Frequency scoring walks the training names once: every unique term of a
vulnerable name gains `plus`, every unique term of a benign name loses
`minus`. A term therefore scores plus*V_t - minus*B_t where V_t and B_t count
the names (not occurrences) containing it. External per-term scores in
[0, 1] can be loaded from CSV instead; they plug into the same rank step, so
any offline scorer can drive the rest of the pipeline.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .corpus import LabeledCorpus
from .errors import DataError
from .rational import exact_fraction
from .splitter import split

Score = int | Fraction

FREQUENCY = "frequency"
EXTERNAL = "external"


@dataclass(frozen=True)
class Weight:
    """Per-occurrence increment (vulnerable names) and decrement (benign)."""

    plus: int
    minus: int

    def __post_init__(self) -> None:
        if self.plus < 1 or self.minus < 1:
            raise ValueError(f"weight components must be >= 1, got {self.plus}-{self.minus}")

    def tag(self) -> str:
        return f"{self.plus}-{self.minus}"

    @classmethod
    def parse(cls, text: str) -> "Weight":
        try:
            plus, minus = text.split("-")
            return cls(int(plus), int(minus))
        except (ValueError, TypeError) as exc:
            raise DataError(f"cannot parse weight {text!r}; expected PLUS-MINUS") from exc


def default_weight_grid() -> tuple[Weight, ...]:
    """Sweep grid: {1,2,3,4,5,10} x {1,2,3,4,5,10} plus 1-1000 and 1000-1."""
    steps = (1, 2, 3, 4, 5, 10)
    grid = [Weight(p, m) for p in steps for m in steps]
    grid.append(Weight(1, 1000))
    grid.append(Weight(1000, 1))
    return tuple(grid)


@dataclass(frozen=True)
class TermScoreTable:
    """Scores per term plus enough metadata to rank deterministically."""

    scores: dict[str, Score]
    origin: str
    weight: Weight | None = None
    source: str | None = None
    vuln_counts: dict[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.origin not in (FREQUENCY, EXTERNAL):
            raise ValueError(f"unknown origin {self.origin!r}")
        if self.origin == EXTERNAL:
            bad = {t: s for t, s in self.scores.items() if not 0 <= s <= 1}
            if bad:
                raise ValueError(f"external scores outside [0, 1]: {bad}")


@dataclass(frozen=True)
class MinScorePolicy:
    """Filter applied before ranking: keep everything, or scores >= threshold."""

    kind: str  # "all" | "at_least"
    threshold: Fraction | None = None

    @classmethod
    def all_terms(cls) -> "MinScorePolicy":
        return cls(kind="all")

    @classmethod
    def at_least(cls, threshold) -> "MinScorePolicy":
        return cls(kind="at_least", threshold=exact_fraction(threshold))

    @classmethod
    def parse(cls, text: str) -> "MinScorePolicy":
        # "none"/"all" keep every term; "zero" is the >= 0 cut.
        word = text.strip().lower()
        if word in ("none", "all"):
            return cls.all_terms()
        if word == "zero":
            return cls.at_least(0)
        try:
            return cls.at_least(Fraction(word))
        except (ValueError, ZeroDivisionError) as exc:
            raise DataError(f"cannot parse policy {text!r}") from exc

    def tag(self) -> str:
        if self.kind == "all":
            return "all"
        return f"at_least({float(self.threshold)})"

    def keeps(self, score: Score) -> bool:
        if self.kind == "all":
            return True
        return score >= self.threshold


@dataclass(frozen=True)
class DangerousWordList:
    """Terms ordered most dangerous first, after the min-score filter."""

    words: tuple[tuple[str, Score], ...]
    policy: MinScorePolicy
    weight: Weight | None = None
    source: str | None = None

    def __len__(self) -> int:
        return len(self.words)

    def top_terms(self, cutoff: int) -> frozenset[str]:
        return frozenset(term for term, _ in self.words[:cutoff])


def score_frequency(train: LabeledCorpus, weight: Weight) -> TermScoreTable:
    """Frequency-based scores over the unique terms of each training name."""
    if not train.vulnerable and not train.benign:
        raise DataError("cannot score an empty training corpus")
    scores: dict[str, int] = {}
    vuln_counts: dict[str, int] = {}
    for name in sorted(train.vulnerable):
        for term in set(split(name)):
            scores[term] = scores.get(term, 0) + weight.plus
            vuln_counts[term] = vuln_counts.get(term, 0) + 1
    for name in sorted(train.benign):
        for term in set(split(name)):
            scores[term] = scores.get(term, 0) - weight.minus
    return TermScoreTable(scores=scores, origin=FREQUENCY, weight=weight, vuln_counts=vuln_counts)


def rank(table: TermScoreTable, policy: MinScorePolicy) -> DangerousWordList:
    """Filter by policy and sort by score descending with a total tie-break.

    Frequency tables break score ties by higher vulnerable-name count, then
    term text; external tables by term text. The ordering is deterministic, so
    exported lists are byte-reproducible.
    """
    if table.origin == EXTERNAL:
        if policy.kind == "at_least" and not 0 <= policy.threshold <= 1:
            raise DataError(
                f"external policy threshold must lie in [0, 1], got {policy.threshold}"
            )
        key = lambda item: (-item[1], item[0])
    else:
        vc = table.vuln_counts
        key = lambda item: (-item[1], -vc.get(item[0], 0), item[0])
    kept = [(t, s) for t, s in table.scores.items() if policy.keeps(s)]
    kept.sort(key=key)
    return DangerousWordList(
        words=tuple(kept), policy=policy, weight=table.weight, source=table.source
    )


def load_external_scores(path: str | Path, source: str | None = None) -> TermScoreTable:
    """Load a `term,score` CSV (header optional) as an external score table."""
    path = Path(path)
    if not path.exists():
        raise DataError(f"score file not found: {path}")
    scores: dict[str, Fraction] = {}
    with path.open(newline="", encoding="utf-8") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if lineno == 1 and [c.strip().lower() for c in row[:2]] == ["term", "score"]:
                continue
            if len(row) < 2:
                raise DataError(f"{path}:{lineno}: expected term,score")
            term = row[0].strip()
            try:
                score = Fraction(row[1].strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise DataError(f"{path}:{lineno}: bad score {row[1]!r}") from exc
            if not 0 <= score <= 1:
                raise DataError(f"{path}:{lineno}: score {row[1]} outside [0, 1]")
            if term in scores:
                raise DataError(f"{path}:{lineno}: duplicate term {term!r}")
            scores[term] = score
    return TermScoreTable(scores=scores, origin=EXTERNAL, source=source or str(path))


def write_word_list_csv(words: DangerousWordList, path: str | Path) -> None:
    """Export as `rank,term,score` CSV, rank starting at 1."""
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["rank", "term", "score"])
        for i, (term, score) in enumerate(words.words, start=1):
            value = score if isinstance(score, int) else float(score)
            writer.writerow([i, term, value])
