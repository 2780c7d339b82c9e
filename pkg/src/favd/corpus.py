"""Labeled corpora of function names: loading, cleaning, fold plans.

A corpus is two lists of identifiers, one labeled vulnerable and one benign.
Cleaning removes duplicates within each list and resolves names present on
both lists by keeping them vulnerable (the conservative reading). Fold plans
are stratified and seeded, so a given (corpus, k, seed) always yields the
same folds regardless of hash randomization.
"""

from __future__ import annotations

import csv
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import NamedTuple

from .errors import DataError, InfeasibleError


@dataclass(frozen=True)
class RawLists:
    """Raw name lists as read from disk; may contain duplicates and overlaps."""

    vulnerable: tuple[str, ...]
    benign: tuple[str, ...]
    source_label: str = "corpus"


@dataclass(frozen=True)
class LabeledCorpus:
    """Cleaned corpus: disjoint sets of vulnerable and benign names."""

    vulnerable: frozenset[str]
    benign: frozenset[str]
    source_label: str = "corpus"

    def __post_init__(self) -> None:
        if self.vulnerable & self.benign:
            raise ValueError("vulnerable and benign sets must be disjoint")
        if "" in self.vulnerable or "" in self.benign:
            raise ValueError("identifiers must be non-empty")

    @property
    def size(self) -> int:
        return len(self.vulnerable) + len(self.benign)


@dataclass(frozen=True)
class FoldPlan:
    """Ordered (train, test) pairs plus a description of how they were made."""

    folds: tuple[tuple[LabeledCorpus, LabeledCorpus], ...]
    kind: str
    k: int | None = None
    seed: int | None = None
    labels: tuple[str, ...] = field(default=())


class CorpusStats(NamedTuple):
    vulnerable: int
    benign: int
    fraction: Fraction


def _read_lines(path: Path) -> list[str]:
    if not path.exists():
        raise DataError(f"input file not found: {path}")
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise DataError(f"not valid UTF-8: {path} ({exc})") from exc
    lines = [line.rstrip() for line in text.splitlines()]
    return [line for line in lines if line]


def load_lists(
    vulnerable_path: str | Path,
    benign_path: str | Path,
    source_label: str | None = None,
) -> RawLists:
    """Read one name per line from the two list files, in file order.

    Trailing whitespace (including CR from CRLF files) is stripped and blank
    lines are dropped.
    """
    vpath, bpath = Path(vulnerable_path), Path(benign_path)
    label = source_label if source_label is not None else vpath.resolve().parent.name
    return RawLists(
        vulnerable=tuple(_read_lines(vpath)),
        benign=tuple(_read_lines(bpath)),
        source_label=label,
    )


def load_csv(path: str | Path, source_label: str | None = None) -> RawLists:
    """Read a two-column `name,label` CSV with labels vulnerable/benign."""
    path = Path(path)
    if not path.exists():
        raise DataError(f"input file not found: {path}")
    vulnerable: list[str] = []
    benign: list[str] = []
    try:
        with path.open(newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header is None or [h.strip().lower() for h in header[:2]] != ["name", "label"]:
                raise DataError(f"expected header 'name,label' in {path}")
            for lineno, row in enumerate(reader, start=2):
                if not row or (len(row) == 1 and not row[0].strip()):
                    continue
                if len(row) < 2:
                    raise DataError(f"{path}:{lineno}: expected two columns")
                name, label = row[0].strip(), row[1].strip().lower()
                if not name:
                    continue
                if label == "vulnerable":
                    vulnerable.append(name)
                elif label == "benign":
                    benign.append(name)
                else:
                    raise DataError(f"{path}:{lineno}: unknown label {row[1]!r}")
    except UnicodeDecodeError as exc:
        raise DataError(f"not valid UTF-8: {path} ({exc})") from exc
    label_out = source_label if source_label is not None else path.stem
    return RawLists(tuple(vulnerable), tuple(benign), label_out)


def overlap_names(raw: RawLists) -> set[str]:
    """Names present on both raw lists (these move to vulnerable on clean)."""
    return set(raw.vulnerable) & set(raw.benign)


def clean(raw: RawLists) -> LabeledCorpus:
    """Deduplicate both lists and keep names found on both as vulnerable."""
    vulnerable = frozenset(raw.vulnerable)
    benign = frozenset(raw.benign) - vulnerable
    if not vulnerable and not benign:
        raise DataError(f"dataset {raw.source_label!r} is empty after cleaning")
    return LabeledCorpus(vulnerable=vulnerable, benign=benign, source_label=raw.source_label)


def as_raw(corpus: LabeledCorpus) -> RawLists:
    """Natural embedding of a cleaned corpus back into raw lists."""
    return RawLists(
        vulnerable=tuple(sorted(corpus.vulnerable)),
        benign=tuple(sorted(corpus.benign)),
        source_label=corpus.source_label,
    )


def _chunks(names: list[str], k: int) -> list[list[str]]:
    # First (len % k) chunks get one extra element; sizes differ by at most 1.
    n = len(names)
    base, extra = divmod(n, k)
    out = []
    start = 0
    for i in range(k):
        size = base + (1 if i < extra else 0)
        out.append(names[start : start + size])
        start += size
    return out


def make_kfold(corpus: LabeledCorpus, k: int, seed: int) -> FoldPlan:
    """Stratified k-fold plan with a seeded shuffle per class.

    Deterministic for a given (corpus, k, seed): names are sorted before
    shuffling so set iteration order cannot leak in.
    """
    if k < 2:
        raise InfeasibleError(f"k must be at least 2, got {k}")
    if len(corpus.vulnerable) < k or len(corpus.benign) < k:
        raise InfeasibleError(
            f"corpus {corpus.source_label!r} has {len(corpus.vulnerable)} vulnerable and "
            f"{len(corpus.benign)} benign names; both must be >= k={k}"
        )
    rng = random.Random(seed)
    vuln = sorted(corpus.vulnerable)
    ben = sorted(corpus.benign)
    rng.shuffle(vuln)
    rng.shuffle(ben)
    vuln_chunks = _chunks(vuln, k)
    ben_chunks = _chunks(ben, k)
    folds = []
    for i in range(k):
        test = LabeledCorpus(
            vulnerable=frozenset(vuln_chunks[i]),
            benign=frozenset(ben_chunks[i]),
            source_label=f"{corpus.source_label}[fold {i + 1}/{k}]",
        )
        train = LabeledCorpus(
            vulnerable=corpus.vulnerable - test.vulnerable,
            benign=corpus.benign - test.benign,
            source_label=f"{corpus.source_label}[train {i + 1}/{k}]",
        )
        folds.append((train, test))
    return FoldPlan(folds=tuple(folds), kind="kfold", k=k, seed=seed)


def make_leave_one_out(corpora: list[LabeledCorpus]) -> FoldPlan:
    """One fold per corpus; train is the re-cleaned union of all the others.

    Re-cleaning matters: a name vulnerable in one project and benign in
    another must end up vulnerable in the union.
    """
    if len(corpora) < 2:
        raise InfeasibleError("leave-one-out needs at least two corpora")
    labels = [c.source_label for c in corpora]
    if len(set(labels)) != len(labels):
        raise DataError(f"duplicate source labels in leave-one-out input: {labels}")
    folds = []
    for i, test in enumerate(corpora):
        rest = [c for j, c in enumerate(corpora) if j != i]
        union = RawLists(
            vulnerable=tuple(name for c in rest for name in sorted(c.vulnerable)),
            benign=tuple(name for c in rest for name in sorted(c.benign)),
            source_label=f"all-but-{test.source_label}",
        )
        folds.append((clean(union), test))
    return FoldPlan(folds=tuple(folds), kind="leave_one_out", labels=tuple(labels))


def vulnerable_fraction(vuln_count: int, benign_count: int) -> Fraction:
    if vuln_count + benign_count == 0:
        raise DataError("cannot compute vulnerable fraction of an empty corpus")
    return Fraction(vuln_count, vuln_count + benign_count)


def corpus_stats(corpus: LabeledCorpus) -> CorpusStats:
    v, b = len(corpus.vulnerable), len(corpus.benign)
    return CorpusStats(v, b, vulnerable_fraction(v, b))
