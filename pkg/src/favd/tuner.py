"""Search for the best (cutoff, threshold) pair, and optionally the weight.

The default search is an exhaustive sweep of the cutoff x threshold grid; at
the corpus sizes this tool targets that is tractable and leaves no search
nondeterminism. A greedy coordinate-ascent mode is available behind a flag
for comparison. All F-scores are exact rationals, so argmax ties resolve
identically on every run: better score first, then smaller cutoff, then
larger threshold, and for weight sweeps the earlier grid entry.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .corpus import LabeledCorpus
from .metrics import default_thresholds, f_beta
from .predictor import ConfusionCounts, TunedModel
from .ranking import (
    DangerousWordList,
    MinScorePolicy,
    Weight,
    default_weight_grid,
    rank,
    score_frequency,
)
from .rational import exact_fraction
from .splitter import split

DEFAULT_BETA = Fraction(2)


def threshold_values(step) -> tuple[Fraction, ...]:
    """Multiples of `step` from 0 through 1, with 1 always present."""
    step = exact_fraction(step)
    if not 0 < step <= 1:
        raise ValueError(f"threshold step must lie in (0, 1], got {step}")
    values = []
    k = 0
    while k * step <= 1:
        values.append(k * step)
        k += 1
    if values[-1] != 1:
        values.append(Fraction(1))
    return tuple(values)


@dataclass(frozen=True)
class SearchGrid:
    """Grid axes for FindBest and the weight sweep."""

    cutoff_step: int = 100
    thresholds: tuple[Fraction, ...] = default_thresholds()
    weights: tuple[Weight, ...] = default_weight_grid()

    def __post_init__(self) -> None:
        if self.cutoff_step < 1:
            raise ValueError("cutoff_step must be >= 1")
        if not self.thresholds or not self.weights:
            raise ValueError("threshold and weight grids must be non-empty")
        if any(not 0 <= t <= 1 for t in self.thresholds):
            raise ValueError("thresholds must lie in [0, 1]")

    def cutoff_values(self, list_length: int) -> tuple[int, ...]:
        """1, 1+step, 1+2*step, ... capped at and always including list_length."""
        if list_length < 1:
            return ()
        values = list(range(1, list_length + 1, self.cutoff_step))
        if values[-1] != list_length:
            values.append(list_length)
        return tuple(values)


@dataclass(frozen=True)
class GridCell:
    cutoff: int
    threshold: Fraction
    counts: ConfusionCounts
    f2: Fraction


@dataclass(frozen=True)
class TuneResult:
    model: TunedModel
    train_f2: Fraction
    grid_trace: tuple[GridCell, ...] | None = None


def _degenerate_result(dangerous: DangerousWordList) -> TuneResult:
    model = TunedModel(
        dangerous=dangerous,
        cutoff=0,
        threshold=Fraction(1),
        policy=dangerous.policy,
        weight=dangerous.weight,
        source=dangerous.source,
    )
    return TuneResult(model=model, train_f2=Fraction(0), grid_trace=())


class _CellEvaluator:
    """Matched-term counts for every name at every cutoff, evaluated lazily.

    For name i with t_i unique terms, m_ij of which sit in the first c_j
    dangerous words, the prediction at threshold p/q is m_ij*q > p*t_i. That
    integer comparison is exactly Fraction(m, t) > Fraction(p, q).
    """

    def __init__(self, dangerous: DangerousWordList, train: LabeledCorpus, cutoffs):
        position = {term: i + 1 for i, (term, _) in enumerate(dangerous.words)}
        vuln = sorted(train.vulnerable)
        benign = sorted(train.benign)
        self.n_pos = len(vuln)
        self.n_neg = len(benign)
        self.cutoffs = np.asarray(cutoffs, dtype=np.int64)
        n = len(vuln) + len(benign)
        self.matched = np.zeros((n, len(cutoffs)), dtype=np.int64)
        self.totals = np.zeros(n, dtype=np.int64)
        for i, name in enumerate(vuln + benign):
            terms = set(split(name))
            self.totals[i] = len(terms)
            ranks = sorted(position[t] for t in terms if t in position)
            if ranks:
                self.matched[i] = np.searchsorted(np.asarray(ranks), self.cutoffs, side="right")

    def counts_per_cutoff(self, threshold: Fraction) -> tuple[np.ndarray, np.ndarray]:
        p, q = threshold.numerator, threshold.denominator
        predicted = self.matched * q > (p * self.totals)[:, None]
        tp = predicted[: self.n_pos].sum(axis=0)
        fp = predicted[self.n_pos :].sum(axis=0)
        return tp, fp

    def cell(self, cutoff_index: int, threshold: Fraction, beta) -> GridCell:
        tp, fp = self.counts_per_cutoff(threshold)
        counts = ConfusionCounts(
            tp=int(tp[cutoff_index]),
            fp=int(fp[cutoff_index]),
            fn=self.n_pos - int(tp[cutoff_index]),
            tn=self.n_neg - int(fp[cutoff_index]),
        )
        return GridCell(int(self.cutoffs[cutoff_index]), threshold, counts, f_beta(counts, beta))


def find_best(
    dangerous: DangerousWordList,
    train: LabeledCorpus,
    grid: SearchGrid,
    mode: str = "exhaustive",
    beta=DEFAULT_BETA,
    want_trace: bool = False,
) -> TuneResult:
    """Pick the (cutoff, threshold) cell maximizing training F-beta.

    An empty dangerous list yields the degenerate all-benign model with
    score 0. Exhaustive mode walks every cell; greedy mode runs coordinate
    ascent seeded from the threshold columns at both ends of the cutoff axis.
    """
    if len(dangerous) == 0:
        return _degenerate_result(dangerous)
    cutoffs = grid.cutoff_values(len(dangerous))
    thresholds = tuple(sorted(set(grid.thresholds), reverse=True))
    evaluator = _CellEvaluator(dangerous, train, cutoffs)
    if mode == "exhaustive":
        best, trace = _exhaustive(evaluator, cutoffs, thresholds, beta, want_trace)
    elif mode == "greedy":
        best, trace = _greedy(evaluator, cutoffs, thresholds, beta, want_trace)
    else:
        raise ValueError(f"unknown search mode {mode!r}")
    model = TunedModel(
        dangerous=dangerous,
        cutoff=best.cutoff,
        threshold=best.threshold,
        policy=dangerous.policy,
        weight=dangerous.weight,
        source=dangerous.source,
    )
    return TuneResult(model=model, train_f2=best.f2, grid_trace=trace)


def _exhaustive(evaluator, cutoffs, thresholds, beta, want_trace):
    per_threshold = [evaluator.counts_per_cutoff(t) for t in thresholds]
    best: GridCell | None = None
    trace: list[GridCell] = []
    # Canonical order (cutoff ascending, threshold descending) plus strict
    # improvement gives the tie-break: smaller cutoff, then larger threshold.
    for j, cutoff in enumerate(cutoffs):
        for t_idx, threshold in enumerate(thresholds):
            tp_arr, fp_arr = per_threshold[t_idx]
            tp, fp = int(tp_arr[j]), int(fp_arr[j])
            counts = ConfusionCounts(
                tp=tp, fp=fp, fn=evaluator.n_pos - tp, tn=evaluator.n_neg - fp
            )
            cell = GridCell(cutoff, threshold, counts, f_beta(counts, beta))
            if want_trace:
                trace.append(cell)
            if best is None or cell.f2 > best.f2:
                best = cell
    return best, tuple(trace) if want_trace else None


def _greedy(evaluator, cutoffs, thresholds, beta, want_trace):
    trace: list[GridCell] = []

    def scan_thresholds(cutoff_index: int) -> GridCell:
        best = None
        for threshold in thresholds:
            cell = evaluator.cell(cutoff_index, threshold, beta)
            if want_trace:
                trace.append(cell)
            if best is None or cell.f2 > best.f2:
                best = cell
        return best

    def scan_cutoffs(threshold: Fraction) -> GridCell:
        tp_arr, fp_arr = evaluator.counts_per_cutoff(threshold)
        best = None
        for j, cutoff in enumerate(cutoffs):
            tp, fp = int(tp_arr[j]), int(fp_arr[j])
            counts = ConfusionCounts(
                tp=tp, fp=fp, fn=evaluator.n_pos - tp, tn=evaluator.n_neg - fp
            )
            cell = GridCell(cutoff, threshold, counts, f_beta(counts, beta))
            if want_trace:
                trace.append(cell)
            if best is None or cell.f2 > best.f2:
                best = cell
        return best

    def ascend(start: GridCell) -> GridCell:
        current = start
        while True:
            by_cutoff = scan_cutoffs(current.threshold)
            moved = by_cutoff.f2 > current.f2
            if moved:
                current = by_cutoff
            by_threshold = scan_thresholds(cutoffs.index(current.cutoff))
            if by_threshold.f2 > current.f2:
                current = by_threshold
                moved = True
            if not moved:
                return current

    # Ascend from both ends of the cutoff axis; local maxima near one end are
    # often global near the other, and this stays a small subset of the grid.
    best = ascend(scan_thresholds(0))
    if len(cutoffs) > 1:
        other = ascend(scan_thresholds(len(cutoffs) - 1))
        if other.f2 > best.f2:
            best = other
    return best, tuple(trace) if want_trace else None


def search_weights(
    train: LabeledCorpus,
    policy: MinScorePolicy,
    grid: SearchGrid,
    mode: str = "exhaustive",
    beta=DEFAULT_BETA,
    want_trace: bool = False,
    trace_collector: list | None = None,
) -> TuneResult:
    """Score, rank, and tune once per weight; return the best overall result.

    Ties go to the earlier weight in the grid. When `trace_collector` is a
    list it receives one (weight, cells) pair per weight tried.
    """
    best: TuneResult | None = None
    for weight in grid.weights:
        table = score_frequency(train, weight)
        dangerous = rank(table, policy)
        result = find_best(
            dangerous, train, grid, mode=mode, beta=beta,
            want_trace=want_trace or trace_collector is not None,
        )
        if trace_collector is not None:
            trace_collector.append((weight, result.grid_trace))
        if best is None or result.train_f2 > best.train_f2:
            best = result
    if not want_trace and best is not None and best.grid_trace is not None:
        best = TuneResult(model=best.model, train_f2=best.train_f2, grid_trace=None)
    return best


def train_upper_bound(
    train: LabeledCorpus, policy: MinScorePolicy, grid: SearchGrid, beta=DEFAULT_BETA
) -> Fraction:
    """Best achievable training-set score: a ceiling indicator per dataset."""
    return search_weights(train, policy, grid, beta=beta).train_f2
