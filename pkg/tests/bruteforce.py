"""Brute-force oracle for the tuning pipeline, written from the contract.

Everything here is computed with plain loops, dicts, and Fractions, on
purpose sharing no code with favd.ranking/favd.tuner. Only the identifier
splitter is shared, since both sides are defined over the same term sets.
"""

from __future__ import annotations

from fractions import Fraction

from favd.splitter import split


def oracle_f2(tp: int, fp: int, fn: int) -> Fraction:
    if tp == 0:
        return Fraction(0)
    return Fraction(5 * tp, 5 * tp + 4 * fn + fp)


def oracle_rank(vuln, benign, weight, keep_all: bool) -> list[str]:
    scores: dict[str, int] = {}
    vuln_count: dict[str, int] = {}
    for name in vuln:
        for term in set(split(name)):
            scores[term] = scores.get(term, 0) + weight.plus
            vuln_count[term] = vuln_count.get(term, 0) + 1
    for name in benign:
        for term in set(split(name)):
            scores[term] = scores.get(term, 0) - weight.minus
    items = [(t, s) for t, s in scores.items() if keep_all or s >= 0]
    items.sort(key=lambda x: (-x[1], -vuln_count.get(x[0], 0), x[0]))
    return [t for t, _ in items]


def oracle_cutoffs(length: int, step: int) -> list[int]:
    values = list(range(1, length + 1, step))
    if values and values[-1] != length:
        values.append(length)
    return values


def oracle_rank_external(scores: dict[str, Fraction], min_score) -> list[str]:
    items = [(t, s) for t, s in scores.items() if min_score is None or s >= min_score]
    items.sort(key=lambda x: (-x[1], x[0]))
    return [t for t, _ in items]


def oracle_tune(corpus, words: list[str], cutoff_step, thresholds):
    """Cutoff x threshold double loop for a fixed ranked word list."""
    vuln, benign = sorted(corpus.vulnerable), sorted(corpus.benign)
    term_sets = {n: set(split(n)) for n in vuln + benign}
    thresholds = sorted(thresholds, reverse=True)
    best = None
    cells: dict[tuple, Fraction] = {}
    for cutoff in oracle_cutoffs(len(words), cutoff_step):
        top = set(words[:cutoff])
        for threshold in thresholds:
            tp = fp = fn = 0
            for name in vuln:
                terms = term_sets[name]
                pct = Fraction(len(terms & top), len(terms)) if terms else Fraction(0)
                if pct > threshold:
                    tp += 1
                else:
                    fn += 1
            for name in benign:
                terms = term_sets[name]
                pct = Fraction(len(terms & top), len(terms)) if terms else Fraction(0)
                if pct > threshold:
                    fp += 1
            f2 = oracle_f2(tp, fp, fn)
            cells[(cutoff, threshold)] = f2
            if best is None or f2 > best[0]:
                best = (f2, cutoff, threshold)
    return best, cells


def oracle_sweep(corpus, weights, cutoff_step, thresholds, keep_all=False):
    """Triple loop over weight x cutoff x threshold, recounting from scratch.

    Returns (best, cells) where best is (f2, weight_index, cutoff, threshold)
    under the tie-break (higher f2, earlier weight, smaller cutoff, larger
    threshold) and cells maps (weight_tag, cutoff, threshold) to f2.
    """
    vuln, benign = sorted(corpus.vulnerable), sorted(corpus.benign)
    term_sets = {n: set(split(n)) for n in vuln + benign}
    thresholds = sorted(thresholds, reverse=True)
    best = None
    cells: dict[tuple, Fraction] = {}
    for w_index, weight in enumerate(weights):
        words = oracle_rank(vuln, benign, weight, keep_all)
        if not words:
            if best is None:
                best = (Fraction(0), w_index, 0, Fraction(1))
            continue
        for cutoff in oracle_cutoffs(len(words), cutoff_step):
            top = set(words[:cutoff])
            for threshold in thresholds:
                tp = fp = fn = 0
                for name in vuln:
                    terms = term_sets[name]
                    pct = Fraction(len(terms & top), len(terms)) if terms else Fraction(0)
                    if pct > threshold:
                        tp += 1
                    else:
                        fn += 1
                for name in benign:
                    terms = term_sets[name]
                    pct = Fraction(len(terms & top), len(terms)) if terms else Fraction(0)
                    if pct > threshold:
                        fp += 1
                f2 = oracle_f2(tp, fp, fn)
                cells[(weight.tag(), cutoff, threshold)] = f2
                if best is None or f2 > best[0]:
                    best = (f2, w_index, cutoff, threshold)
    return best, cells
