"""Command-line surface: split, train, eval, predict, roc, baseline, harvest, synth.

Exit codes: 0 success, 1 usage error, 2 data error, 3 infeasible protocol.
All reports embed the tool version, the effective configuration, and SHA-256
digests of the inputs; given identical inputs and flags the written files are
byte-identical across runs.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .corpus import (
    LabeledCorpus,
    clean,
    corpus_stats,
    load_csv,
    load_lists,
    make_kfold,
    make_leave_one_out,
)
from .errors import DataError, FavdError, InfeasibleError
from .harvest import harvest
from .metrics import (
    all_vulnerable_f2,
    f_beta,
    precision,
    recall,
    random_baseline_f2,
    roc,
)
from .model_io import model_document, load_model, save_model, sha256_file
from .predictor import classify, classify_corpus
from .ranking import (
    MinScorePolicy,
    Weight,
    default_weight_grid,
    load_external_scores,
    rank,
    score_frequency,
    write_word_list_csv,
)
from .rational import format_rate
from .splitter import split
from .synth import generate, spec_from_dict, write_corpus
from .tuner import SearchGrid, find_best, search_weights, threshold_values


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _write_json(doc: dict, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n", encoding="utf-8")


def _open_out(out: str | None):
    """stdout for None or '-', else the file (parent dirs created)."""
    if out in (None, "-"):
        return sys.stdout
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    return path.open("w", newline="", encoding="utf-8")


def _parse_weights(text: str | None):
    if not text:
        return default_weight_grid()
    return tuple(Weight.parse(part) for part in text.split(",") if part.strip())


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    p = Path(path)
    if not p.exists():
        raise DataError(f"config file not found: {p}")
    try:
        doc = json.loads(p.read_text(encoding="utf-8"))
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise DataError(f"malformed config file {p}: {exc}") from exc
    if not isinstance(doc, dict):
        raise DataError(f"config file {p} must hold a JSON object")
    return doc


def _resolve(args, config: dict, key: str, default):
    value = getattr(args, key, None)
    if value is not None:
        return value
    return config.get(key, default)


def _corpus_inputs(args, config) -> tuple[LabeledCorpus, dict]:
    """Load and clean the corpus named by --csv or --vuln/--benign."""
    csv_path = _resolve(args, config, "csv", None)
    vuln = _resolve(args, config, "vuln", None)
    benign = _resolve(args, config, "benign", None)
    label = _resolve(args, config, "label", None)
    if csv_path:
        raw = load_csv(csv_path, source_label=label)
        digests = {"csv": {"path": str(csv_path), "sha256": sha256_file(csv_path)}}
    elif vuln and benign:
        raw = load_lists(vuln, benign, source_label=label)
        digests = {
            "vulnerable": {"path": str(vuln), "sha256": sha256_file(vuln)},
            "benign": {"path": str(benign), "sha256": sha256_file(benign)},
        }
    else:
        raise DataError("provide --csv FILE or both --vuln FILE and --benign FILE")
    return clean(raw), digests


def _parse_step(value) -> Fraction:
    try:
        return Fraction(str(value))
    except (ValueError, ZeroDivisionError) as exc:
        raise DataError(f"cannot parse number {value!r}") from exc


def _grid_options(args, config) -> tuple[SearchGrid, MinScorePolicy, Fraction, str, dict]:
    policy = MinScorePolicy.parse(_resolve(args, config, "policy", "zero"))
    weights = _parse_weights(_resolve(args, config, "weights", None))
    cutoff_step = int(_resolve(args, config, "cutoff_step", 100))
    threshold_step = _resolve(args, config, "threshold_step", "0.05")
    beta = _parse_step(_resolve(args, config, "beta", "2"))
    mode = _resolve(args, config, "mode", "exhaustive")
    try:
        thresholds = threshold_values(_parse_step(threshold_step))
        grid = SearchGrid(cutoff_step=cutoff_step, thresholds=thresholds, weights=weights)
    except ValueError as exc:
        raise DataError(str(exc)) from exc
    options = {
        "policy": policy.tag(),
        "weights": [w.tag() for w in weights],
        "cutoff_step": cutoff_step,
        "threshold_step": str(threshold_step),
        "beta": float(beta),
        "mode": mode,
    }
    return grid, policy, beta, mode, options


def _fold_metrics(counts, beta) -> dict:
    return {
        "tp": counts.tp,
        "fp": counts.fp,
        "fn": counts.fn,
        "tn": counts.tn,
        "precision": format_rate(precision(counts)),
        "recall": format_rate(recall(counts)),
        "f1": format_rate(f_beta(counts, 1)),
        "f2": format_rate(f_beta(counts, 2)),
        "f_beta": format_rate(f_beta(counts, beta)),
    }


def _write_trace(path: Path, traces) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["weight", "cutoff", "threshold", "tp", "fp", "fn", "tn", "f2"])
        for weight, cells in traces:
            for cell in cells or ():
                writer.writerow([
                    weight.tag() if weight else "",
                    cell.cutoff,
                    str(float(cell.threshold)),
                    cell.counts.tp,
                    cell.counts.fp,
                    cell.counts.fn,
                    cell.counts.tn,
                    f"{float(cell.f2):.6f}",
                ])


def cmd_split(args, config) -> int:
    for term in split(args.name, fold_case=bool(args.fold_case)):
        print(term)
    return 0


def cmd_train(args, config) -> int:
    corpus, digests = _corpus_inputs(args, config)
    grid, policy, beta, mode, options = _grid_options(args, config)
    scores_path = _resolve(args, config, "scores", None)
    traces: list | None = [] if args.trace else None
    if scores_path:
        table = load_external_scores(scores_path)
        dangerous = rank(table, policy)
        result = find_best(dangerous, corpus, grid, mode=mode, beta=beta,
                           want_trace=traces is not None)
        if traces is not None:
            traces.append((None, result.grid_trace))
        digests["scores"] = {"path": str(scores_path), "sha256": sha256_file(scores_path)}
        options["scorer"] = "external"
    else:
        result = search_weights(corpus, policy, grid, mode=mode, beta=beta,
                                trace_collector=traces)
        options["scorer"] = "frequency"
    warnings = []
    if len(result.model.dangerous) == 0:
        warnings.append("vocabulary starvation: dangerous word list is empty; model predicts benign for everything")
    doc = model_document(result.model, result.train_f2, inputs=digests, config=options,
                         warnings=warnings)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    save_model(doc, out)
    if args.words_csv:
        words_path = Path(args.words_csv)
        words_path.parent.mkdir(parents=True, exist_ok=True)
        write_word_list_csv(result.model.dangerous, words_path)
    if args.trace:
        _write_trace(Path(args.trace), traces)
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    print(f"model written to {out} (train F2 {format_rate(result.train_f2)}, "
          f"{len(result.model.dangerous)} dangerous words, cutoff {result.model.cutoff}, "
          f"threshold {float(result.model.threshold)})")
    return 0


def _eval_fold(fold_id, train, test, policy, grid, mode, beta, external_table):
    if external_table is not None:
        dangerous = rank(external_table, policy)
        result = find_best(dangerous, train, grid, mode=mode, beta=beta)
    else:
        result = search_weights(train, policy, grid, mode=mode, beta=beta)
    model = result.model
    _, counts = classify_corpus(test, model)
    v, b = len(test.vulnerable), len(test.benign)
    row = {
        "fold": fold_id,
        "train": {"vulnerable": len(train.vulnerable), "benign": len(train.benign)},
        "test": {"vulnerable": v, "benign": b},
        "model": {
            "weight": model.weight.tag() if model.weight else None,
            "source": model.source,
            "cutoff": model.cutoff,
            "threshold": float(model.threshold),
            "dangerous_count": len(model.dangerous),
            "train_f2": format_rate(result.train_f2),
        },
        "metrics": _fold_metrics(counts, beta),
        "baselines": {
            "all_vulnerable_f2": format_rate(all_vulnerable_f2(v, b)),
            "random_f2": format_rate(random_baseline_f2(Fraction(v, v + b))),
        },
    }
    exact = {
        "f2": f_beta(counts, 2),
        "f_beta": f_beta(counts, beta),
        "precision": precision(counts),
        "recall": recall(counts),
        "all_vulnerable_f2": all_vulnerable_f2(v, b),
        "random_f2": random_baseline_f2(Fraction(v, v + b)),
    }
    return row, exact


def cmd_eval(args, config) -> int:
    grid, policy, beta, mode, options = _grid_options(args, config)
    loo_dirs = _resolve(args, config, "loo", None)
    scores_path = _resolve(args, config, "scores", None)
    external_table = load_external_scores(scores_path) if scores_path else None
    options["scorer"] = "external" if external_table is not None else "frequency"
    if loo_dirs:
        corpora = []
        digests = {}
        for d in loo_dirs:
            d = Path(d)
            raw = load_lists(d / "vulnerable.txt", d / "benign.txt", source_label=d.name)
            corpora.append(clean(raw))
            digests[d.name] = {
                "vulnerable": {"path": str(d / "vulnerable.txt"),
                               "sha256": sha256_file(d / "vulnerable.txt")},
                "benign": {"path": str(d / "benign.txt"),
                           "sha256": sha256_file(d / "benign.txt")},
            }
        plan = make_leave_one_out(corpora)
        protocol = {"kind": "leave_one_out", "projects": [c.source_label for c in corpora]}
        fold_ids = [test.source_label for _, test in plan.folds]
    else:
        corpus, digests = _corpus_inputs(args, config)
        k = int(_resolve(args, config, "kfold", 5))
        seed = int(_resolve(args, config, "seed", 0))
        plan = make_kfold(corpus, k, seed)
        protocol = {"kind": "kfold", "k": k, "seed": seed}
        fold_ids = [f"{i + 1}/{k}" for i in range(k)]

    folds = []
    sums: dict[str, Fraction] = {}
    for fold_id, (train, test) in zip(fold_ids, plan.folds):
        row, exact = _eval_fold(fold_id, train, test, policy, grid, mode, beta, external_table)
        folds.append(row)
        for key, value in exact.items():
            sums[key] = sums.get(key, Fraction(0)) + value
    n = len(folds)
    means = {key: format_rate(total / n) for key, total in sums.items()}
    report = {
        "schema_version": 1,
        "tool_version": __version__,
        "config": options,
        "inputs": digests,
        "protocol": protocol,
        "folds": folds,
        "means": means,
    }
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    _write_json(report, out_dir / "eval_report.json")
    with (out_dir / "folds.csv").open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([
            "fold", "train_vuln", "train_benign", "test_vuln", "test_benign",
            "weight", "cutoff", "threshold", "tp", "fp", "fn", "tn",
            "precision", "recall", "f1", "f2", "all_vulnerable_f2", "random_f2",
        ])
        for row in folds:
            writer.writerow([
                row["fold"],
                row["train"]["vulnerable"], row["train"]["benign"],
                row["test"]["vulnerable"], row["test"]["benign"],
                row["model"]["weight"] or row["model"]["source"] or "",
                row["model"]["cutoff"], row["model"]["threshold"],
                row["metrics"]["tp"], row["metrics"]["fp"],
                row["metrics"]["fn"], row["metrics"]["tn"],
                row["metrics"]["precision"], row["metrics"]["recall"],
                row["metrics"]["f1"], row["metrics"]["f2"],
                row["baselines"]["all_vulnerable_f2"], row["baselines"]["random_f2"],
            ])
    print(f"evaluated {n} folds; mean F2 {means['f2']} "
          f"(all-vulnerable {means['all_vulnerable_f2']}, random {means['random_f2']}); "
          f"reports in {out_dir}")
    return 0


def _read_names(path: Path) -> list[str]:
    if not path.exists():
        raise DataError(f"names file not found: {path}")
    text = path.read_text(encoding="utf-8")
    first = text.splitlines()[0].strip().lower() if text.strip() else ""
    if first.startswith("name,"):
        names = []
        with path.open(newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            next(reader)
            for row in reader:
                if row and row[0].strip():
                    names.append(row[0].strip())
        return names
    return [line.rstrip() for line in text.splitlines() if line.rstrip()]


def cmd_predict(args, config) -> int:
    model = load_model(args.model)
    names = _read_names(Path(args.names))
    rows = []
    for name in names:
        pred = classify(name, model)
        rows.append([
            pred.identifier,
            pred.label,
            f"{float(pred.percentage):.6f}",
            ";".join(sorted(pred.matched_terms)),
        ])
    out = _open_out(args.out)
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["name", "label", "percentage", "matched_terms"])
        writer.writerows(rows)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def cmd_roc(args, config) -> int:
    corpus, _digests = _corpus_inputs(args, config)
    threshold_step = _resolve(args, config, "threshold_step", "0.05")
    thresholds = threshold_values(_parse_step(threshold_step))
    if args.model:
        model = load_model(args.model)
        dangerous = model.dangerous
    else:
        weight_text = _resolve(args, config, "weight", None)
        if not weight_text:
            raise DataError("provide --model FILE or --weight PLUS-MINUS")
        policy = MinScorePolicy.parse(_resolve(args, config, "policy", "zero"))
        dangerous = rank(score_frequency(corpus, Weight.parse(weight_text)), policy)
    if len(dangerous) == 0:
        raise DataError("dangerous word list is empty; cannot sweep cutoffs")
    if args.cutoffs:
        cutoffs = [int(c) for c in args.cutoffs.split(",") if c.strip()]
    else:
        step = int(_resolve(args, config, "cutoff_step", 100))
        cutoffs = list(SearchGrid(cutoff_step=step).cutoff_values(len(dangerous)))
    include_zero = bool(args.include_zero_endpoint)
    out = _open_out(args.out)
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["cutoff", "threshold", "tpr", "fpr"])
        for cutoff in cutoffs:
            curve = roc(dangerous, cutoff, corpus, thresholds=thresholds,
                        include_zero_endpoint=include_zero)
            for point in curve.points:
                writer.writerow([
                    cutoff,
                    str(float(point.threshold)),
                    f"{float(point.tpr):.6f}",
                    f"{float(point.fpr):.6f}",
                ])
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def cmd_baseline(args, config) -> int:
    if args.counts:
        v, b = args.counts
        if v < 0 or b < 0 or v + b == 0:
            raise DataError("counts must be non-negative and not both zero")
        inputs = {}
    else:
        corpus, inputs = _corpus_inputs(args, config)
        v, b, _f = corpus_stats(corpus)
    fraction = Fraction(v, v + b)
    report = {
        "schema_version": 1,
        "tool_version": __version__,
        "config": {"from_counts": bool(args.counts)},
        "inputs": inputs,
        "counts": {"vulnerable": v, "benign": b},
        "vulnerable_fraction": format_rate(fraction, 6),
        "all_vulnerable_f2": format_rate(all_vulnerable_f2(v, b)),
        "random_f2": format_rate(random_baseline_f2(fraction)),
    }
    if args.out:
        _write_json(report, Path(args.out))
    print(json.dumps(report, sort_keys=True, indent=2))
    return 0


def cmd_harvest(args, config) -> int:
    names, warnings = harvest([Path(p) for p in args.paths])
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    out = _open_out(args.out)
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["name", "file", "line"])
        for item in names:
            writer.writerow([item.name, item.file, item.line])
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def cmd_synth(args, config) -> int:
    spec_path = Path(args.spec)
    if not spec_path.exists():
        raise DataError(f"spec file not found: {spec_path}")
    try:
        doc = json.loads(spec_path.read_text(encoding="utf-8"))
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise DataError(f"malformed spec file {spec_path}: {exc}") from exc
    spec = spec_from_dict(doc)
    corpus, planted = generate(spec)
    out_dir = Path(args.out)
    vpath, bpath = write_corpus(corpus, out_dir)
    truth = {
        "schema_version": 1,
        "tool_version": __version__,
        "spec": {
            "seed": spec.seed,
            "n_vulnerable": spec.n_vulnerable,
            "n_benign": spec.n_benign,
            "vocab_size": spec.vocab_size,
            "terms_per_name": list(spec.terms_per_name),
            "signal_strength": spec.signal_strength,
            "vocab_overlap": spec.vocab_overlap,
            "camel_case": spec.camel_case,
        },
        "planted_dangerous": sorted(planted),
        "counts": {"vulnerable": len(corpus.vulnerable), "benign": len(corpus.benign)},
    }
    _write_json(truth, out_dir / "ground_truth.json")
    print(f"wrote {vpath}, {bpath}, and ground_truth.json "
          f"({len(corpus.vulnerable)} vulnerable, {len(corpus.benign)} benign)")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="favd", description=__doc__)
    parser.add_argument("--version", action="version", version=f"favd {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_corpus_flags(p):
        p.add_argument("--vuln", help="vulnerable name list (one per line)")
        p.add_argument("--benign", help="benign name list (one per line)")
        p.add_argument("--csv", help="name,label CSV instead of two list files")
        p.add_argument("--label", help="corpus label for reports")

    def add_grid_flags(p):
        p.add_argument("--policy", help="min-score policy: none|zero|NUMBER (default zero)")
        p.add_argument("--weights", help="comma list of PLUS-MINUS pairs (default grid)")
        p.add_argument("--cutoff-step", dest="cutoff_step", type=int, help="cutoff grid step (default 100)")
        p.add_argument("--threshold-step", dest="threshold_step", help="threshold grid step (default 0.05)")
        p.add_argument("--beta", help="F-beta objective for tuning (default 2)")
        p.add_argument("--mode", choices=["exhaustive", "greedy"], help="search mode (default exhaustive)")
        p.add_argument("--config", help="JSON file of option defaults; flags win")

    p = sub.add_parser("split", help="print an identifier's terms, one per line")
    p.add_argument("name")
    p.add_argument("--fold-case", dest="fold_case", action="store_true", default=None)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("train", help="tune a model on a labeled corpus and save it as JSON")
    add_corpus_flags(p)
    add_grid_flags(p)
    p.add_argument("--scores", help="external term,score CSV; replaces frequency scoring")
    p.add_argument("--trace", help="write the full weight/cutoff/threshold trace CSV here")
    p.add_argument("--words-csv", dest="words_csv",
                   help="also export the winning dangerous-word list as rank,term,score CSV")
    p.add_argument("--out", required=True, help="output model JSON path")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval", help="cross-validated evaluation with per-fold reports")
    add_corpus_flags(p)
    add_grid_flags(p)
    p.add_argument("--kfold", type=int, help="number of stratified folds (default 5)")
    p.add_argument("--seed", type=int, help="shuffle seed (default 0)")
    p.add_argument("--loo", nargs="+", metavar="DIR",
                   help="leave-one-out over project dirs holding vulnerable.txt/benign.txt")
    p.add_argument("--scores", help="external term,score CSV; replaces frequency scoring")
    p.add_argument("--out-dir", dest="out_dir", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("predict", help="classify names with a saved model")
    p.add_argument("--model", required=True)
    p.add_argument("--names", required=True, help="plain list or harvest CSV")
    p.add_argument("--out", help="output CSV (default stdout)")
    p.add_argument("--config", help="JSON file of option defaults; flags win")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("roc", help="TPR/FPR sweep over thresholds for one or more cutoffs")
    add_corpus_flags(p)
    p.add_argument("--model", help="use a saved model's dangerous word list")
    p.add_argument("--weight", help="PLUS-MINUS pair to rank the corpus itself")
    p.add_argument("--policy", help="min-score policy when ranking (default zero)")
    p.add_argument("--cutoffs", help="comma list of cutoffs (default: step grid)")
    p.add_argument("--cutoff-step", dest="cutoff_step", type=int)
    p.add_argument("--threshold-step", dest="threshold_step")
    p.add_argument("--include-zero-endpoint", dest="include_zero_endpoint",
                   action="store_true", default=None,
                   help="append the degenerate threshold-0 point (1,1)")
    p.add_argument("--out", help="output CSV (default stdout)")
    p.add_argument("--config", help="JSON file of option defaults; flags win")
    p.set_defaults(func=cmd_roc)

    p = sub.add_parser("baseline", help="all-vulnerable and random baseline report")
    add_corpus_flags(p)
    p.add_argument("--counts", nargs=2, type=int, metavar=("VULN", "BENIGN"))
    p.add_argument("--out", help="also write the JSON report here")
    p.add_argument("--config", help="JSON file of option defaults; flags win")
    p.set_defaults(func=cmd_baseline)

    p = sub.add_parser("harvest", help="extract function-definition names from C/C++ files")
    p.add_argument("paths", nargs="+")
    p.add_argument("--out", help="output CSV (default stdout)")
    p.add_argument("--config", help="JSON file of option defaults; flags win")
    p.set_defaults(func=cmd_harvest)

    p = sub.add_parser("synth", help="generate a synthetic corpus with planted ground truth")
    p.add_argument("--spec", required=True, help="synth spec JSON")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--config", help="JSON file of option defaults; flags win")
    p.set_defaults(func=cmd_synth)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    try:
        config = _load_config(getattr(args, "config", None))
        return args.func(args, config)
    except DataError as exc:
        print(f"favd: data error: {exc}", file=sys.stderr)
        return 2
    except InfeasibleError as exc:
        print(f"favd: infeasible protocol: {exc}", file=sys.stderr)
        return 3
    except FavdError as exc:
        print(f"favd: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
