"""Tuned-model persistence.

The JSON document keeps the full dangerous-word list, so a model file is its
own explanation: the ranked words are the reason behind every prediction.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path

from . import __version__
from .errors import DataError
from .predictor import TunedModel
from .ranking import DangerousWordList, MinScorePolicy, Weight
from .rational import exact_fraction

SCHEMA_VERSION = 1


def sha256_file(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _score_out(score) -> int | float:
    return score if isinstance(score, int) else float(score)


def _policy_out(policy: MinScorePolicy) -> dict:
    if policy.kind == "all":
        return {"kind": "all"}
    return {"kind": "at_least", "threshold": float(policy.threshold)}


def _policy_in(doc: dict) -> MinScorePolicy:
    kind = doc.get("kind")
    if kind == "all":
        return MinScorePolicy.all_terms()
    if kind == "at_least":
        return MinScorePolicy.at_least(exact_fraction(doc["threshold"]))
    raise DataError(f"unknown policy kind {kind!r} in model file")


def model_document(
    model: TunedModel,
    train_f2: Fraction,
    inputs: dict | None = None,
    seed: int | None = None,
    config: dict | None = None,
    warnings: list[str] | None = None,
) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "policy": _policy_out(model.policy),
        "weight": {"plus": model.weight.plus, "minus": model.weight.minus} if model.weight else None,
        "source": model.source,
        "cutoff": model.cutoff,
        "threshold": float(model.threshold),
        "dangerous": [{"term": t, "score": _score_out(s)} for t, s in model.dangerous.words],
        "train_f2": float(train_f2),
        "warnings": warnings or [],
        "provenance": {
            "tool_version": __version__,
            "inputs": inputs or {},
            "seed": seed,
            "config": config or {},
        },
    }


def save_model(document: dict, path: str | Path) -> None:
    Path(path).write_text(json.dumps(document, sort_keys=True, indent=2) + "\n", encoding="utf-8")


def load_model(path: str | Path) -> TunedModel:
    path = Path(path)
    if not path.exists():
        raise DataError(f"model file not found: {path}")
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise DataError(f"malformed model file {path}: {exc}") from exc
    try:
        if doc.get("schema_version") != SCHEMA_VERSION:
            raise DataError(
                f"unsupported model schema {doc.get('schema_version')!r} in {path}"
            )
        policy = _policy_in(doc["policy"])
        weight = Weight(**doc["weight"]) if doc.get("weight") else None
        words = tuple(
            (row["term"], row["score"] if isinstance(row["score"], int) else exact_fraction(row["score"]))
            for row in doc["dangerous"]
        )
        dangerous = DangerousWordList(
            words=words, policy=policy, weight=weight, source=doc.get("source")
        )
        return TunedModel(
            dangerous=dangerous,
            cutoff=int(doc["cutoff"]),
            threshold=exact_fraction(doc["threshold"]),
            policy=policy,
            weight=weight,
            source=doc.get("source"),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise DataError(f"malformed model file {path}: {exc}") from exc
