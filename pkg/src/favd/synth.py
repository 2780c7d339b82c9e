"""Synthetic corpora with planted dangerous words.

Names are underscore-joined samples from per-class vocabularies, so splitting
recovers the generating terms exactly and a tuner can be graded against known
ground truth. `vocab_overlap` controls how much filler vocabulary the two
classes share: 0 keeps them disjoint (easy to separate), 1 makes them
identical (no usable signal beyond the planted words). Raising the overlap
degrades achievable cross-validated scores.
"""

from __future__ import annotations

import random
import string
from dataclasses import dataclass
from pathlib import Path

from .corpus import LabeledCorpus, RawLists, clean
from .errors import DataError
from .splitter import split


@dataclass(frozen=True)
class SynthSpec:
    seed: int
    n_vulnerable: int
    n_benign: int
    planted_dangerous: frozenset[str]
    vocab_size: int
    terms_per_name: tuple[int, int] = (2, 4)
    signal_strength: float = 1.0
    vocab_overlap: float = 0.0
    camel_case: bool = False

    def __post_init__(self) -> None:
        if self.n_vulnerable < 1 or self.n_benign < 1:
            raise ValueError("name counts must be positive")
        if self.vocab_size < 1:
            raise ValueError("vocab_size must be positive")
        lo, hi = self.terms_per_name
        if not 1 <= lo <= hi:
            raise ValueError(f"bad terms_per_name range {self.terms_per_name}")
        if not 0 <= self.signal_strength <= 1:
            raise ValueError("signal_strength must lie in [0, 1]")
        if not 0 <= self.vocab_overlap <= 1:
            raise ValueError("vocab_overlap must lie in [0, 1]")
        if not self.planted_dangerous:
            raise ValueError("at least one planted dangerous term is required")
        for term in self.planted_dangerous:
            if split(term) != [term] or not term.islower():
                raise ValueError(
                    f"planted term {term!r} must be a single lowercase splitter-atomic word"
                )


def random_terms(rng: random.Random, count: int, exclude: frozenset[str] = frozenset()) -> list[str]:
    """Unique lowercase alphabetic words, 3 to 8 letters."""
    out: list[str] = []
    seen = set(exclude)
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > 1000 * count + 1000:
            raise DataError("could not generate enough unique vocabulary words")
        word = "".join(rng.choice(string.ascii_lowercase) for _ in range(rng.randint(3, 8)))
        if word not in seen:
            seen.add(word)
            out.append(word)
    return out


def _join(terms: list[str], camel: bool) -> str:
    if camel:
        return terms[0] + "".join(t.capitalize() for t in terms[1:])
    return "_".join(terms)


def generate(spec: SynthSpec) -> tuple[LabeledCorpus, frozenset[str]]:
    """Deterministic corpus for the spec's seed, plus the planted ground truth."""
    rng = random.Random(spec.seed)
    planted = sorted(spec.planted_dangerous)
    filler = random_terms(rng, spec.vocab_size, exclude=spec.planted_dangerous)
    shared_n = round(spec.vocab_overlap * spec.vocab_size)
    shared = filler[:shared_n]
    rest = filler[shared_n:]
    half = len(rest) // 2
    vuln_filler = shared + rest[:half]
    benign_pool = shared + rest[half:]
    vuln_pool = planted + vuln_filler
    lo, hi = spec.terms_per_name

    def draw_name(pool: list[str], force_planted: bool) -> str:
        length = rng.randint(lo, hi)
        if force_planted:
            anchor = rng.choice(planted)
            others = [w for w in pool if w != anchor]
            if len(others) < length - 1:
                raise DataError("vocabulary too small for requested name lengths")
            terms = [anchor] + rng.sample(others, length - 1)
            rng.shuffle(terms)
        else:
            if len(pool) < length:
                raise DataError("vocabulary too small for requested name lengths")
            terms = rng.sample(pool, length)
        return _join(terms, spec.camel_case)

    def draw_unique(count: int, pool: list[str], signal: bool) -> list[str]:
        names: list[str] = []
        seen: set[str] = set()
        tries = 0
        while len(names) < count:
            tries += 1
            if tries > 200 * count + 1000:
                raise DataError("vocabulary too small for requested name lengths")
            with_planted = signal and rng.random() < spec.signal_strength
            name = draw_name(vuln_pool if with_planted else pool, with_planted)
            if name not in seen:
                seen.add(name)
                names.append(name)
        return names

    vulnerable = draw_unique(spec.n_vulnerable, vuln_filler, signal=True)
    benign = draw_unique(spec.n_benign, benign_pool, signal=False)
    raw = RawLists(tuple(vulnerable), tuple(benign), source_label=f"synth(seed={spec.seed})")
    return clean(raw), frozenset(planted)


def write_corpus(corpus: LabeledCorpus, out_dir: str | Path) -> tuple[Path, Path]:
    """Write sorted vulnerable.txt and benign.txt list files."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    vpath, bpath = out / "vulnerable.txt", out / "benign.txt"
    vpath.write_text("".join(f"{n}\n" for n in sorted(corpus.vulnerable)), encoding="utf-8")
    bpath.write_text("".join(f"{n}\n" for n in sorted(corpus.benign)), encoding="utf-8")
    return vpath, bpath


def spec_from_dict(doc: dict) -> SynthSpec:
    """Build a SynthSpec from a JSON document.

    Accepts either an explicit `planted_dangerous` list or a `planted_count`
    to auto-generate that many terms from the seed.
    """
    try:
        seed = int(doc["seed"])
        planted = doc.get("planted_dangerous")
        if planted is None:
            count = int(doc.get("planted_count", 0))
            if count < 1:
                raise DataError("spec needs planted_dangerous or planted_count >= 1")
            planted = random_terms(random.Random(seed ^ 0x5EED), count)
        return SynthSpec(
            seed=seed,
            n_vulnerable=int(doc["n_vulnerable"]),
            n_benign=int(doc["n_benign"]),
            planted_dangerous=frozenset(planted),
            vocab_size=int(doc["vocab_size"]),
            terms_per_name=tuple(doc.get("terms_per_name", (2, 4))),
            signal_strength=float(doc.get("signal_strength", 1.0)),
            vocab_overlap=float(doc.get("vocab_overlap", 0.0)),
            camel_case=bool(doc.get("camel_case", False)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise DataError(f"bad synth spec: {exc}") from exc
