from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from favd.corpus import (
    LabeledCorpus,
    RawLists,
    as_raw,
    clean,
    corpus_stats,
    load_csv,
    load_lists,
    make_kfold,
    make_leave_one_out,
    overlap_names,
    vulnerable_fraction,
)
from favd.errors import DataError, InfeasibleError


class TestLoadLists:
    def test_reads_lines_in_file_order(self, tmp_path):
        (tmp_path / "v.txt").write_text("a\nb\n")
        (tmp_path / "b.txt").write_text("c\n")
        raw = load_lists(tmp_path / "v.txt", tmp_path / "b.txt")
        assert raw.vulnerable == ("a", "b")
        assert raw.benign == ("c",)

    def test_blank_lines_dropped(self, tmp_path):
        (tmp_path / "v.txt").write_text("a\n\nb\n")
        (tmp_path / "b.txt").write_text("\n\n")
        raw = load_lists(tmp_path / "v.txt", tmp_path / "b.txt")
        assert raw.vulnerable == ("a", "b")
        assert raw.benign == ()

    def test_crlf_and_trailing_whitespace(self, tmp_path):
        (tmp_path / "v.txt").write_bytes(b"a \r\nb\t\r\n")
        (tmp_path / "b.txt").write_bytes(b"c\r\n")
        raw = load_lists(tmp_path / "v.txt", tmp_path / "b.txt")
        assert raw.vulnerable == ("a", "b")

    def test_missing_file_mentions_path(self, tmp_path):
        (tmp_path / "v.txt").write_text("a\n")
        with pytest.raises(DataError, match="nope.txt"):
            load_lists(tmp_path / "v.txt", tmp_path / "nope.txt")

    def test_bad_encoding_mentions_path(self, tmp_path):
        (tmp_path / "v.txt").write_bytes(b"\xff\xfe\x00bad")
        (tmp_path / "b.txt").write_text("c\n")
        with pytest.raises(DataError, match="v.txt"):
            load_lists(tmp_path / "v.txt", tmp_path / "b.txt")


class TestLoadCsv:
    def test_two_column_corpus(self, tmp_path):
        p = tmp_path / "c.csv"
        p.write_text("name,label\nread_file,vulnerable\nlog_msg,benign\n")
        raw = load_csv(p)
        assert raw.vulnerable == ("read_file",)
        assert raw.benign == ("log_msg",)

    def test_header_required(self, tmp_path):
        p = tmp_path / "c.csv"
        p.write_text("read_file,vulnerable\n")
        with pytest.raises(DataError, match="header"):
            load_csv(p)

    def test_unknown_label_rejected(self, tmp_path):
        p = tmp_path / "c.csv"
        p.write_text("name,label\nread_file,dangerous\n")
        with pytest.raises(DataError, match="dangerous"):
            load_csv(p)


class TestClean:
    def test_dedupe_and_overlap_to_vulnerable(self):
        out = clean(RawLists(("f", "f", "g"), ("g", "h")))
        assert out.vulnerable == {"f", "g"}
        assert out.benign == {"h"}

    def test_total_overlap_empties_benign(self):
        out = clean(RawLists(("x",), ("x",)))
        assert out.vulnerable == {"x"}
        assert out.benign == frozenset()

    def test_both_empty_is_an_error(self):
        with pytest.raises(DataError):
            clean(RawLists((), ()))

    def test_libtiff_shaped_overlap_resolution(self):
        # 75 vulnerable and 522 benign survivors with 8 names moved over.
        shared = [f"shared_{i}" for i in range(8)]
        vuln = [f"vuln_{i}" for i in range(67)] + shared
        benign = [f"benign_{i}" for i in range(522)] + shared
        raw = RawLists(tuple(vuln), tuple(benign))
        assert overlap_names(raw) == set(shared)
        out = clean(raw)
        assert len(out.vulnerable) == 75
        assert len(out.benign) == 522

    @given(
        st.lists(st.sampled_from("abcdefgh"), max_size=12),
        st.lists(st.sampled_from("abcdefgh"), min_size=1, max_size=12),
    )
    def test_clean_is_idempotent_and_disjoint(self, vuln, benign):
        raw = RawLists(tuple(vuln), tuple(benign))
        once = clean(raw)
        assert not once.vulnerable & once.benign
        twice = clean(as_raw(once))
        assert (twice.vulnerable, twice.benign) == (once.vulnerable, once.benign)


def _numbered_corpus(n_vuln: int, n_benign: int) -> LabeledCorpus:
    return LabeledCorpus(
        vulnerable=frozenset(f"v{i}" for i in range(n_vuln)),
        benign=frozenset(f"b{i}" for i in range(n_benign)),
        source_label="numbered",
    )


class TestKfold:
    def test_exact_stratification(self):
        plan = make_kfold(_numbered_corpus(10, 90), k=5, seed=1)
        for _, test in plan.folds:
            assert len(test.vulnerable) == 2
            assert len(test.benign) == 18

    def test_same_seed_reproduces_plan(self):
        corpus = _numbered_corpus(13, 40)
        a = make_kfold(corpus, 4, seed=9)
        b = make_kfold(corpus, 4, seed=9)
        assert a == b

    def test_different_seed_changes_plan(self):
        corpus = _numbered_corpus(13, 40)
        assert make_kfold(corpus, 4, seed=1) != make_kfold(corpus, 4, seed=2)

    def test_folds_partition_the_corpus(self):
        corpus = _numbered_corpus(13, 41)
        plan = make_kfold(corpus, 4, seed=3)
        seen_v, seen_b = set(), set()
        for train, test in plan.folds:
            assert train.vulnerable | test.vulnerable == corpus.vulnerable
            assert train.benign | test.benign == corpus.benign
            assert not train.vulnerable & test.vulnerable
            assert not seen_v & test.vulnerable
            seen_v |= test.vulnerable
            seen_b |= test.benign
        assert seen_v == corpus.vulnerable
        assert seen_b == corpus.benign

    def test_fold_sizes_differ_by_at_most_one(self):
        plan = make_kfold(_numbered_corpus(13, 41), k=4, seed=3)
        v_sizes = {len(t.vulnerable) for _, t in plan.folds}
        b_sizes = {len(t.benign) for _, t in plan.folds}
        assert max(v_sizes) - min(v_sizes) <= 1
        assert max(b_sizes) - min(b_sizes) <= 1

    def test_asterisk_sized_fold_means(self):
        plan = make_kfold(_numbered_corpus(49, 10102), k=5, seed=0)
        v_counts = [len(t.vulnerable) for _, t in plan.folds]
        b_counts = [len(t.benign) for _, t in plan.folds]
        assert sum(v_counts) / 5 == pytest.approx(9.8)
        assert sum(b_counts) / 5 == pytest.approx(2020.4)

    def test_too_few_names_is_infeasible(self):
        with pytest.raises(InfeasibleError):
            make_kfold(_numbered_corpus(3, 90), k=5, seed=0)
        with pytest.raises(InfeasibleError):
            make_kfold(_numbered_corpus(10, 10), k=1, seed=0)


class TestLeaveOneOut:
    def _corpora(self):
        a = clean(RawLists(("n", "a1"), ("a2",), "A"))
        b = clean(RawLists(("b1",), ("n", "b2"), "B"))
        c = clean(RawLists(("c1",), ("c2",), "C"))
        return a, b, c

    def test_one_fold_per_corpus(self):
        a, b, c = self._corpora()
        plan = make_leave_one_out([a, b, c])
        assert len(plan.folds) == 3
        assert [test.source_label for _, test in plan.folds] == ["A", "B", "C"]

    def test_train_is_cleaned_union_of_the_rest(self):
        a, b, c = self._corpora()
        plan = make_leave_one_out([a, b, c])
        # n is vulnerable in A and benign in B; the union rule keeps it
        # vulnerable when both sides are in training.
        train_for_c = plan.folds[2][0]
        assert "n" in train_for_c.vulnerable
        assert "n" not in train_for_c.benign
        # With A held out, n is only known benign (from B).
        train_for_a = plan.folds[0][0]
        assert "n" in train_for_a.benign

    def test_duplicate_labels_rejected(self):
        a, b, _ = self._corpora()
        with pytest.raises(DataError):
            make_leave_one_out([a, b, clean(RawLists(("z",), ("y",), "A"))])

    def test_needs_two_corpora(self):
        a, _, _ = self._corpora()
        with pytest.raises(InfeasibleError):
            make_leave_one_out([a])


class TestStats:
    def test_small_corpus(self):
        stats = corpus_stats(_numbered_corpus(1, 3))
        assert stats == (1, 3, Fraction(1, 4))

    def test_zero_vulnerable(self):
        assert corpus_stats(_numbered_corpus(0, 10)).fraction == 0

    def test_published_fractions(self):
        assert round(float(100 * vulnerable_fraction(72_612, 932_741)), 1) == 7.2
        assert round(float(100 * vulnerable_fraction(402, 24_906)), 1) == 1.6

    def test_empty_corpus_is_an_error(self):
        with pytest.raises(DataError):
            vulnerable_fraction(0, 0)
