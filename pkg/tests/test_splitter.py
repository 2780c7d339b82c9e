import pytest
from hypothesis import given, assume, strategies as st

from favd.splitter import split, unique_terms

# Sample words from the per-project most/least dangerous lists; each must
# survive splitting unchanged when it appears as an underscore-delimited
# segment of a larger name.
SAMPLE_WORDS = [
    "LZWDecode",
    "readwrite",
    "httpconn",
    "264",
    "16",
    "LOADSparse",
    "png",
    "handle",
    "JPEG",
    "pdf",
    "Checked",
    "readgitimage",
    "Recieve",
    "mxit",
    "slplink",
    "untar",
    "milliwatt",
    "PLTE",
    "avi",
    "cvt",
]


def test_snake_case():
    assert split("read_file") == ["read", "file"]


def test_multi_segment_snake():
    assert split("png_push_read_chunk") == ["png", "push", "read", "chunk"]


def test_upper_then_lower_is_not_a_boundary():
    assert split("LZWDecode") == ["LZWDecode"]
    assert split("LOADSparse") == ["LOADSparse"]


def test_letter_digit_boundaries_both_directions():
    assert split("h264") == ["h", "264"]
    assert split("x264x") == ["x", "264", "x"]
    assert split("AB2cd") == ["AB", "2", "cd"]


def test_compound_lowercase_words_stay_whole():
    assert split("maxstrlen") == ["maxstrlen"]
    assert split("readwrite") == ["readwrite"]


def test_camel_case_boundary():
    assert split("aB") == ["a", "B"]
    assert split("readFile") == ["read", "File"]


@pytest.mark.parametrize("word", SAMPLE_WORDS)
def test_sample_words_survive_embedding(word):
    assert word in split(f"pre_{word}_post")


def test_empty_identifier_rejected():
    with pytest.raises(ValueError):
        split("")


def test_separator_only_identifier_yields_no_terms():
    assert split("_") == []
    assert split("___") == []


def test_leading_and_trailing_underscores():
    assert split("_x_") == ["x"]
    assert split("__init__") == ["init"]


def test_case_folding_flag():
    assert split("readFile", fold_case=True) == ["read", "file"]
    assert split("readFile") == ["read", "File"]


def test_symbols_do_not_split():
    assert split("a$b") == ["a$b"]


def test_unique_terms_examples():
    assert unique_terms({"read_file", "read_net"}) == {"read", "file", "net"}
    assert unique_terms(set()) == set()
    assert unique_terms({"a_b", "aB"}) == {"a", "b", "B"}


identifiers = st.text(alphabet="abcXYZ019_", min_size=1, max_size=24)


@given(identifiers)
def test_terms_are_never_empty(ident):
    assert all(term for term in split(ident))


@given(identifiers)
def test_concatenation_reconstructs_identifier(ident):
    assert "".join(split(ident)) == ident.replace("_", "")


@given(st.text(alphabet="abcdwxyz", min_size=1, max_size=12))
def test_single_class_lowercase_never_splits(word):
    assert split(word) == [word]


@given(st.text(alphabet="ABCDWXYZ", min_size=1, max_size=12))
def test_single_class_uppercase_never_splits(word):
    assert split(word) == [word]


@given(st.text(alphabet="0123456789", min_size=1, max_size=12))
def test_single_class_digits_never_split(word):
    assert split(word) == [word]


@given(identifiers)
def test_case_folding_commutes_without_case_boundaries(ident):
    assume(not any(a.islower() and b.isupper() for a, b in zip(ident, ident[1:])))
    assert split(ident.lower()) == [t.lower() for t in split(ident)]
