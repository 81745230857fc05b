"""Normalization and lemmatizer behavior, including idempotence properties."""

import re

from hypothesis import given, settings
from hypothesis import strategies as st

from emergekit.textnorm import (
    DEFAULT_LEMMA_EXCEPTIONS,
    DEFAULT_STOPWORDS,
    FUNCTION_WORDS,
    TokenSequence,
    lemmatize,
    load_lemma_exceptions,
    load_stopwords,
    normalize,
)

LEMMA_SHAPE = re.compile(r"^[^\W\d_]+(?:-[^\W\d_]+)*$", re.UNICODE)


def test_lemmatizer_suffix_rules():
    assert lemmatize("studies") == "study"
    assert lemmatize("technologies") == "technology"
    assert lemmatize("classes") == "class"
    assert lemmatize("processes") == "process"
    assert lemmatize("boxes") == "box"
    assert lemmatize("approaches") == "approach"
    assert lemmatize("meshes") == "mesh"
    assert lemmatize("networks") == "network"
    assert lemmatize("models") == "model"
    # short words and protected suffixes stay put
    assert lemmatize("gas") == "gas"
    assert lemmatize("its") == "its"
    assert lemmatize("glass") == "glass"
    assert lemmatize("virus") == "virus"
    assert lemmatize("analysis") == "analysis"


def test_lemmatizer_exception_table_wins():
    assert lemmatize("data") == "data"
    assert lemmatize("series") == "series"
    assert lemmatize("species") == "species"
    assert lemmatize("criteria") == "criterion"
    assert lemmatize("matrices") == "matrix"
    assert lemmatize("indices") == "index"
    assert lemmatize("analyses") == "analysis"
    assert lemmatize("viruses") == "virus"
    assert lemmatize("news") == "news"
    assert lemmatize("lens") == "lens"


def test_lemma_exception_values_are_fixpoints():
    for surface, lemma in DEFAULT_LEMMA_EXCEPTIONS.items():
        assert lemmatize(lemma) == lemma, (surface, lemma)


@given(st.text(alphabet="abcdefghijklmnopqrstuvwxyz", min_size=1, max_size=12))
def test_lemmatizer_idempotent(word):
    once = lemmatize(word)
    assert lemmatize(once) == once


def test_resource_tables_shape():
    sw = load_stopwords()
    assert sw == DEFAULT_STOPWORDS
    assert FUNCTION_WORDS <= sw
    assert 150 <= len(sw) <= 200
    exceptions = load_lemma_exceptions()
    assert len(exceptions) >= 35
    assert all(w == w.lower() for w in sw)


def test_normalize_example_sentence():
    seq = normalize("Deep Learning, in 2019!")
    assert seq.tokens == ("deep", "learning")
    assert seq.words == ("deep", "learning", "in")
    segs = [[t.lemma for t in seg] for seg in seq.segments]
    assert segs == [["deep", "learning"], ["in"]]
    assert [t.is_function for seg in seq.segments for t in seg] == [False, False, True]


def test_stopword_removal_leaves_no_boundary():
    seq = normalize("deep the learning")
    assert [[t.lemma for t in seg] for seg in seq.segments] == [["deep", "learning"]]


def test_number_removal_leaves_no_boundary():
    seq = normalize("deep 2019 learning")
    assert [[t.lemma for t in seg] for seg in seq.segments] == [["deep", "learning"]]


def test_punctuation_is_a_boundary():
    seq = normalize("deep. learning")
    assert [[t.lemma for t in seg] for seg in seq.segments] == [["deep"], ["learning"]]


def test_function_words_kept_in_stream():
    seq = normalize("internet of things")
    assert seq.words == ("internet", "of", "thing")
    assert seq.tokens == ("internet", "thing")


def test_case_folding_preserves_surfaces():
    seq = normalize("DEEP Learning")
    tok = [t for seg in seq.segments for t in seg]
    assert [t.lemma for t in tok] == ["deep", "learning"]
    assert [t.surface for t in tok] == ["DEEP", "Learning"]


def test_hyphenated_compound_is_one_token():
    seq = normalize("machine-learning methods")
    assert seq.tokens == ("machine-learning", "method")


def test_possessive_apostrophe_does_not_split():
    seq = normalize("Alzheimer's disease")
    assert seq.tokens == ("alzheimer", "disease")
    assert len(seq.segments) == 1


def test_empty_and_symbol_only_text():
    assert normalize("").segments == ()
    assert normalize("  \t\n ").segments == ()
    assert normalize("!!! ???").segments == ()
    assert normalize("2019 2020").segments == ()


def test_concat_adds_boundary_between_parts():
    seq = normalize("deep learning").concat(normalize("neural networks"))
    assert [[t.lemma for t in seg] for seg in seq.segments] == [
        ["deep", "learning"],
        ["neural", "network"],
    ]


TEXT_ALPHABET = "abcdefghij -,.!?()0123456789AB"


@settings(max_examples=200)
@given(st.text(alphabet=TEXT_ALPHABET, max_size=60))
def test_normalize_token_shape_invariants(text):
    seq = normalize(text)
    for seg in seq.segments:
        assert seg, "segments are never empty"
        for tok in seg:
            assert LEMMA_SHAPE.match(tok.lemma), tok
            assert tok.lemma == tok.lemma.lower()
            if tok.is_function:
                assert tok.lemma in FUNCTION_WORDS
            else:
                assert tok.lemma not in DEFAULT_STOPWORDS


@settings(max_examples=200)
@given(st.text(alphabet=TEXT_ALPHABET, max_size=60))
def test_normalize_idempotent_through_to_text(text):
    seq = normalize(text)
    again = normalize(seq.to_text())
    assert again.words == seq.words
    assert [[t.lemma for t in seg] for seg in again.segments] == [
        [t.lemma for t in seg] for seg in seq.segments
    ]


def test_token_sequence_rejects_empty_segment():
    import pytest

    with pytest.raises(ValueError):
        TokenSequence(((),))
