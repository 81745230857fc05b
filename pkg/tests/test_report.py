"""Correlation, ranking, and trend serialization."""

import random

import numpy as np
import pytest

from conftest import make_corpus, make_paper
from emergekit.errors import FormatError
from emergekit.index import build_index
from emergekit.metrics import METRIC_NAMES, MetricVector
from emergekit.report import (
    CORRELATION_LABELS,
    correlation_matrix,
    pearson,
    pearson_with_flag,
    rank_terms,
    read_ranking_csv,
    spearman_with_flag,
    write_correlation_csv,
    write_ranking_csv,
    write_trends_csv,
)
from emergekit.terms import TermTable
from oracles import naive_pearson

APPROX = dict(abs=1e-9)


def test_pearson_frozen_values():
    assert pearson([1, 2, 3], [2, 4, 6]) == pytest.approx(1.0, **APPROX)
    assert pearson([1, 2, 3], [3, 2, 1]) == pytest.approx(-1.0, **APPROX)
    assert pearson([1, 2, 3], [1, 3, 2]) == pytest.approx(0.5, **APPROX)


def test_pearson_zero_variance_flag():
    r, flag = pearson_with_flag([1, 1, 1], [1, 2, 3])
    assert (r, flag) == (0.0, True)
    r, flag = pearson_with_flag([1, 2, 3], [2, 4, 6])
    assert flag is False


def test_pearson_validation():
    with pytest.raises(ValueError):
        pearson([1, 2], [1, 2, 3])
    with pytest.raises(ValueError):
        pearson([1], [1])


def test_pearson_agrees_with_numpy():
    rng = random.Random(11)
    for _ in range(50):
        n = rng.randint(2, 30)
        xs = [rng.uniform(-5, 5) for _ in range(n)]
        ys = [rng.uniform(-5, 5) for _ in range(n)]
        assert pearson(xs, ys) == pytest.approx(naive_pearson(xs, ys), abs=1e-9)


def test_spearman_monotone_and_ties():
    # any strictly monotone map correlates to 1 in rank space
    xs = [1.0, 2.0, 3.0, 4.0]
    ys = [x**3 for x in xs]
    rho, flag = spearman_with_flag(xs, ys)
    assert rho == pytest.approx(1.0, **APPROX) and flag is False
    # ties take average ranks
    rho, _ = spearman_with_flag([1, 2, 2, 3], [1, 2, 3, 4])
    assert rho == pytest.approx(naive_pearson([1, 2.5, 2.5, 4], [1, 2, 3, 4]), **APPROX)


def random_vector(rng, **overrides):
    metrics = {n: rng.uniform(-2, 2) for n in METRIC_NAMES}
    metrics["novelty"] = rng.uniform(0.1, 5.0)
    metrics["novelty2"] = rng.uniform(0.1, 5.0)
    metrics["scientific_impact"] = rng.uniform(0.0, 3.0)
    metrics["technological_impact"] = rng.uniform(0.0, 3.0)
    metrics.update(overrides)
    return MetricVector.of(**metrics)


def test_correlation_matrix_structure():
    rng = random.Random(3)
    vectors = {}
    for i in range(40):
        ltg = rng.uniform(-2, 2)
        vectors[f"t{i:02d}"] = random_vector(
            rng,
            long_term_growth=ltg,
            long_term_growth2=1.0 + 2.0 * ltg,  # exactly linear in ltg
            technological_impact=0.0,  # zero variance column
        )
    matrix = correlation_matrix(vectors)
    assert matrix.labels == CORRELATION_LABELS
    assert matrix.value("long_term_growth", "long_term_growth2") == pytest.approx(1.0, **APPROX)
    values = matrix.values
    assert np.allclose(values, values.T)
    for label in CORRELATION_LABELS:
        if label == "technological_impact":
            continue
        assert matrix.value(label, label) == 1.0
        assert matrix.value("technological_impact", label) == 0.0
        assert ("technological_impact", label) in matrix.degenerate_pairs
    # the degenerate column is flagged even against itself
    assert matrix.value("technological_impact", "technological_impact") == 0.0
    assert np.all(values <= 1.0) and np.all(values >= -1.0)


def test_correlation_matrix_emergence_column_tracks_components():
    rng = random.Random(5)
    vectors = {f"t{i}": random_vector(rng) for i in range(60)}
    matrix = correlation_matrix(vectors)
    xs = [v.long_term_growth for v in vectors.values()]
    ys = [v.emergence_score for v in vectors.values()]
    # computed against an order-independent numpy recount
    assert matrix.value("long_term_growth", "Emergence_Score") == pytest.approx(
        naive_pearson(xs, ys), **APPROX
    )


def test_correlation_matrix_validation():
    rng = random.Random(1)
    with pytest.raises(ValueError):
        correlation_matrix({"only": random_vector(rng)})
    with pytest.raises(ValueError):
        correlation_matrix({"a": random_vector(rng), "b": random_vector(rng)}, method="kendall")


def test_correlation_matrix_spearman_switch():
    rng = random.Random(9)
    vectors = {f"t{i}": random_vector(rng) for i in range(30)}
    m = correlation_matrix(vectors, method="spearman")
    assert m.method == "spearman"
    xs = [v.novelty for v in vectors.values()]
    ys = [v.emergence_score for v in vectors.values()]
    assert m.value("novelty", "Emergence_Score") == pytest.approx(
        spearman_with_flag(xs, ys)[0], **APPROX
    )


def test_correlation_csv_shape():
    rng = random.Random(2)
    vectors = {f"t{i}": random_vector(rng) for i in range(5)}
    text = write_correlation_csv(correlation_matrix(vectors))
    lines = text.splitlines()
    assert lines[0].split(",")[0] == "metric"
    assert len(lines) == len(CORRELATION_LABELS) + 1
    assert lines[1].split(",")[0] == CORRELATION_LABELS[0]


def test_rank_terms():
    assert rank_terms({"a": 1.0, "b": 2.0}) == ["b", "a"]
    assert rank_terms({"b": 1.0, "a": 1.0, "c": 2.0}) == ["c", "a", "b"]
    assert rank_terms({"a": 1.0, "b": 2.0, "c": 0.0}, top_n=2) == ["b", "a"]
    with pytest.raises(ValueError):
        rank_terms({})
    with pytest.raises(ValueError):
        rank_terms({"a": 1.0}, top_n=0)


def test_rank_terms_permutes_keys_and_shrugs_off_constant_shifts():
    rng = random.Random(9)
    for _ in range(50):
        scores = {f"t{i}": rng.uniform(-20, 20) for i in range(rng.randint(1, 12))}
        order = rank_terms(scores)
        assert sorted(order) == sorted(scores)
        shift = rng.uniform(-100, 100)
        assert rank_terms({t: s + shift for t, s in scores.items()}) == order
        top = rng.randint(1, len(scores))
        assert rank_terms(scores, top_n=top) == order[:top]


def test_pearson_invariant_under_positive_affine_transforms():
    rng = random.Random(13)
    for _ in range(50):
        xs = [rng.uniform(-5, 5) for _ in range(8)]
        ys = [rng.uniform(-5, 5) for _ in range(8)]
        base = pearson(xs, ys)
        a, b = rng.uniform(0.1, 9.0), rng.uniform(-40, 40)
        assert pearson([a * x + b for x in xs], ys) == pytest.approx(base, abs=1e-9)


def test_ranking_csv_round_trip():
    rng = random.Random(4)
    vectors = {f"term {i}": random_vector(rng) for i in range(6)}
    text = write_ranking_csv(vectors, top_n=4)
    rows = read_ranking_csv(text)
    assert len(rows) == 4
    scores = [s for _, s in rows]
    assert scores == sorted(scores, reverse=True)
    expected = rank_terms({t: v.emergence_score for t, v in vectors.items()}, 4)
    assert [t for t, _ in rows] == expected
    with pytest.raises(FormatError):
        read_ranking_csv("")
    with pytest.raises(FormatError):
        read_ranking_csv("x,y,z\n")


def test_trends_csv_lists_each_term_year():
    corpus = make_corpus(
        [
            make_paper("d1", 2011, "alpha study", "alpha", authors=["a"], citations=2),
            make_paper("d2", 2013, "alpha again", "alpha", authors=["b"]),
        ],
        start=2011,
        end=2013,
    )
    index = build_index(corpus, TermTable({"alpha": frozenset({("alpha",)})}))
    text = write_trends_csv(index, ["alpha"])
    lines = text.splitlines()
    assert lines[0] == "term,year,papers,authors,orgs,citations,patents"
    assert lines[1] == "alpha,2011,1,1,0,2,0"
    assert lines[2] == "alpha,2012,0,0,0,0,0"
    assert lines[3] == "alpha,2013,1,1,0,0,0"
