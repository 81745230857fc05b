"""Reporting: metric correlation structure, term ranking, trend tables."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import FormatError
from .index import TermIndex
from .metrics import METRIC_NAMES, MetricVector

CORRELATION_LABELS = METRIC_NAMES + ("Emergence_Score",)
TRENDS_HEADER = ("term", "year", "papers", "authors", "orgs", "citations", "patents")


def pearson_with_flag(xs: Sequence[float], ys: Sequence[float]) -> tuple[float, bool]:
    """Pearson r plus a degeneracy flag.

    A zero-variance series has no defined correlation; the convention here is
    0 with the flag set.
    """
    if len(xs) != len(ys):
        raise ValueError("series must have equal length")
    if len(xs) < 2:
        raise ValueError("correlation needs at least two observations")
    mean_x = sum(xs) / len(xs)
    mean_y = sum(ys) / len(ys)
    dx = [x - mean_x for x in xs]
    dy = [y - mean_y for y in ys]
    sxx = sum(d * d for d in dx)
    syy = sum(d * d for d in dy)
    if sxx == 0.0 or syy == 0.0:
        return 0.0, True
    r = sum(a * b for a, b in zip(dx, dy)) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r)), False


def pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    return pearson_with_flag(xs, ys)[0]


def _ranks(values: Sequence[float]) -> list[float]:
    """Average ranks, 1-based, ties shared."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        avg = (i + j) / 2 + 1
        for k in range(i, j + 1):
            ranks[order[k]] = avg
        i = j + 1
    return ranks


def spearman_with_flag(xs: Sequence[float], ys: Sequence[float]) -> tuple[float, bool]:
    """Spearman rho: Pearson over average ranks, same degeneracy convention."""
    if len(xs) != len(ys):
        raise ValueError("series must have equal length")
    if len(xs) < 2:
        raise ValueError("correlation needs at least two observations")
    return pearson_with_flag(_ranks(xs), _ranks(ys))


@dataclass(frozen=True)
class CorrelationMatrix:
    """Correlations between the twelve metrics and the emergence score."""

    labels: tuple[str, ...]
    values: np.ndarray
    degenerate_pairs: frozenset[tuple[str, str]] = frozenset()
    method: str = "pearson"

    def value(self, a: str, b: str) -> float:
        return float(self.values[self.labels.index(a), self.labels.index(b)])


def correlation_matrix(
    vectors: Mapping[str, MetricVector] | Sequence[MetricVector],
    method: str = "pearson",
) -> CorrelationMatrix:
    """Correlate every metric column pair across terms."""
    if method == "pearson":
        corr = pearson_with_flag
    elif method == "spearman":
        corr = spearman_with_flag
    else:
        raise ValueError(f"unknown correlation method: {method!r}")
    if isinstance(vectors, Mapping):
        vecs = [vectors[t] for t in sorted(vectors)]
    else:
        vecs = list(vectors)
    if len(vecs) < 2:
        raise ValueError("correlation needs at least two terms")
    columns = {
        label: [vec.components()[i] for vec in vecs]
        for i, label in enumerate(METRIC_NAMES)
    }
    columns["Emergence_Score"] = [vec.emergence_score for vec in vecs]

    n = len(CORRELATION_LABELS)
    values = np.ones((n, n))
    degenerate: set[tuple[str, str]] = set()
    for i, a in enumerate(CORRELATION_LABELS):
        for j, b in enumerate(CORRELATION_LABELS):
            if j < i:
                continue
            if i == j:
                # a zero-variance column is degenerate even against itself
                _, flag = corr(columns[a], columns[b])
                values[i, j] = 0.0 if flag else 1.0
            else:
                r, flag = corr(columns[a], columns[b])
                values[i, j] = values[j, i] = r
            if flag:
                degenerate.add((a, b))
                degenerate.add((b, a))
    return CorrelationMatrix(CORRELATION_LABELS, values, frozenset(degenerate), method)


def write_correlation_csv(matrix: CorrelationMatrix) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("metric",) + matrix.labels)
    for i, label in enumerate(matrix.labels):
        writer.writerow([label] + [str(float(v)) for v in matrix.values[i]])
    return buf.getvalue()


def rank_terms(scores: Mapping[str, float], top_n: int | None = None) -> list[str]:
    """Terms by score descending, ties broken lexicographically ascending."""
    if not scores:
        raise ValueError("score map is empty")
    if top_n is not None and top_n < 1:
        raise ValueError("top_n must be >= 1")
    ranked = sorted(scores, key=lambda t: (-scores[t], t))
    return ranked if top_n is None else ranked[:top_n]


def write_ranking_csv(vectors: Mapping[str, MetricVector], top_n: int | None = None) -> str:
    """Ranked emergence table: rank, term, score, then the twelve metrics."""
    ranked = rank_terms({t: v.emergence_score for t, v in vectors.items()}, top_n)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("rank", "term", "emergence_score") + METRIC_NAMES)
    for position, term in enumerate(ranked, start=1):
        vec = vectors[term]
        writer.writerow(
            [position, term, str(vec.emergence_score)]
            + [str(v) for v in vec.components()]
        )
    return buf.getvalue()


def read_ranking_csv(text: str) -> list[tuple[str, float]]:
    reader = csv.reader(io.StringIO(text))
    try:
        header = tuple(next(reader))
    except StopIteration:
        raise FormatError("ranking CSV is empty") from None
    if header[:3] != ("rank", "term", "emergence_score"):
        raise FormatError("ranking CSV header mismatch")
    out = []
    for row in reader:
        if row:
            out.append((row[1], float(row[2])))
    return out


def write_trends_csv(index: TermIndex, terms: Sequence[str] | None = None) -> str:
    """Per-term yearly activity for the ranked terms."""
    names = list(terms) if terms is not None else index.term_names()
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TRENDS_HEADER)
    for term in names:
        stats = index.terms[term]
        for offset, year in enumerate(index.years):
            writer.writerow(
                [
                    term,
                    year,
                    stats.papers_binary[offset],
                    len(stats.author_sets[offset]),
                    len(stats.org_sets[offset]),
                    stats.citations[offset],
                    stats.patents[offset],
                ]
            )
    return buf.getvalue()
