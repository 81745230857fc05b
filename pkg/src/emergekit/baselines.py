"""Comparison rankers: TF-IDF weight, a compact emergence proxy, co-occurrence.

These deliberately bypass the metric pipeline so the main ranking has
something independent to be compared against.
"""

from __future__ import annotations

import csv
import io
import math
from collections import Counter
from typing import Iterable, Mapping, NamedTuple

from .index import TermIndex, _match_prepared, _prepare_variants
from .ingest import Corpus
from .metrics import ols_slope, slog
from .terms import TermTable, record_token_sequence

EDGES_HEADER = ("term_a", "term_b", "count")
FREQ_HEADER = ("term", "records")


class CorpusTermCounts(NamedTuple):
    """Occurrence counts of every term in every record."""

    corpus_size: int
    per_record: dict[str, dict[str, int]]  # record id -> term -> occurrences

    @classmethod
    def from_corpus(cls, corpus: Corpus, table: TermTable) -> "CorpusTermCounts":
        prepared = {
            term: _prepare_variants(variants) for term, variants in table.entries.items()
        }
        per_record: dict[str, dict[str, int]] = {}
        for rec in corpus.records:
            seq = record_token_sequence(rec)
            row = {}
            for term, by_first in prepared.items():
                count = _match_prepared(seq, by_first)
                if count:
                    row[term] = count
            per_record[rec.id] = row
        return cls(len(corpus.records), per_record)

    def doc_frequency(self, term: str) -> int:
        return sum(1 for row in self.per_record.values() if term in row)

    def total_occurrences(self, term: str) -> int:
        return sum(row.get(term, 0) for row in self.per_record.values())


def tfidf_score(counts: CorpusTermCounts, term: str) -> float:
    """Corpus-level TF-IDF mass: sum over records of tf * ln(N/df)."""
    df = counts.doc_frequency(term)
    if df == 0:
        raise ValueError(f"term {term!r} never occurs in the corpus")
    idf = math.log(counts.corpus_size / df)
    return counts.total_occurrences(term) * idf


def tfidf_ranking(corpus: Corpus, table: TermTable) -> dict[str, float]:
    counts = CorpusTermCounts.from_corpus(corpus, table)
    return {
        term: tfidf_score(counts, term)
        for term in table.entries
        if counts.doc_frequency(term) > 0
    }


def escore_proxy(counts: Iterable[float]) -> float:
    """Additive three-part emergence proxy over a 10-year count series.

    A rewards recent mass against total size, R rewards the last-two-years
    jump over the prior two, S is the least-squares slope of the second half.
    """
    series = [float(c) for c in counts]
    if len(series) != 10:
        raise ValueError(f"escore_proxy needs a 10-element series, got {len(series)}")
    if any(c < 0 for c in series):
        raise ValueError("escore_proxy counts must be non-negative")
    total = sum(series)
    active = (series[7] + series[8] + series[9]) / math.sqrt(max(1.0, total))
    recent = slog((series[8] + series[9]) - (series[6] + series[7]))
    slope = ols_slope((i, series[i - 1]) for i in range(6, 11))
    return active + recent + slope


def escore_ranking(index: TermIndex) -> dict[str, float]:
    """Emergence proxy per term over its binary paper-count series."""
    if index.n_years != 10:
        raise ValueError(
            f"the emergence proxy is defined on 10-year series; index spans {index.n_years}"
        )
    return {
        term: escore_proxy(index.series(term, "papers")) for term in index.term_names()
    }


class CooccurrenceEdge(NamedTuple):
    term_a: str
    term_b: str
    count: int


def cooccurrence(
    corpus: Corpus, table: TermTable, min_count: int = 2
) -> tuple[list[CooccurrenceEdge], dict[str, int]]:
    """Count record-level term pairs, plus each term's record frequency.

    Edges keep term_a < term_b and drop pairs below min_count; both outputs
    are deterministically ordered.
    """
    if min_count < 1:
        raise ValueError("min_count must be >= 1")
    counts = CorpusTermCounts.from_corpus(corpus, table)
    pair_counts: Counter = Counter()
    record_freq = {term: 0 for term in table.entries}
    for row in counts.per_record.values():
        present = sorted(row)
        for i, a in enumerate(present):
            record_freq[a] += 1
            for b in present[i + 1 :]:
                pair_counts[(a, b)] += 1
    edges = [
        CooccurrenceEdge(a, b, c)
        for (a, b), c in sorted(pair_counts.items())
        if c >= min_count
    ]
    return edges, record_freq


def write_score_csv(scores: Mapping[str, float]) -> str:
    """Rank CSV shared by the score-like baselines: descending, ties by term."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("term", "score"))
    for term in sorted(scores, key=lambda t: (-scores[t], t)):
        writer.writerow((term, str(scores[term])))
    return buf.getvalue()


def write_edges_tsv(edges: Iterable[CooccurrenceEdge]) -> str:
    lines = ["\t".join(EDGES_HEADER)]
    lines.extend(f"{e.term_a}\t{e.term_b}\t{e.count}" for e in edges)
    return "\n".join(lines) + "\n"


def write_record_frequency_csv(record_freq: Mapping[str, int]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(FREQ_HEADER)
    for term in sorted(record_freq):
        writer.writerow((term, record_freq[term]))
    return buf.getvalue()
