"""Term-year index: match terms against records and accumulate yearly statistics.

For every canonical term the index tracks, per study year: papers containing
it (binary), total occurrences, the distinct author and organization sets,
citation mass, and patent counts.  Matching is greedy, left to right, longest
variant first, and never overlaps or crosses a segment boundary.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import FormatError
from .ingest import Corpus, DocumentRecord, PAPER, PATENT
from .terms import TermTable, record_token_sequence
from .textnorm import TokenSequence

INDEX_HEADER = (
    "term",
    "year",
    "papers_binary",
    "papers_full",
    "authors",
    "orgs",
    "citations",
    "patents",
)
TOTALS_HEADER = ("year", "total_papers", "total_patents")
ENTITIES_HEADER = ("term", "year", "kind", "entity")

SUMMED_STATS = ("papers_binary", "papers_full", "citations", "patents")
DISTINCT_STATS = ("authors", "orgs")


def _prepare_variants(variants: Iterable[tuple[str, ...]]) -> dict[str, list[tuple[str, ...]]]:
    by_first: dict[str, list[tuple[str, ...]]] = {}
    for v in variants:
        if not v:
            raise ValueError("empty variant")
        by_first.setdefault(v[0], []).append(v)
    for options in by_first.values():
        options.sort(key=lambda v: (-len(v), v))
    return by_first


def _match_prepared(seq: TokenSequence, by_first: dict[str, list[tuple[str, ...]]]) -> int:
    count = 0
    for seg in seq.segments:
        words = tuple(t.lemma for t in seg)
        i = 0
        while i < len(words):
            step = 1
            for cand in by_first.get(words[i], ()):
                if len(cand) <= len(words) - i and words[i : i + len(cand)] == cand:
                    count += 1
                    step = len(cand)
                    break
            i += step
    return count


def match_term(seq: TokenSequence, variants: Iterable[tuple[str, ...]]) -> int:
    """Count non-overlapping occurrences of any variant in the sequence.

    Scan is left to right; at each position the longest matching variant wins
    (an equal-length match at one position would be the same tuple, so there
    is never a tie to break).
    """
    return _match_prepared(seq, _prepare_variants(variants))


@dataclass
class TermYearStats:
    """Per-year accumulators for one term over the study window."""

    n_years: int
    papers_binary: list[int] = field(default_factory=list)
    papers_full: list[int] = field(default_factory=list)
    citations: list[int] = field(default_factory=list)
    patents: list[int] = field(default_factory=list)
    author_sets: list[set[str]] = field(default_factory=list)
    org_sets: list[set[str]] = field(default_factory=list)

    def __post_init__(self):
        if not self.papers_binary:
            self.papers_binary = [0] * self.n_years
            self.papers_full = [0] * self.n_years
            self.citations = [0] * self.n_years
            self.patents = [0] * self.n_years
            self.author_sets = [set() for _ in range(self.n_years)]
            self.org_sets = [set() for _ in range(self.n_years)]

    @property
    def authors(self) -> list[int]:
        return [len(s) for s in self.author_sets]

    @property
    def orgs(self) -> list[int]:
        return [len(s) for s in self.org_sets]


@dataclass
class TermIndex:
    """Term-year statistics plus corpus-wide totals."""

    study_start: int
    study_end: int
    terms: dict[str, TermYearStats]
    total_papers: list[int]
    total_patents: list[int]
    counting_mode: str = "binary"

    @property
    def n_years(self) -> int:
        return self.study_end - self.study_start + 1

    @property
    def years(self) -> range:
        return range(self.study_start, self.study_end + 1)

    def term_names(self) -> list[str]:
        return sorted(self.terms)

    def series(self, term: str, stat: str) -> list[int]:
        stats = self.terms[term]
        if stat in ("papers", "papers_binary"):
            return list(stats.papers_binary)
        if stat in ("occurrences", "papers_full"):
            return list(stats.papers_full)
        if stat == "authors":
            return stats.authors
        if stat == "orgs":
            return stats.orgs
        if stat == "citations":
            return list(stats.citations)
        if stat == "patents":
            return list(stats.patents)
        raise ValueError(f"unknown statistic: {stat!r}")


def build_index(
    corpus: Corpus,
    table: TermTable,
    counting_mode: str = "binary",
    stopwords=None,
    lemma_exceptions=None,
) -> TermIndex:
    """Scan every record once and accumulate per-term yearly statistics."""
    if counting_mode not in ("binary", "full"):
        raise ValueError(f"unknown counting mode: {counting_mode!r}")
    if not table.entries:
        raise ValueError("term table is empty")
    n_years = corpus.study_end - corpus.study_start + 1
    index = TermIndex(
        study_start=corpus.study_start,
        study_end=corpus.study_end,
        terms={t: TermYearStats(n_years) for t in table.entries},
        total_papers=[0] * n_years,
        total_patents=[0] * n_years,
        counting_mode=counting_mode,
    )
    prepared = {term: _prepare_variants(variants) for term, variants in table.entries.items()}
    for rec in corpus.records:
        y = rec.year - corpus.study_start
        if rec.kind == PAPER:
            index.total_papers[y] += 1
        else:
            index.total_patents[y] += 1
        seq = record_token_sequence(rec, stopwords, lemma_exceptions)
        for term, by_first in prepared.items():
            occurrences = _match_prepared(seq, by_first)
            if not occurrences:
                continue
            stats = index.terms[term]
            if rec.kind == PAPER:
                stats.papers_binary[y] += 1
                stats.papers_full[y] += occurrences if counting_mode == "full" else 1
                stats.citations[y] += rec.citations
                stats.author_sets[y].update(rec.authors)
                stats.org_sets[y].update(rec.organizations)
            else:
                stats.patents[y] += 1
    return index


def window_stat(index: TermIndex, term: str, stat: str, year_lo: int, year_hi: int):
    """Aggregate a statistic over an inclusive year window.

    Count statistics are summed; author/org statistics count distinct
    entities across the window, not a sum of yearly counts.
    """
    if term not in index.terms:
        raise KeyError(term)
    if not (index.study_start <= year_lo <= year_hi <= index.study_end):
        raise ValueError(
            f"window {year_lo}-{year_hi} outside study window "
            f"{index.study_start}-{index.study_end}"
        )
    lo = year_lo - index.study_start
    hi = year_hi - index.study_start
    stats = index.terms[term]
    if stat in SUMMED_STATS or stat in ("papers", "occurrences"):
        series = index.series(term, stat)
        return sum(series[lo : hi + 1])
    if stat == "authors":
        return len(set().union(*stats.author_sets[lo : hi + 1]))
    if stat == "orgs":
        return len(set().union(*stats.org_sets[lo : hi + 1]))
    raise ValueError(f"unknown statistic: {stat!r}")


def write_index_csv(index: TermIndex) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(INDEX_HEADER)
    for term in index.term_names():
        stats = index.terms[term]
        for offset, year in enumerate(index.years):
            writer.writerow(
                [
                    term,
                    year,
                    stats.papers_binary[offset],
                    stats.papers_full[offset],
                    len(stats.author_sets[offset]),
                    len(stats.org_sets[offset]),
                    stats.citations[offset],
                    stats.patents[offset],
                ]
            )
    return buf.getvalue()


def write_totals_csv(index: TermIndex) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TOTALS_HEADER)
    for offset, year in enumerate(index.years):
        writer.writerow([year, index.total_papers[offset], index.total_patents[offset]])
    return buf.getvalue()


def write_entities_csv(index: TermIndex) -> str:
    """Author/organization membership per term-year, so a reload keeps the sets."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(ENTITIES_HEADER)
    for term in index.term_names():
        stats = index.terms[term]
        for offset, year in enumerate(index.years):
            for name in sorted(stats.author_sets[offset]):
                writer.writerow([term, year, "author", name])
            for name in sorted(stats.org_sets[offset]):
                writer.writerow([term, year, "org", name])
    return buf.getvalue()


def _read_rows(text: str, header: tuple[str, ...], what: str) -> list[list[str]]:
    reader = csv.reader(io.StringIO(text))
    try:
        got = tuple(next(reader))
    except StopIteration:
        raise FormatError(f"{what} is empty") from None
    if got != header:
        raise FormatError(f"{what} header mismatch: expected {','.join(header)}")
    return [row for row in reader if row]


def load_index(index_csv: str, totals_csv: str, entities_csv: str | None = None) -> TermIndex:
    """Rebuild a TermIndex from its serialized artifacts."""
    totals_rows = _read_rows(totals_csv, TOTALS_HEADER, "totals CSV")
    if not totals_rows:
        raise FormatError("totals CSV has no rows")
    try:
        years = [int(r[0]) for r in totals_rows]
    except ValueError:
        raise FormatError("totals CSV: non-integer year") from None
    start, end = years[0], years[-1]
    if years != list(range(start, end + 1)):
        raise FormatError("totals CSV: years must be consecutive")
    n_years = end - start + 1
    total_papers = [int(r[1]) for r in totals_rows]
    total_patents = [int(r[2]) for r in totals_rows]

    terms: dict[str, TermYearStats] = {}
    for row in _read_rows(index_csv, INDEX_HEADER, "index CSV"):
        term, year, pb, pf, _authors, _orgs, cites, pats = row
        try:
            y = int(year) - start
        except ValueError:
            raise FormatError(f"index CSV: non-integer year for {term!r}") from None
        if not (0 <= y < n_years):
            raise FormatError(f"index CSV: year {year} outside totals range")
        stats = terms.setdefault(term, TermYearStats(n_years))
        stats.papers_binary[y] = int(pb)
        stats.papers_full[y] = int(pf)
        stats.citations[y] = int(cites)
        stats.patents[y] = int(pats)
    if entities_csv is not None:
        for term, year, kind, entity in _read_rows(entities_csv, ENTITIES_HEADER, "entities CSV"):
            if term not in terms:
                raise FormatError(f"entities CSV: unknown term {term!r}")
            y = int(year) - start
            if not (0 <= y < n_years):
                raise FormatError(f"entities CSV: year {year} outside totals range")
            target = terms[term].author_sets if kind == "author" else terms[term].org_sets
            if kind not in ("author", "org"):
                raise FormatError(f"entities CSV: unknown kind {kind!r}")
            target[y].add(entity)
    mode = "full" if any(
        s.papers_full[y] != s.papers_binary[y] for s in terms.values() for y in range(n_years)
    ) else "binary"
    return TermIndex(start, end, terms, total_papers, total_patents, mode)
