"""Candidate term extraction, per-document ranking, and variant clumping.

Candidates are contiguous n-grams (1..n_max tokens) drawn from normalized
titles and abstracts.  Phrases never cross a segment boundary and never start
or end on a function word.  After a document-frequency floor, each document
keeps its top-k candidates by the chosen ranker, and the kept set is clumped
into a table of canonical terms with their variant spellings.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import FormatError
from .ingest import Corpus, DocumentRecord
from .textnorm import TokenSequence, lemmatize, normalize


def record_token_sequence(
    record: DocumentRecord,
    stopwords=None,
    lemma_exceptions=None,
) -> TokenSequence:
    """Normalize a record's title and abstract into one sequence.

    A phrase boundary separates the two fields.
    """
    title = normalize(record.title, stopwords, lemma_exceptions)
    abstract = normalize(record.abstract, stopwords, lemma_exceptions)
    return title.concat(abstract)


class PhraseOccurrence(NamedTuple):
    tokens: tuple[str, ...]
    surface: str


def extract_candidates(
    seq: TokenSequence, n_min: int = 1, n_max: int = 4
) -> list[PhraseOccurrence]:
    """Enumerate every candidate n-gram occurrence in a sequence.

    Duplicates are preserved; order is by position, then by length.
    """
    if n_min < 1 or n_max < n_min:
        raise ValueError("need 1 <= n_min <= n_max")
    out: list[PhraseOccurrence] = []
    for seg in seq.segments:
        for start in range(len(seg)):
            if seg[start].is_function:
                continue
            for n in range(n_min, n_max + 1):
                end = start + n
                if end > len(seg):
                    break
                if seg[end - 1].is_function:
                    continue
                out.append(
                    PhraseOccurrence(
                        tuple(t.lemma for t in seg[start:end]),
                        " ".join(t.surface for t in seg[start:end]),
                    )
                )
    return out


@dataclass(frozen=True)
class CandidatePhrase:
    """A candidate surviving the document-frequency floor."""

    tokens: tuple[str, ...]
    surface: str
    doc_frequency: int

    def __post_init__(self):
        if not self.tokens:
            raise ValueError("candidate must have at least one token")
        if self.doc_frequency < 1:
            raise ValueError("doc_frequency must be >= 1")

    @property
    def text(self) -> str:
        return " ".join(self.tokens)


@dataclass
class CandidateStats:
    """Corpus-wide candidate statistics needed for ranking and clumping."""

    corpus_size: int
    record_ids: dict[tuple[str, ...], set[str]] = field(default_factory=dict)
    surfaces: dict[tuple[str, ...], Counter] = field(default_factory=dict)
    doc_counts: dict[str, Counter] = field(default_factory=dict)

    def doc_frequency(self, tokens: tuple[str, ...]) -> int:
        return len(self.record_ids.get(tokens, ()))

    def doc_candidates(self, doc_id: str) -> list[tuple[str, ...]]:
        return sorted(self.doc_counts.get(doc_id, ()))


def collect_candidate_stats(
    corpus: Corpus,
    n_min: int = 1,
    n_max: int = 4,
    min_doc_frequency: int = 3,
    stopwords=None,
    lemma_exceptions=None,
) -> CandidateStats:
    """Extract candidates from every record and keep those at or above the floor."""
    if min_doc_frequency < 1:
        raise ValueError("min_doc_frequency must be >= 1")
    stats = CandidateStats(corpus_size=len(corpus.records))
    for rec in corpus.records:
        seq = record_token_sequence(rec, stopwords, lemma_exceptions)
        counts: Counter = Counter()
        for occ in extract_candidates(seq, n_min, n_max):
            counts[occ.tokens] += 1
            stats.record_ids.setdefault(occ.tokens, set()).add(rec.id)
            stats.surfaces.setdefault(occ.tokens, Counter())[occ.surface] += 1
        stats.doc_counts[rec.id] = counts
    drop = [t for t, ids in stats.record_ids.items() if len(ids) < min_doc_frequency]
    for tokens in drop:
        del stats.record_ids[tokens]
        del stats.surfaces[tokens]
    for counts in stats.doc_counts.values():
        for tokens in [t for t in counts if t not in stats.record_ids]:
            del counts[tokens]
    return stats


def candidate_phrases(stats: CandidateStats) -> list[CandidatePhrase]:
    """Materialize the surviving candidates, sorted by text."""
    out = []
    for tokens in sorted(stats.record_ids):
        surface = _preferred_surface(stats.surfaces[tokens])
        out.append(CandidatePhrase(tokens, surface, len(stats.record_ids[tokens])))
    return out


def _preferred_surface(counter: Counter) -> str:
    best = min(counter.items(), key=lambda kv: (-kv[1], kv[0].lower()))
    return best[0].lower()


class Sidecar:
    """Embedding sidecar: id-to-vector map with a fixed dimension.

    Line 1 is ``dim=N``; every following line is ``<id>\\t<f1>,...,<fN>``.
    """

    def __init__(self, dim: int, vectors: dict[str, tuple[float, ...]]):
        if dim < 1:
            raise FormatError("sidecar dimension must be >= 1")
        for key, vec in vectors.items():
            if len(vec) != dim:
                raise FormatError(f"sidecar vector for {key!r} has wrong dimension")
        self.dim = dim
        self.vectors = vectors

    @classmethod
    def parse(cls, text: str) -> "Sidecar":
        lines = text.splitlines()
        if not lines or not lines[0].startswith("dim="):
            raise FormatError("sidecar must start with a dim=N line")
        try:
            dim = int(lines[0][4:])
        except ValueError:
            raise FormatError("sidecar dim is not an integer") from None
        vectors: dict[str, tuple[float, ...]] = {}
        for lineno, line in enumerate(lines[1:], start=2):
            if not line.strip():
                continue
            key, sep, values = line.partition("\t")
            if not sep or not key:
                raise FormatError(f"sidecar line {lineno}: expected <id>TAB<values>")
            try:
                vec = tuple(float(v) for v in values.split(","))
            except ValueError:
                raise FormatError(f"sidecar line {lineno}: non-numeric value") from None
            if len(vec) != dim:
                raise FormatError(
                    f"sidecar line {lineno}: expected {dim} values, got {len(vec)}"
                )
            vectors[key] = vec
        return cls(dim, vectors)

    @classmethod
    def load(cls, path) -> "Sidecar":
        with open(path, encoding="utf-8") as fh:
            return cls.parse(fh.read())

    def vector(self, key: str) -> tuple[float, ...]:
        try:
            return self.vectors[key]
        except KeyError:
            raise KeyError(f"no embedding for id {key!r}") from None


def cosine(u: Sequence[float], v: Sequence[float]) -> float:
    dot = sum(a * b for a, b in zip(u, v))
    nu = math.sqrt(sum(a * a for a in u))
    nv = math.sqrt(sum(b * b for b in v))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return dot / (nu * nv)


def rank_candidates(
    document: DocumentRecord,
    candidates: Iterable[tuple[str, ...]],
    ranker: str = "statistical",
    top_k: int = 5,
    stats: CandidateStats | None = None,
    sidecar: Sidecar | None = None,
) -> list[tuple[str, ...]]:
    """Rank a document's candidates and return the top_k token tuples.

    The statistical ranker scores tf * ln(N/df); the embedding ranker scores
    cosine similarity between document and candidate sidecar vectors.  Ties
    break on the candidate string, ascending.
    """
    if top_k < 1:
        raise ValueError("top_k must be >= 1")
    candidates = list(candidates)
    if ranker == "statistical":
        if stats is None:
            raise ValueError("statistical ranking needs candidate stats")
        counts = stats.doc_counts.get(document.id, Counter())
        n = stats.corpus_size

        def score(tokens: tuple[str, ...]) -> float:
            df = stats.doc_frequency(tokens)
            if df == 0:
                raise ValueError(f"candidate {' '.join(tokens)!r} has zero doc frequency")
            return counts.get(tokens, 0) * math.log(n / df)

    elif ranker == "embedding":
        if sidecar is None:
            raise ValueError("embedding ranking needs a sidecar")
        doc_vec = sidecar.vector(f"doc:{document.id}")

        def score(tokens: tuple[str, ...]) -> float:
            return cosine(doc_vec, sidecar.vector(f"term:{' '.join(tokens)}"))

    else:
        raise ValueError(f"unknown ranker: {ranker!r}")

    scored = [(tokens, score(tokens)) for tokens in candidates]
    scored.sort(key=lambda kv: (-kv[1], " ".join(kv[0])))
    return [tokens for tokens, _ in scored[:top_k]]


@dataclass(frozen=True)
class TermTable:
    """Canonical terms mapped to their variant token sequences."""

    entries: Mapping[str, frozenset[tuple[str, ...]]]
    doc_frequencies: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        seen: dict[tuple[str, ...], str] = {}
        for canonical, variants in self.entries.items():
            if not canonical or canonical != canonical.lower():
                raise ValueError(f"canonical term must be non-empty lowercase: {canonical!r}")
            if not variants:
                raise ValueError(f"term {canonical!r} has no variants")
            for v in variants:
                if v in seen:
                    raise ValueError(
                        f"variant {' '.join(v)!r} appears under both "
                        f"{seen[v]!r} and {canonical!r}"
                    )
                seen[v] = canonical

    def canonical_terms(self) -> list[str]:
        return sorted(self.entries)

    def variants(self, term: str) -> frozenset[tuple[str, ...]]:
        return self.entries[term]

    def to_tsv(self) -> str:
        lines = []
        for canonical in self.canonical_terms():
            variants = sorted(" ".join(v) for v in self.entries[canonical])
            lines.append(f"{canonical}\t{'|'.join(variants)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_tsv(cls, text: str) -> "TermTable":
        entries: dict[str, frozenset[tuple[str, ...]]] = {}
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            canonical, sep, rest = line.partition("\t")
            if not sep or not canonical or not rest:
                raise FormatError(f"term table line {lineno}: expected canonical TAB variants")
            variants = frozenset(
                tuple(v.split(" ")) for v in rest.split("|") if v
            )
            if not variants:
                raise FormatError(f"term table line {lineno}: no variants")
            if canonical in entries:
                raise FormatError(f"term table line {lineno}: duplicate canonical {canonical!r}")
            entries[canonical] = variants
        return cls(entries)


def clump_key(tokens: tuple[str, ...], lemma_exceptions=None) -> tuple[str, ...]:
    """Equivalence key for clumping: hyphen splits plus per-part lemmas."""
    parts: list[str] = []
    for tok in tokens:
        for part in tok.split("-"):
            if part:
                parts.append(lemmatize(part, lemma_exceptions))
    return tuple(parts)


def clump_terms(
    candidates: Iterable[CandidatePhrase],
    stats: CandidateStats,
    lemma_exceptions=None,
) -> TermTable:
    """Merge candidate variants that normalize to the same clump key.

    The canonical string is the preferred surface of the variant with the
    highest document frequency (ties: lexicographically smallest variant).
    """
    groups: dict[tuple[str, ...], list[CandidatePhrase]] = {}
    for cand in candidates:
        groups.setdefault(clump_key(cand.tokens, lemma_exceptions), []).append(cand)

    entries: dict[str, set[tuple[str, ...]]] = {}
    record_ids: dict[str, set[str]] = {}
    for key in sorted(groups):
        group = sorted(groups[key], key=lambda c: (-c.doc_frequency, c.tokens))
        canonical = group[0].surface
        entries.setdefault(canonical, set()).update(c.tokens for c in group)
        ids = record_ids.setdefault(canonical, set())
        for cand in group:
            ids.update(stats.record_ids.get(cand.tokens, ()))
    return TermTable(
        {k: frozenset(v) for k, v in entries.items()},
        {k: len(v) for k, v in record_ids.items()},
    )


def build_term_table(
    corpus: Corpus,
    ranker: str = "statistical",
    top_k: int = 5,
    n_max: int = 4,
    min_doc_frequency: int = 3,
    sidecar: Sidecar | None = None,
    stopwords=None,
    lemma_exceptions=None,
) -> tuple[TermTable, CandidateStats]:
    """Full extraction pipeline: candidates, per-document top-k, clumping."""
    stats = collect_candidate_stats(
        corpus, 1, n_max, min_doc_frequency, stopwords, lemma_exceptions
    )
    kept: set[tuple[str, ...]] = set()
    for rec in corpus.records:
        eligible = stats.doc_candidates(rec.id)
        if not eligible:
            continue
        kept.update(
            rank_candidates(rec, eligible, ranker, top_k, stats=stats, sidecar=sidecar)
        )
    phrases = [c for c in candidate_phrases(stats) if c.tokens in kept]
    table = clump_terms(phrases, stats, lemma_exceptions)
    return table, stats
