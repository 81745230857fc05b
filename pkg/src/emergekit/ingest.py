"""Corpus ingestion: parse raw exports, validate records, build the study corpus.

Papers arrive as tab-delimited exports (tag columns TI, AB, PY, AU, C1, TC) or
as the canonical CSV this package writes; patents arrive as a simple CSV.
Every downstream stage consumes the canonical form only.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .errors import FormatError

PAPER = "paper"
PATENT = "patent"

CANONICAL_HEADER = (
    "id",
    "kind",
    "year",
    "title",
    "abstract",
    "authors",
    "organizations",
    "citations",
)

_LIST_SEP = "|"


@dataclass(frozen=True)
class DocumentRecord:
    """One bibliographic record, paper or patent."""

    id: str
    kind: str
    year: int
    title: str
    abstract: str = ""
    authors: tuple[str, ...] = ()
    organizations: tuple[str, ...] = ()
    citations: int = 0

    def __post_init__(self):
        if not self.id:
            raise ValueError("record id must be non-empty")
        if self.kind not in (PAPER, PATENT):
            raise ValueError(f"unknown record kind: {self.kind!r}")
        if not self.title:
            raise ValueError(f"record {self.id}: title must be non-empty")
        if self.citations < 0:
            raise ValueError(f"record {self.id}: citations must be >= 0")
        if self.kind == PATENT and (self.authors or self.organizations or self.citations):
            raise ValueError(f"patent {self.id}: authors/organizations/citations must be empty")


class ParseResult(NamedTuple):
    records: list[DocumentRecord]
    skipped: int


def _normalize_person(name: str) -> str:
    return " ".join(name.split()).lower()


def _parse_affiliations(raw: str) -> tuple[str, ...]:
    """Extract organization names from a WOS C1 field.

    Each affiliation may open with a bracketed author group; the organization
    is the first comma-separated component of what remains.
    """
    orgs: list[str] = []
    for segment in raw.split(";"):
        segment = segment.strip()
        if not segment:
            continue
        if segment.startswith("["):
            close = segment.find("]")
            if close == -1:
                continue
            segment = segment[close + 1 :].strip()
        org = segment.split(",", 1)[0].strip().lower()
        if org and org not in orgs:
            orgs.append(org)
    return tuple(orgs)


def _parse_wos(data: bytes, id_prefix: str = "p") -> ParseResult:
    try:
        text = data.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise FormatError(f"paper export is not valid UTF-8: {exc}") from None
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("paper export is empty")
    header = lines[0].split("\t")
    tags = [h.strip().upper() for h in header]
    col = {tag: i for i, tag in enumerate(tags)}
    for required in ("TI", "PY"):
        if required not in col:
            raise FormatError(f"paper export header lacks required tag {required}")

    records: list[DocumentRecord] = []
    skipped = 0
    for row_number, line in enumerate(lines[1:], start=1):
        cells = line.split("\t")
        if len(cells) < len(tags):
            cells = cells + [""] * (len(tags) - len(cells))

        def cell(tag: str) -> str:
            idx = col.get(tag)
            return cells[idx].strip() if idx is not None else ""

        title = cell("TI")
        raw_year = cell("PY")
        if not title or not raw_year:
            skipped += 1
            continue
        try:
            year = int(raw_year)
        except ValueError:
            skipped += 1
            continue
        try:
            citations = int(cell("TC"))
        except ValueError:
            citations = 0
        authors = tuple(
            dict.fromkeys(
                _normalize_person(a) for a in cell("AU").split(";") if a.strip()
            )
        )
        records.append(
            DocumentRecord(
                id=f"{id_prefix}{row_number:05d}",
                kind=PAPER,
                year=year,
                title=title,
                abstract=cell("AB"),
                authors=authors,
                organizations=_parse_affiliations(cell("C1")),
                citations=max(0, citations),
            )
        )
    return ParseResult(records, skipped)


def parse_paper_export(
    data: bytes, format_hint: str = "wos_tab", id_prefix: str = "p"
) -> ParseResult:
    """Parse a paper export in the named format.

    Rows missing a title or a parseable year are skipped and counted.  Tab
    exports carry no ids, so generated ids number the raw data rows under
    ``id_prefix``; canonical CSV keeps its own ids.
    """
    if format_hint == "wos_tab":
        return _parse_wos(data, id_prefix)
    if format_hint == "canonical_csv":
        return ParseResult(read_canonical_csv(data), 0)
    raise FormatError(f"unknown paper export format: {format_hint!r}")


def parse_patent_export(data: bytes) -> ParseResult:
    """Parse a patent CSV with columns id, title, abstract, year."""
    try:
        text = data.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise FormatError(f"patent export is not valid UTF-8: {exc}") from None
    reader = csv.DictReader(io.StringIO(text))
    fieldnames = [f.strip().lower() for f in reader.fieldnames or []]
    required = {"id", "title", "abstract", "year"}
    if not required <= set(fieldnames):
        missing = sorted(required - set(fieldnames))
        raise FormatError(f"patent export header lacks columns: {', '.join(missing)}")

    records: list[DocumentRecord] = []
    seen: set[str] = set()
    skipped = 0
    for row in reader:
        row = {(k or "").strip().lower(): (v or "").strip() for k, v in row.items()}
        rid = row.get("id", "")
        title = row.get("title", "")
        if not rid or not title:
            skipped += 1
            continue
        if rid in seen:
            raise FormatError(f"duplicate patent id: {rid}")
        try:
            year = int(row.get("year", ""))
        except ValueError:
            skipped += 1
            continue
        seen.add(rid)
        records.append(
            DocumentRecord(
                id=rid,
                kind=PATENT,
                year=year,
                title=title,
                abstract=row.get("abstract", ""),
            )
        )
    return ParseResult(records, skipped)


@dataclass(frozen=True)
class Corpus:
    """Validated study corpus: unique ids, deduplicated papers, years in window."""

    records: tuple[DocumentRecord, ...]
    study_start: int
    study_end: int

    def __post_init__(self):
        if self.study_start > self.study_end:
            raise ValueError("study_start must not exceed study_end")
        if not self.records:
            raise ValueError("corpus has no records within the study window")
        ids: set[str] = set()
        paper_keys: set[tuple[str, int]] = set()
        for rec in self.records:
            if rec.id in ids:
                raise ValueError(f"duplicate record id in corpus: {rec.id}")
            ids.add(rec.id)
            if not (self.study_start <= rec.year <= self.study_end):
                raise ValueError(f"record {rec.id}: year {rec.year} outside study window")
            if rec.kind == PAPER:
                key = (_title_key(rec.title), rec.year)
                if key in paper_keys:
                    raise ValueError(f"duplicate paper title+year in corpus: {rec.id}")
                paper_keys.add(key)

    @property
    def years(self) -> range:
        return range(self.study_start, self.study_end + 1)

    def papers(self) -> list[DocumentRecord]:
        return [r for r in self.records if r.kind == PAPER]

    def patents(self) -> list[DocumentRecord]:
        return [r for r in self.records if r.kind == PATENT]


class BuildResult(NamedTuple):
    corpus: Corpus
    dropped_out_of_range: int
    dropped_duplicates: int


def _title_key(title: str) -> str:
    return " ".join(title.split()).lower()


def build_corpus(
    records: Iterable[DocumentRecord], study_start: int, study_end: int
) -> BuildResult:
    """Filter records to the study window and deduplicate.

    Duplicate ids keep the first occurrence; papers are additionally
    deduplicated on normalized title plus year.
    """
    if study_start > study_end:
        raise ValueError("study_start must not exceed study_end")
    kept: list[DocumentRecord] = []
    ids: set[str] = set()
    paper_keys: set[tuple[str, int]] = set()
    dropped_range = 0
    dropped_dupes = 0
    for rec in records:
        if not (study_start <= rec.year <= study_end):
            dropped_range += 1
            continue
        if rec.id in ids:
            dropped_dupes += 1
            continue
        if rec.kind == PAPER:
            key = (_title_key(rec.title), rec.year)
            if key in paper_keys:
                dropped_dupes += 1
                continue
            paper_keys.add(key)
        ids.add(rec.id)
        kept.append(rec)
    if not kept:
        raise ValueError(
            f"no records within study window {study_start}-{study_end}"
        )
    return BuildResult(Corpus(tuple(kept), study_start, study_end), dropped_range, dropped_dupes)


def write_canonical_csv(records: Iterable[DocumentRecord]) -> str:
    """Serialize records to the canonical CSV form."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CANONICAL_HEADER)
    for rec in records:
        writer.writerow(
            [
                rec.id,
                rec.kind,
                rec.year,
                rec.title,
                rec.abstract,
                _LIST_SEP.join(rec.authors),
                _LIST_SEP.join(rec.organizations),
                rec.citations,
            ]
        )
    return buf.getvalue()


def read_canonical_csv(data: bytes | str) -> list[DocumentRecord]:
    """Parse the canonical CSV form back into records."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8-sig")
        except UnicodeDecodeError as exc:
            raise FormatError(f"canonical CSV is not valid UTF-8: {exc}") from None
    reader = csv.reader(io.StringIO(data))
    try:
        header = tuple(next(reader))
    except StopIteration:
        raise FormatError("canonical CSV is empty") from None
    if header != CANONICAL_HEADER:
        raise FormatError(
            f"canonical CSV header mismatch: expected {','.join(CANONICAL_HEADER)}"
        )
    records: list[DocumentRecord] = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(CANONICAL_HEADER):
            raise FormatError(f"canonical CSV line {lineno}: wrong column count")
        rid, kind, year, title, abstract, authors, orgs, citations = row
        try:
            records.append(
                DocumentRecord(
                    id=rid,
                    kind=kind,
                    year=int(year),
                    title=title,
                    abstract=abstract,
                    authors=tuple(a for a in authors.split(_LIST_SEP) if a),
                    organizations=tuple(o for o in orgs.split(_LIST_SEP) if o),
                    citations=int(citations),
                )
            )
        except ValueError as exc:
            raise FormatError(f"canonical CSV line {lineno}: {exc}") from None
    return records
