"""Shared fixture helpers for building tiny corpora."""

import sys

from emergekit.ingest import Corpus, DocumentRecord


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Print one checklist line per acceptance guarantee that ran."""
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance checklist")
    for name, status in results:
        terminalreporter.write_line(f"[acceptance] {name}: {status}")


def make_paper(
    rid,
    year,
    title,
    abstract="",
    authors=(),
    organizations=(),
    citations=0,
):
    return DocumentRecord(
        id=rid,
        kind="paper",
        year=year,
        title=title,
        abstract=abstract,
        authors=tuple(authors),
        organizations=tuple(organizations),
        citations=citations,
    )


def make_patent(rid, year, title, abstract=""):
    return DocumentRecord(id=rid, kind="patent", year=year, title=title, abstract=abstract)


def make_corpus(records, start=2010, end=2019):
    return Corpus(tuple(records), start, end)
