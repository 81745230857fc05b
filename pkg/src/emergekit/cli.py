"""Command-line interface: staged batch pipeline with file artifacts.

Each stage reads the artifacts of earlier stages from the output directory
and writes its own.  Exit codes: 0 success, 1 invalid configuration or bad
input data, 2 missing artifact from an earlier stage.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import baselines, ingest, metrics, report, terms
from .config import (
    COUNTING_MODES,
    PAPER_FORMATS,
    RANKERS,
    RunConfig,
    load_config,
)
from .errors import ConfigError, EmergekitError, MissingArtifactError
from .index import build_index, load_index, write_entities_csv, write_index_csv, write_totals_csv
from .metrics import StudyWindows, compute_all_metrics, read_metrics_csv, write_metrics_csv
from .terms import Sidecar, TermTable, build_term_table, candidate_phrases
from .textnorm import load_lemma_exceptions, load_stopwords

CORPUS_CSV = "corpus.csv"
CANDIDATES_TSV = "candidates.tsv"
TERM_TABLE_TSV = "term_table.tsv"
INDEX_CSV = "index.csv"
TOTALS_CSV = "index_totals.csv"
ENTITIES_CSV = "index_entities.csv"
METRICS_CSV = "metrics.csv"
RANKING_CSV = "ranking.csv"
TRENDS_CSV = "trends.csv"
CORRELATION_CSV = "correlation.csv"
BASELINE_TFIDF_CSV = "baseline_tfidf.csv"
BASELINE_ESCORE_CSV = "baseline_escore.csv"
EDGES_TSV = "cooccurrence_edges.tsv"
TERM_FREQUENCY_CSV = "term_record_frequency.csv"

LOCK_FILE = ".lock"


def _read(path: Path) -> str:
    if not path.exists():
        raise MissingArtifactError(path)
    return path.read_text("utf-8")


def _write(path: Path, text: str) -> None:
    path.write_text(text, encoding="utf-8")
    print(f"wrote {path}")


def _norm_tables(cfg: RunConfig):
    stopwords = load_stopwords(cfg.stopwords) if cfg.stopwords else None
    exceptions = load_lemma_exceptions(cfg.lemma_exceptions) if cfg.lemma_exceptions else None
    return stopwords, exceptions


def _load_corpus(cfg: RunConfig, out: Path) -> ingest.Corpus:
    records = ingest.read_canonical_csv(_read(out / CORPUS_CSV))
    if not records:
        raise ConfigError(f"{out / CORPUS_CSV} holds no records")
    start = cfg.study_start if cfg.study_start is not None else min(r.year for r in records)
    end = cfg.study_end if cfg.study_end is not None else max(r.year for r in records)
    return ingest.Corpus(tuple(records), start, end)


def _load_term_table(out: Path) -> TermTable:
    return TermTable.from_tsv(_read(out / TERM_TABLE_TSV))


def _load_index(out: Path):
    return load_index(
        _read(out / INDEX_CSV), _read(out / TOTALS_CSV), _read(out / ENTITIES_CSV)
    )


def stage_ingest(cfg: RunConfig, out: Path) -> None:
    if not cfg.papers:
        raise ConfigError("no paper inputs configured (papers = <path>)")
    if cfg.study_start is None or cfg.study_end is None:
        raise ConfigError("ingest needs study_start and study_end")
    records = []
    skipped = 0
    for i, path in enumerate(cfg.papers, start=1):
        p = Path(path)
        if not p.exists():
            raise ConfigError(f"paper input not found: {p}")
        prefix = "p" if len(cfg.papers) == 1 else f"p{i}."
        parsed = ingest.parse_paper_export(p.read_bytes(), cfg.paper_format, prefix)
        records.extend(parsed.records)
        skipped += parsed.skipped
    for path in cfg.patents:
        p = Path(path)
        if not p.exists():
            raise ConfigError(f"patent input not found: {p}")
        parsed = ingest.parse_patent_export(p.read_bytes())
        records.extend(parsed.records)
        skipped += parsed.skipped
    try:
        corpus, dropped_range, dropped_dupes = ingest.build_corpus(
            records, cfg.study_start, cfg.study_end
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    _write(out / CORPUS_CSV, ingest.write_canonical_csv(corpus.records))
    print(
        f"ingest: kept {len(corpus.records)} records "
        f"({len(corpus.papers())} papers, {len(corpus.patents())} patents), "
        f"dropped {dropped_range} outside {cfg.study_start}-{cfg.study_end}, "
        f"{dropped_dupes} duplicates, skipped {skipped} malformed rows"
    )


def stage_terms(cfg: RunConfig, out: Path) -> None:
    corpus = _load_corpus(cfg, out)
    sidecar = None
    if cfg.ranker == "embedding":
        sidecar_path = Path(cfg.sidecar)
        if not sidecar_path.exists():
            raise MissingArtifactError(sidecar_path)
        sidecar = Sidecar.load(sidecar_path)
    stopwords, exceptions = _norm_tables(cfg)
    table, stats = build_term_table(
        corpus,
        ranker=cfg.ranker,
        top_k=cfg.top_k,
        n_max=cfg.n_max,
        min_doc_frequency=cfg.min_doc_frequency,
        sidecar=sidecar,
        stopwords=stopwords,
        lemma_exceptions=exceptions,
    )
    lines = ["candidate\tdoc_frequency\tsurface"]
    lines.extend(
        f"{c.text}\t{c.doc_frequency}\t{c.surface}" for c in candidate_phrases(stats)
    )
    _write(out / CANDIDATES_TSV, "\n".join(lines) + "\n")
    _write(out / TERM_TABLE_TSV, table.to_tsv())
    print(f"terms: {len(table.entries)} canonical terms from {len(stats.record_ids)} candidates")


def stage_index(cfg: RunConfig, out: Path) -> None:
    corpus = _load_corpus(cfg, out)
    table = _load_term_table(out)
    stopwords, exceptions = _norm_tables(cfg)
    try:
        index = build_index(corpus, table, cfg.counting_mode, stopwords, exceptions)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    _write(out / INDEX_CSV, write_index_csv(index))
    _write(out / TOTALS_CSV, write_totals_csv(index))
    _write(out / ENTITIES_CSV, write_entities_csv(index))
    print(f"index: {len(index.terms)} terms over {index.study_start}-{index.study_end}")


def _study_windows(cfg: RunConfig, n_years: int) -> StudyWindows:
    try:
        if cfg.windows:
            return StudyWindows.from_mapping(n_years, cfg.windows)
        return StudyWindows.for_period(n_years)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def stage_score(cfg: RunConfig, out: Path) -> None:
    index = _load_index(out)
    windows = _study_windows(cfg, index.n_years)
    vectors = compute_all_metrics(index, windows, novelty_x_mode=cfg.novelty_x_mode)
    _write(out / METRICS_CSV, write_metrics_csv(vectors))
    degenerate = sum(1 for v in vectors.values() if v.degenerate)
    print(f"score: {len(vectors)} terms, {degenerate} with degenerate inputs")


def stage_baseline_tfidf(cfg: RunConfig, out: Path) -> None:
    corpus = _load_corpus(cfg, out)
    table = _load_term_table(out)
    scores = baselines.tfidf_ranking(corpus, table)
    _write(out / BASELINE_TFIDF_CSV, baselines.write_score_csv(scores))
    print(f"baseline tfidf: {len(scores)} terms")


def stage_baseline_escore(cfg: RunConfig, out: Path) -> None:
    index = _load_index(out)
    try:
        scores = baselines.escore_ranking(index)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    _write(out / BASELINE_ESCORE_CSV, baselines.write_score_csv(scores))
    print(f"baseline escore: {len(scores)} terms")


def stage_baseline_cooccur(cfg: RunConfig, out: Path) -> None:
    corpus = _load_corpus(cfg, out)
    table = _load_term_table(out)
    edges, freq = baselines.cooccurrence(corpus, table, cfg.min_cooccurrence)
    _write(out / EDGES_TSV, baselines.write_edges_tsv(edges))
    _write(out / TERM_FREQUENCY_CSV, baselines.write_record_frequency_csv(freq))
    print(f"baseline cooccur: {len(edges)} edges at min_count={cfg.min_cooccurrence}")


def stage_correlate(cfg: RunConfig, out: Path) -> None:
    vectors = read_metrics_csv(_read(out / METRICS_CSV))
    try:
        matrix = report.correlation_matrix(vectors, cfg.correlation_method)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    _write(out / CORRELATION_CSV, report.write_correlation_csv(matrix))
    print(
        f"correlate: {cfg.correlation_method} over {len(vectors)} terms, "
        f"{len(matrix.degenerate_pairs) // 2} degenerate pairs"
    )


def stage_report(cfg: RunConfig, out: Path) -> None:
    vectors = read_metrics_csv(_read(out / METRICS_CSV))
    index = _load_index(out)
    if not vectors:
        raise ConfigError(f"{out / METRICS_CSV} holds no terms")
    _write(out / RANKING_CSV, report.write_ranking_csv(vectors, cfg.top_n))
    ranked = report.rank_terms(
        {t: v.emergence_score for t, v in vectors.items()}, cfg.top_n
    )
    _write(out / TRENDS_CSV, report.write_trends_csv(index, ranked))
    print(f"report: top {len(ranked)} of {len(vectors)} terms")


STAGES = {
    "ingest": stage_ingest,
    "terms": stage_terms,
    "index": stage_index,
    "score": stage_score,
    "correlate": stage_correlate,
    "report": stage_report,
}

BASELINES = {
    "tfidf": stage_baseline_tfidf,
    "escore": stage_baseline_escore,
    "cooccur": stage_baseline_cooccur,
}

PIPELINE_ORDER = (
    "ingest",
    "terms",
    "index",
    "score",
    "baseline tfidf",
    "baseline escore",
    "baseline cooccur",
    "correlate",
    "report",
)


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value configuration file")
    common.add_argument("--out", help="output directory for artifacts")
    common.add_argument("--mode", choices=COUNTING_MODES, help="term counting mode")
    common.add_argument("--ranker", choices=RANKERS, help="candidate ranking method")
    common.add_argument("--sidecar", help="embedding sidecar file")
    common.add_argument("--top-n", type=int, dest="top_n", help="ranking size in reports")
    common.add_argument("--papers", action="append", help="paper export (repeatable)")
    common.add_argument("--patents", action="append", help="patent CSV (repeatable)")
    common.add_argument("--paper-format", choices=PAPER_FORMATS, dest="paper_format")
    common.add_argument("--start", type=int, help="first study year")
    common.add_argument("--end", type=int, help="last study year")

    parser = argparse.ArgumentParser(
        prog="emergekit",
        description="Detect and rank emerging topics in a bibliographic corpus.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("ingest", "parse inputs into the canonical corpus"),
        ("terms", "extract and clump candidate terms"),
        ("index", "build the term-year index"),
        ("score", "compute the twelve metrics and emergence score"),
        ("correlate", "correlate metrics across terms"),
        ("report", "write ranking and trend tables"),
        ("pipeline", "run every stage in order"),
    ):
        sub.add_parser(name, parents=[common], help=text)
    baseline = sub.add_parser("baseline", parents=[common], help="run a comparison ranker")
    baseline.add_argument("which", choices=sorted(BASELINES), help="baseline to run")
    return parser


def _apply_overrides(cfg: RunConfig, args: argparse.Namespace) -> RunConfig:
    if args.out is not None:
        cfg.out = args.out
    if args.mode is not None:
        cfg.counting_mode = args.mode
    if args.ranker is not None:
        cfg.ranker = args.ranker
    if args.sidecar is not None:
        cfg.sidecar = args.sidecar
    if args.top_n is not None:
        cfg.top_n = args.top_n
    if args.papers:
        cfg.papers = tuple(args.papers)
    if args.patents:
        cfg.patents = tuple(args.patents)
    if args.paper_format is not None:
        cfg.paper_format = args.paper_format
    if args.start is not None:
        cfg.study_start = args.start
    if args.end is not None:
        cfg.study_end = args.end
    return cfg


class _OutputLock:
    """Exclusive marker file so concurrent runs cannot interleave artifacts."""

    def __init__(self, out: Path):
        self.path = out / LOCK_FILE
        self.fd = None

    def __enter__(self):
        try:
            self.fd = os.open(self.path, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
        except FileExistsError:
            raise ConfigError(
                f"output directory is locked by another run ({self.path}); "
                "remove the file if that run is gone"
            ) from None
        return self

    def __exit__(self, *exc):
        if self.fd is not None:
            os.close(self.fd)
            self.path.unlink(missing_ok=True)
        return False


def run(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config) if args.config else RunConfig()
        _apply_overrides(cfg, args).validate()
        out = Path(cfg.out)
        out.mkdir(parents=True, exist_ok=True)
        with _OutputLock(out):
            if args.command == "pipeline":
                for step in PIPELINE_ORDER:
                    if step.startswith("baseline "):
                        BASELINES[step.split()[1]](cfg, out)
                    else:
                        STAGES[step](cfg, out)
            elif args.command == "baseline":
                BASELINES[args.which](cfg, out)
            else:
                STAGES[args.command](cfg, out)
    except MissingArtifactError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (EmergekitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
