"""emergekit: detect and rank emerging topics in bibliographic corpora.

The pipeline runs in stages: ingest raw exports into a canonical corpus,
extract and clump candidate terms, index term activity per year, score each
term with twelve indicator metrics summed into an emergence score, then
compare against TF-IDF, proxy-score, and co-occurrence baselines.
"""

from .baselines import (
    CooccurrenceEdge,
    CorpusTermCounts,
    cooccurrence,
    escore_proxy,
    escore_ranking,
    tfidf_ranking,
    tfidf_score,
)
from .config import RunConfig, load_config, parse_config
from .errors import ConfigError, EmergekitError, FormatError, MissingArtifactError
from .index import TermIndex, TermYearStats, build_index, load_index, match_term, window_stat
from .ingest import (
    Corpus,
    DocumentRecord,
    build_corpus,
    parse_paper_export,
    parse_patent_export,
    read_canonical_csv,
    write_canonical_csv,
)
from .metrics import (
    METRIC_NAMES,
    NOVELTY_X_MODES,
    MetricVector,
    StudyWindows,
    compute_all_metrics,
    compute_metric_vector,
    novelty_absolute,
    novelty_relative,
    ols_slope,
    slog,
    window_slope,
)
from .report import (
    CorrelationMatrix,
    correlation_matrix,
    pearson,
    pearson_with_flag,
    rank_terms,
    spearman_with_flag,
)
from .terms import (
    CandidatePhrase,
    Sidecar,
    TermTable,
    build_term_table,
    clump_terms,
    extract_candidates,
    rank_candidates,
)
from .textnorm import TokenSequence, lemmatize, normalize

__version__ = "0.1.0"

__all__ = [
    "CandidatePhrase",
    "ConfigError",
    "CooccurrenceEdge",
    "CorpusTermCounts",
    "CorrelationMatrix",
    "Corpus",
    "DocumentRecord",
    "EmergekitError",
    "FormatError",
    "METRIC_NAMES",
    "NOVELTY_X_MODES",
    "MetricVector",
    "MissingArtifactError",
    "RunConfig",
    "Sidecar",
    "StudyWindows",
    "TermIndex",
    "TermTable",
    "TermYearStats",
    "TokenSequence",
    "build_corpus",
    "build_index",
    "build_term_table",
    "clump_terms",
    "compute_all_metrics",
    "compute_metric_vector",
    "cooccurrence",
    "correlation_matrix",
    "escore_proxy",
    "escore_ranking",
    "extract_candidates",
    "lemmatize",
    "load_config",
    "load_index",
    "match_term",
    "normalize",
    "novelty_absolute",
    "novelty_relative",
    "ols_slope",
    "parse_config",
    "parse_paper_export",
    "parse_patent_export",
    "pearson",
    "pearson_with_flag",
    "rank_candidates",
    "rank_terms",
    "read_canonical_csv",
    "slog",
    "spearman_with_flag",
    "tfidf_ranking",
    "tfidf_score",
    "window_slope",
    "window_stat",
    "write_canonical_csv",
]
