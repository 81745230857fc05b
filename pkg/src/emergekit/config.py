"""Run configuration: plain key=value files plus command-line overrides."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from pathlib import Path

from .errors import ConfigError
from .metrics import NOVELTY_X_MODES, WINDOW_NAMES

PAPER_FORMATS = ("wos_tab", "canonical_csv")
COUNTING_MODES = ("binary", "full")
RANKERS = ("statistical", "embedding")
CORRELATION_METHODS = ("pearson", "spearman")


@dataclass
class RunConfig:
    papers: tuple[str, ...] = ()
    patents: tuple[str, ...] = ()
    paper_format: str = "wos_tab"
    study_start: int | None = None
    study_end: int | None = None
    counting_mode: str = "binary"
    ranker: str = "statistical"
    sidecar: str | None = None
    top_k: int = 5
    min_doc_frequency: int = 3
    n_max: int = 4
    top_n: int = 50
    min_cooccurrence: int = 2
    novelty_x_mode: str = "fraction"
    correlation_method: str = "pearson"
    stopwords: str | None = None
    lemma_exceptions: str | None = None
    out: str = "out"
    windows: dict[str, tuple[int, int]] = field(default_factory=dict)

    def validate(self) -> "RunConfig":
        if self.paper_format not in PAPER_FORMATS:
            raise ConfigError(f"paper_format must be one of {', '.join(PAPER_FORMATS)}")
        if self.counting_mode not in COUNTING_MODES:
            raise ConfigError(f"counting_mode must be one of {', '.join(COUNTING_MODES)}")
        if self.ranker not in RANKERS:
            raise ConfigError(f"ranker must be one of {', '.join(RANKERS)}")
        if self.correlation_method not in CORRELATION_METHODS:
            raise ConfigError(
                f"correlation_method must be one of {', '.join(CORRELATION_METHODS)}"
            )
        if self.novelty_x_mode not in NOVELTY_X_MODES:
            raise ConfigError(
                f"novelty_x_mode must be one of {', '.join(NOVELTY_X_MODES)}"
            )
        for name in ("top_k", "min_doc_frequency", "n_max", "top_n", "min_cooccurrence"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be >= 1")
        if (
            self.study_start is not None
            and self.study_end is not None
            and self.study_start > self.study_end
        ):
            raise ConfigError("study_start must not exceed study_end")
        if self.ranker == "embedding" and not self.sidecar:
            raise ConfigError("the embedding ranker needs a sidecar path")
        for name, (lo, hi) in self.windows.items():
            if name not in WINDOW_NAMES:
                raise ConfigError(f"unknown window name: {name}")
            if lo < 1 or hi < lo:
                raise ConfigError(f"window {name} must satisfy 1 <= lo <= hi")
        return self


_INT_KEYS = ("study_start", "study_end", "top_k", "min_doc_frequency",
             "n_max", "top_n", "min_cooccurrence")
_STR_KEYS = ("paper_format", "counting_mode", "ranker", "sidecar",
             "novelty_x_mode", "correlation_method", "stopwords",
             "lemma_exceptions", "out")
_LIST_KEYS = ("papers", "patents")


def parse_config(text: str, source: str = "<config>") -> RunConfig:
    cfg = RunConfig()
    lists: dict[str, list[str]] = {"papers": [], "patents": []}
    windows: dict[str, tuple[int, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"{source} line {lineno}: expected key = value")
        key, value = key.strip(), value.strip()
        if key in _LIST_KEYS:
            if not value:
                raise ConfigError(f"{source} line {lineno}: {key} needs a path")
            lists[key].append(value)
        elif key in _INT_KEYS:
            try:
                setattr(cfg, key, int(value))
            except ValueError:
                raise ConfigError(f"{source} line {lineno}: {key} must be an integer") from None
        elif key in _STR_KEYS:
            setattr(cfg, key, value)
        elif key.startswith("window."):
            name = key[len("window.") :]
            if name not in WINDOW_NAMES:
                raise ConfigError(f"{source} line {lineno}: unknown window name {name!r}")
            lo, _, hi = value.partition(":")
            try:
                bounds = (int(lo), int(hi))
            except ValueError:
                raise ConfigError(
                    f"{source} line {lineno}: window {name} must be lo:hi"
                ) from None
            if bounds[0] < 1 or bounds[1] < bounds[0]:
                raise ConfigError(
                    f"{source} line {lineno}: window {name} bounds must satisfy 1 <= lo <= hi"
                )
            windows[name] = bounds
        else:
            raise ConfigError(f"{source} line {lineno}: unknown config key {key!r}")
    cfg.papers = tuple(lists["papers"])
    cfg.patents = tuple(lists["patents"])
    cfg.windows = windows
    return cfg


def load_config(path) -> RunConfig:
    p = Path(path)
    if not p.exists():
        raise ConfigError(f"config file not found: {p}")
    return parse_config(p.read_text("utf-8"), source=str(p))
