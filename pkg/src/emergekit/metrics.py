"""The twelve indicator metrics and their additive emergence score.

All growth metrics share one scheme: aggregate a statistic over an early and
a late window, take the slope between window centers, then compress it with a
signed log.  Novelty rewards topics whose activity mass sits late in the
study period; the impact metrics log-compress citation and patent mass.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, fields
from typing import Iterable, Mapping, Sequence

from .errors import FormatError
from .index import TermIndex

METRIC_NAMES = (
    "collab_author_growth1",
    "collab_author_growth2",
    "collab_organization_growth1",
    "relative_growth",
    "technological_impact",
    "scientific_impact",
    "novelty",
    "novelty2",
    "long_term_growth",
    "long_term_growth2",
    "short_term_growth",
    "short_term_growth2",
)

METRICS_HEADER = ("term",) + METRIC_NAMES + ("emergence_score", "degenerate")

WINDOW_NAMES = (
    "first2",
    "first3",
    "first4",
    "first5",
    "first6",
    "first7",
    "relative",
    "prior2",
    "last2",
    "last3",
    "last4",
    "last5",
    "last6",
)


def slog(x: float) -> float:
    """Signed log compression: sign(x) * ln(1 + |x|).

    Total on all finite reals, strictly increasing, fixes 0.
    """
    if not math.isfinite(x):
        raise ValueError(f"slog needs a finite value, got {x!r}")
    return math.copysign(math.log1p(abs(x)), x)


def window_slope(
    series: Sequence[float], early: tuple[int, int], late: tuple[int, int]
) -> float:
    """Slope between two window sums, per year of center distance.

    Windows are inclusive 1-based index pairs into the series.
    """
    for name, (lo, hi) in (("early", tuple(early)), ("late", tuple(late))):
        if not (1 <= lo <= hi <= len(series)):
            raise ValueError(f"{name} window {lo}-{hi} outside series of length {len(series)}")
    return _center_slope(
        sum(series[early[0] - 1 : early[1]]),
        sum(series[late[0] - 1 : late[1]]),
        early,
        late,
    )


def _center(window: tuple[int, int]) -> float:
    return (window[0] + window[1]) / 2


def _center_slope(
    early_total: float, late_total: float, early: tuple[int, int], late: tuple[int, int]
) -> float:
    gap = _center(late) - _center(early)
    if gap <= 0:
        raise ValueError("late window center must come after early window center")
    return (late_total - early_total) / gap


def ols_slope(points: Iterable[tuple[float, float]]) -> float:
    """Least-squares slope through (x, y) points."""
    pts = list(points)
    if len(pts) < 2:
        raise ValueError("ols_slope needs at least two points")
    mean_x = sum(x for x, _ in pts) / len(pts)
    mean_y = sum(y for _, y in pts) / len(pts)
    sxx = sum((x - mean_x) ** 2 for x, _ in pts)
    if sxx == 0:
        raise ValueError("ols_slope needs at least two distinct x values")
    sxy = sum((x - mean_x) * (y - mean_y) for x, y in pts)
    return sxy / sxx


def novelty_relative(x: float) -> float:
    """Novelty from the share of early activity: 5 * e^(-10x), x in [0, 1]."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"novelty share must lie in [0, 1], got {x!r}")
    return 5.0 * math.exp(-10.0 * x)


def novelty_absolute(x: float) -> float:
    """Novelty from the early paper count: 5 * e^(-x), x >= 0."""
    if x < 0:
        raise ValueError(f"novelty count must be >= 0, got {x!r}")
    return 5.0 * math.exp(-float(x))


@dataclass(frozen=True)
class StudyWindows:
    """Named 1-based year-index windows the metrics read from.

    For a ten-year study period the standard layout applies; any other period
    length needs every window spelled out explicitly.
    """

    period: int
    first2: tuple[int, int]
    first3: tuple[int, int]
    first4: tuple[int, int]
    first5: tuple[int, int]
    first6: tuple[int, int]
    first7: tuple[int, int]
    relative: tuple[int, int]
    prior2: tuple[int, int]
    last2: tuple[int, int]
    last3: tuple[int, int]
    last4: tuple[int, int]
    last5: tuple[int, int]
    last6: tuple[int, int]

    def __post_init__(self):
        if self.period < 2:
            raise ValueError("study period must span at least two years")
        for name in WINDOW_NAMES:
            lo, hi = getattr(self, name)
            if not (1 <= lo <= hi <= self.period):
                raise ValueError(
                    f"window {name}={lo}-{hi} outside period of {self.period} years"
                )
        if self.relative[1] - self.relative[0] < 1:
            raise ValueError("relative-growth window needs at least two years")

    @classmethod
    def decade(cls) -> "StudyWindows":
        return cls(
            period=10,
            first2=(1, 2),
            first3=(1, 3),
            first4=(1, 4),
            first5=(1, 5),
            first6=(1, 6),
            first7=(1, 7),
            relative=(5, 10),
            prior2=(7, 8),
            last2=(9, 10),
            last3=(8, 10),
            last4=(7, 10),
            last5=(6, 10),
            last6=(5, 10),
        )

    @classmethod
    def for_period(cls, period: int) -> "StudyWindows":
        if period == 10:
            return cls.decade()
        raise ValueError(
            f"no standard window layout for a {period}-year period; configure windows explicitly"
        )

    @classmethod
    def from_mapping(cls, period: int, mapping: Mapping[str, tuple[int, int]]) -> "StudyWindows":
        missing = [n for n in WINDOW_NAMES if n not in mapping]
        if missing:
            raise ValueError(f"window layout lacks: {', '.join(missing)}")
        unknown = [n for n in mapping if n not in WINDOW_NAMES]
        if unknown:
            raise ValueError(f"unknown window names: {', '.join(sorted(unknown))}")
        return cls(period=period, **{n: tuple(mapping[n]) for n in WINDOW_NAMES})

    def mid_to_end(self, first_active: int) -> tuple[int, int]:
        """Window from the active period's midpoint to the last year."""
        if not (1 <= first_active <= self.period):
            raise ValueError("first_active outside the study period")
        return ((first_active + self.period) // 2, self.period)


@dataclass(frozen=True)
class MetricVector:
    """The twelve metrics for one term plus their sum.

    ``degenerate`` names the metrics whose inputs were undefined and were
    pinned to a convention instead of computed.
    """

    collab_author_growth1: float
    collab_author_growth2: float
    collab_organization_growth1: float
    relative_growth: float
    technological_impact: float
    scientific_impact: float
    novelty: float
    novelty2: float
    long_term_growth: float
    long_term_growth2: float
    short_term_growth: float
    short_term_growth2: float
    emergence_score: float
    degenerate: tuple[str, ...] = ()

    def __post_init__(self):
        for name in METRIC_NAMES + ("emergence_score",):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        # closed at zero: the exponentials underflow to 0.0 for huge inputs
        if not 0.0 <= self.novelty <= 5.0:
            raise ValueError("novelty must lie in [0, 5]")
        if not 0.0 <= self.novelty2 <= 5.0:
            raise ValueError("novelty2 must lie in [0, 5]")
        if self.scientific_impact < 0 or self.technological_impact < 0:
            raise ValueError("impact metrics must be non-negative")
        if self.emergence_score != sum(self.components()):
            raise ValueError("emergence_score must equal the sum of the twelve metrics")
        for name in self.degenerate:
            if name not in METRIC_NAMES:
                raise ValueError(f"unknown degenerate metric name: {name!r}")

    @classmethod
    def of(cls, degenerate: tuple[str, ...] = (), **metrics: float) -> "MetricVector":
        missing = [n for n in METRIC_NAMES if n not in metrics]
        if missing or set(metrics) - set(METRIC_NAMES):
            raise ValueError("exactly the twelve metric names are required")
        score = sum(metrics[n] for n in METRIC_NAMES)
        return cls(emergence_score=score, degenerate=tuple(degenerate), **metrics)

    def components(self) -> tuple[float, ...]:
        return tuple(getattr(self, n) for n in METRIC_NAMES)

    def as_dict(self) -> dict[str, float]:
        return {n: getattr(self, n) for n in METRIC_NAMES}


def first_active_index(series: Sequence[float]) -> int | None:
    """1-based index of the first nonzero entry, or None."""
    for i, value in enumerate(series, start=1):
        if value:
            return i
    return None


NOVELTY_X_MODES = ("fraction", "percent")


def compute_metric_vector(
    index: TermIndex,
    term: str,
    windows: StudyWindows | None = None,
    novelty_x_mode: str = "fraction",
) -> MetricVector:
    """Evaluate all twelve metrics for one term of the index.

    novelty_x_mode picks how the early share enters the novelty
    exponential: as a fraction in [0, 1] (default) or as percentage
    points, 100x.
    """
    if novelty_x_mode not in NOVELTY_X_MODES:
        raise ValueError(f"unknown novelty_x_mode: {novelty_x_mode!r}")
    if term not in index.terms:
        raise KeyError(term)
    if windows is None:
        windows = StudyWindows.for_period(index.n_years)
    if windows.period != index.n_years:
        raise ValueError(
            f"window layout spans {windows.period} years but the index spans {index.n_years}"
        )
    period = windows.period
    stats = index.terms[term]
    papers = stats.papers_binary
    degenerate: list[str] = []

    def wsum(series: Sequence[float], w: tuple[int, int]) -> float:
        return sum(series[w[0] - 1 : w[1]])

    def distinct(sets: list[set], w: tuple[int, int]) -> int:
        return len(set().union(*sets[w[0] - 1 : w[1]]))

    long_term_growth = slog(window_slope(papers, windows.first3, windows.last3))
    long_term_growth2 = slog(window_slope(papers, windows.first5, windows.last5))
    short_term_growth = slog(window_slope(papers, windows.prior2, windows.last2))

    first_active = first_active_index(papers)
    if first_active is None:
        short_term_growth2 = 0.0
        degenerate.append("short_term_growth2")
    else:
        lo, hi = windows.mid_to_end(first_active)
        if hi - lo < 1:
            short_term_growth2 = 0.0
            degenerate.append("short_term_growth2")
        else:
            short_term_growth2 = slog(
                ols_slope((i, papers[i - 1]) for i in range(lo, hi + 1))
            )

    share_points = []
    for i in range(windows.relative[0], windows.relative[1] + 1):
        total = index.total_papers[i - 1]
        share_points.append((i, 100.0 * papers[i - 1] / total if total else 0.0))
    relative_growth = slog(ols_slope(share_points))

    early_totals = wsum(index.total_papers, windows.first3)
    if early_totals:
        x = wsum(papers, windows.first3) / early_totals
    else:
        x = 0.0
        degenerate.append("novelty")
    if novelty_x_mode == "percent":
        novelty = 5.0 * math.exp(-10.0 * (100.0 * x))
    else:
        novelty = novelty_relative(x)
    novelty2 = novelty_absolute(wsum(papers, windows.first2))

    collab_author_growth1 = slog(
        _center_slope(
            distinct(stats.author_sets, windows.first7),
            distinct(stats.author_sets, windows.last3),
            windows.first7,
            windows.last3,
        )
    )
    collab_author_growth2 = slog(
        _center_slope(
            distinct(stats.author_sets, windows.first4),
            distinct(stats.author_sets, windows.last6),
            windows.first4,
            windows.last6,
        )
    )
    collab_organization_growth1 = slog(
        _center_slope(
            distinct(stats.org_sets, windows.first6),
            distinct(stats.org_sets, windows.last4),
            windows.first6,
            windows.last4,
        )
    )

    scientific_impact = math.log1p(sum(stats.citations) / period)
    technological_impact = math.log1p(wsum(stats.patents, windows.last2))

    return MetricVector.of(
        degenerate=tuple(degenerate),
        collab_author_growth1=collab_author_growth1,
        collab_author_growth2=collab_author_growth2,
        collab_organization_growth1=collab_organization_growth1,
        relative_growth=relative_growth,
        technological_impact=technological_impact,
        scientific_impact=scientific_impact,
        novelty=novelty,
        novelty2=novelty2,
        long_term_growth=long_term_growth,
        long_term_growth2=long_term_growth2,
        short_term_growth=short_term_growth,
        short_term_growth2=short_term_growth2,
    )


def compute_all_metrics(
    index: TermIndex,
    windows: StudyWindows | None = None,
    novelty_x_mode: str = "fraction",
) -> dict[str, MetricVector]:
    return {
        term: compute_metric_vector(index, term, windows, novelty_x_mode)
        for term in index.term_names()
    }


def write_metrics_csv(vectors: Mapping[str, MetricVector]) -> str:
    """Serialize metric vectors; floats use shortest round-trip form so the
    additivity invariant survives a reload bit-exactly."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(METRICS_HEADER)
    for term in sorted(vectors):
        vec = vectors[term]
        writer.writerow(
            [term]
            + [str(v) for v in vec.components()]
            + [str(vec.emergence_score), ";".join(vec.degenerate)]
        )
    return buf.getvalue()


def read_metrics_csv(text: str) -> dict[str, MetricVector]:
    reader = csv.reader(io.StringIO(text))
    try:
        header = tuple(next(reader))
    except StopIteration:
        raise FormatError("metrics CSV is empty") from None
    if header != METRICS_HEADER:
        raise FormatError(f"metrics CSV header mismatch: expected {','.join(METRICS_HEADER)}")
    out: dict[str, MetricVector] = {}
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(METRICS_HEADER):
            raise FormatError(f"metrics CSV line {lineno}: wrong column count")
        term = row[0]
        if term in out:
            raise FormatError(f"metrics CSV line {lineno}: duplicate term {term!r}")
        try:
            values = [float(v) for v in row[1:-1]]
        except ValueError:
            raise FormatError(f"metrics CSV line {lineno}: non-numeric value") from None
        degenerate = tuple(n for n in row[-1].split(";") if n)
        out[term] = MetricVector(*values, degenerate=degenerate)
    return out
