"""Acceptance checklist: one test per toolkit-level guarantee.

Each test prints a single "[acceptance] <name>: PASS/FAIL" line straight to
the terminal (bypassing capture) so a full run reads as a checklist.  Checks
with a runtime budget fail when they exceed it.
"""

import functools
import math
import random
import sys
import time
from pathlib import Path

import pytest

from conftest import make_corpus, make_paper, make_patent
from emergekit import cli
from emergekit.baselines import cooccurrence, tfidf_ranking
from emergekit.index import TermIndex, TermYearStats, build_index
from emergekit.metrics import (
    METRIC_NAMES,
    MetricVector,
    compute_all_metrics,
    compute_metric_vector,
    novelty_absolute,
    novelty_relative,
    slog,
)
from emergekit.report import correlation_matrix, rank_terms
from emergekit.terms import TermTable
from oracles import (
    naive_cooccurrence,
    naive_index,
    naive_metrics,
    naive_pearson,
    naive_tfidf,
)

DATA = Path(__file__).parent / "data"


RESULTS: list[tuple[str, str]] = []


def criterion(name, budget=None):
    """Wrap a test so it reports one checklist line and honors a time budget."""

    def say(status):
        RESULTS.append((name, status))
        print(f"[acceptance] {name}: {status}", file=sys.__stdout__, flush=True)

    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            started = time.perf_counter()
            try:
                fn(*args, **kwargs)
            except BaseException:
                say("FAIL")
                raise
            elapsed = time.perf_counter() - started
            if budget is not None and elapsed > budget:
                say(f"FAIL (ran {elapsed:.2f}s, budget {budget:.0f}s)")
                raise AssertionError(f"{name} exceeded {budget}s: {elapsed:.2f}s")
            say("PASS")

        return wrapper

    return deco


@criterion("formula spot checks", budget=1.0)
def test_formula_spot_checks():
    assert novelty_relative(0.0) == pytest.approx(5.0, abs=1e-9)
    assert novelty_relative(0.1) == pytest.approx(5.0 * math.exp(-1.0), abs=1e-9)
    assert novelty_absolute(1.0) == pytest.approx(5.0 / math.e, abs=1e-9)
    assert slog(math.e - 1.0) == pytest.approx(1.0, abs=1e-9)


@criterion("additivity of the emergence score")
def test_additivity_over_randomized_vectors():
    rng = random.Random(7)
    for _ in range(1000):
        vector = MetricVector.of(
            collab_author_growth1=rng.uniform(-50, 50),
            collab_author_growth2=rng.uniform(-50, 50),
            collab_organization_growth1=rng.uniform(-50, 50),
            relative_growth=rng.uniform(-50, 50),
            technological_impact=rng.uniform(0, 10),
            scientific_impact=rng.uniform(0, 10),
            novelty=rng.uniform(1e-6, 5.0),
            novelty2=rng.uniform(1e-6, 5.0),
            long_term_growth=rng.uniform(-50, 50),
            long_term_growth2=rng.uniform(-50, 50),
            short_term_growth=rng.uniform(-50, 50),
            short_term_growth2=rng.uniform(-50, 50),
        )
        assert abs(vector.emergence_score - sum(vector.components())) <= 1e-12


def mixed_fixture():
    """Sixteen records, two terms, both kinds, uneven coverage."""
    papers = [
        make_paper("a1", 2010, "Gene editing arrives", "Gene editing tools mature.",
                   ["Ada", "Bo"], ["mit"], 12),
        make_paper("a2", 2011, "Crop traits", "Plain agronomy without the phrase.",
                   ["Cy"], ["kit"], 3),
        make_paper("a3", 2012, "Gene editing in crops", "Field trials of gene editing.",
                   ["Ada", "Dee"], ["mit", "eth"], 8),
        make_paper("a4", 2013, "Crispr screens", "A crispr library screen.",
                   ["Eve"], ["kit"], 20),
        make_paper("a5", 2014, "Crispr and gene editing", "Crispr based gene editing.",
                   ["Bo", "Eve"], ["eth"], 15),
        make_paper("a6", 2015, "Delivery vectors", "Vectors for therapy.",
                   ["Fay"], ["uio"], 1),
        make_paper("a7", 2016, "Gene editing safety", "Off target effects of gene editing.",
                   ["Gil", "Ada"], ["mit"], 9),
        make_paper("a8", 2017, "Crispr diagnostics", "Crispr as a sensor. Crispr again.",
                   ["Hal"], ["uio", "kit"], 5),
        make_paper("a9", 2018, "Gene editing clinics", "First gene editing trials.",
                   ["Ivy", "Gil"], ["eth"], 2),
        make_paper("a10", 2018, "Base calling", "Sequencing pipelines.",
                   ["Jon"], ["mit"], 4),
        make_paper("a11", 2019, "Gene editing review", "Gene editing and crispr summary.",
                   ["Kim", "Ivy"], ["kit", "uio"], 1),
        make_paper("a12", 2019, "Crispr patents", "The crispr landscape.",
                   ["Lee"], ["mit"], 0),
    ]
    patents = [
        make_patent("p1", 2016, "Gene editing apparatus", "A gene editing system."),
        make_patent("p2", 2018, "Crispr kit", "Reagents for crispr assays."),
        make_patent("p3", 2019, "Gene editing delivery", "Delivery of gene editing payloads."),
        make_patent("p4", 2019, "Sequencer", "An unrelated instrument."),
    ]
    table = TermTable(
        {
            "gene editing": frozenset({("gene", "editing")}),
            "crispr": frozenset({("crispr",)}),
        }
    )
    return make_corpus(papers + patents), table


def gapped_fixture():
    """Papers only, with empty years in the middle of the decade."""
    papers = [
        make_paper("b1", 2010, "Solvent study", "Solvent free synthesis.", ["A"], ["x"], 6),
        make_paper("b2", 2011, "Solvent free routes", "More solvent free work.", ["B"], ["y"], 4),
        make_paper("b3", 2014, "Catalysis", "Solvent free catalysis.", ["A", "C"], ["x"], 7),
        make_paper("b4", 2017, "Green chemistry", "No match here.", ["D"], ["z"], 2),
        make_paper("b5", 2019, "Solvent free scale up", "Industrial solvent free runs.",
                   ["E", "B"], ["y", "z"], 1),
    ]
    table = TermTable({"solvent free": frozenset({("solvent", "free")})})
    return make_corpus(papers), table


def burst_fixture():
    """Single active year at the end of the decade."""
    papers = [
        make_paper("c1", 2018, "Quiet field", "Nothing to see.", ["A"], ["x"], 0),
        make_paper("c2", 2019, "Ion trap arrays", "Ion trap results. Ion trap designs.",
                   ["B", "C"], ["y"], 3),
        make_paper("c3", 2019, "Ion trap control", "Control of an ion trap.", ["C"], ["y"], 1),
    ]
    table = TermTable({"ion trap": frozenset({("ion", "trap")})})
    return make_corpus(papers), table


@criterion("oracle equivalence on small fixtures", budget=5.0)
def test_oracle_equivalence_on_small_fixtures():
    for corpus, table in [mixed_fixture(), gapped_fixture(), burst_fixture()]:
        assert len(corpus.records) <= 20
        index = build_index(corpus, table)
        rows_by_term, totals = naive_index(corpus, table)
        years = list(corpus.years)

        for y, year in enumerate(years):
            assert index.total_papers[y] == totals[year]["papers"]
            assert index.total_patents[y] == totals[year]["patents"]

        tfidf = tfidf_ranking(corpus, table)
        for term, rows in rows_by_term.items():
            stats = index.terms[term]
            for y, year in enumerate(years):
                assert stats.papers_binary[y] == rows[year]["papers_binary"]
                assert stats.papers_full[y] == rows[year]["papers_full"]
                assert stats.citations[y] == rows[year]["citations"]
                assert stats.patents[y] == rows[year]["patents"]
                assert stats.author_sets[y] == rows[year]["authors"]
                assert stats.org_sets[y] == rows[year]["orgs"]

            expected = naive_metrics(rows, totals, corpus.study_start, corpus.study_end)
            vector = compute_metric_vector(index, term)
            for name in METRIC_NAMES:
                assert getattr(vector, name) == pytest.approx(expected[name], abs=1e-12)
            assert vector.emergence_score == pytest.approx(
                expected["emergence_score"], abs=1e-12
            )

            assert tfidf[term] == pytest.approx(naive_tfidf(corpus, table, term), abs=1e-12)

        edges, freq = cooccurrence(corpus, table, min_count=1)
        oracle_edges, oracle_freq = naive_cooccurrence(corpus, table, min_count=1)
        assert {(e.term_a, e.term_b): e.count for e in edges} == oracle_edges
        assert freq == oracle_freq


def planted_corpus():
    """Ten-year synthetic corpus with three planted trajectories."""
    rng = random.Random(42)
    years = list(range(2010, 2020))
    emergent = [0, 0, 0, 0, 0, 1, 2, 5, 10, 18]
    hot = [10] * 10
    declining = [12, 10, 8, 7, 5, 4, 3, 2, 1, 0]
    filler = [2, 1, 1, 1, 1, 1, 1, 1, 2, 1]

    records = []
    serial = 0

    def add(year, title, abstract, authors, orgs, citations):
        nonlocal serial
        serial += 1
        records.append(
            make_paper(f"r{serial:04d}", year, title, abstract, authors, orgs, citations)
        )

    for y, year in enumerate(years):
        for k in range(emergent[y]):
            author_pool = [f"em{n}" for n in range(3 * y + 2 * k + 2)]
            add(
                year,
                f"Plasmonic resonator advances {y} {k}",
                "A plasmonic resonator with sharper lines.",
                rng.sample(author_pool, 2),
                [f"org_em{(y + k) % 6}"],
                rng.randint(1, 4),
            )
        for k in range(hot[y]):
            add(
                year,
                f"Neural network results {y} {k}",
                "A neural network baseline. The neural network wins. "
                "This neural network is tuned.",
                [f"hot{(k + j) % 12}" for j in range(2)],
                [f"org_hot{k % 4}"],
                rng.randint(15, 25),
            )
        for k in range(declining[y]):
            add(
                year,
                f"Expert system maintenance {y} {k}",
                "Keeping an expert system alive.",
                [f"dec{(k + y) % 15}"],
                [f"org_dec{k % 5}"],
                rng.randint(1, 5),
            )
        for k in range(filler[y]):
            add(
                year,
                f"Miscellany volume {y} part {k}",
                "Unrelated housekeeping notes.",
                [f"misc{y}_{k}"],
                ["org_misc"],
                rng.randint(0, 3),
            )

    patents = [
        make_patent("pt1", 2018, "Plasmonic resonator device", "A plasmonic resonator sensor."),
        make_patent("pt2", 2019, "Plasmonic resonator array", "Stacked plasmonic resonator."),
        make_patent("pt3", 2019, "Plasmonic resonator filter", "A plasmonic resonator filter."),
        make_patent("pt4", 2018, "Neural network chip", "A neural network accelerator."),
        make_patent("pt5", 2019, "Valve assembly", "Unrelated hardware."),
    ]
    table = TermTable(
        {
            "plasmonic resonator": frozenset({("plasmonic", "resonator")}),
            "neural network": frozenset({("neural", "network")}),
            "expert system": frozenset({("expert", "system")}),
        }
    )
    return make_corpus(records + patents), table


@criterion("planted-profile ranking", budget=10.0)
def test_planted_profiles_separate_rankers():
    corpus, table = planted_corpus()
    papers = sum(1 for r in corpus.records if r.kind == "paper")
    assert 180 <= papers <= 220

    index = build_index(corpus, table)
    vectors = compute_all_metrics(index)
    scores = {term: v.emergence_score for term, v in vectors.items()}
    assert scores["plasmonic resonator"] > scores["neural network"]
    assert scores["neural network"] > scores["expert system"]
    order = rank_terms(scores)
    assert order[0] == "plasmonic resonator"

    tfidf = tfidf_ranking(corpus, table)
    assert tfidf["neural network"] > tfidf["plasmonic resonator"]
    assert tfidf["neural network"] > tfidf["expert system"]
    assert rank_terms(tfidf)[0] == "neural network"


def single_term_index(papers, totals=None):
    stats = TermYearStats(10)
    stats.papers_binary = list(papers)
    stats.papers_full = list(papers)
    return TermIndex(
        study_start=2010,
        study_end=2019,
        terms={"t": stats},
        total_papers=list(totals) if totals else [100] * 10,
        total_patents=[0] * 10,
    )


GROWTH_NAMES = (
    "long_term_growth",
    "long_term_growth2",
    "short_term_growth",
    "short_term_growth2",
    "relative_growth",
)


@criterion("monotonicity and bounds", budget=5.0)
def test_monotonicity_and_bounds():
    rng = random.Random(11)

    xs = sorted({rng.uniform(0.0, 1.0) for _ in range(200)})
    values = [novelty_relative(x) for x in xs]
    for left, right in zip(values, values[1:]):
        assert right < left
    for v in values:
        assert 0.0 < v <= 5.0

    for _ in range(200):
        series = [rng.randint(0, 20) for _ in range(10)]
        bumped = list(series)
        bumped[9] += rng.randint(1, 6)
        base = compute_metric_vector(single_term_index(series), "t")
        more = compute_metric_vector(single_term_index(bumped), "t")
        for name in GROWTH_NAMES:
            assert getattr(more, name) >= getattr(base, name) - 1e-12, name
        assert 0.0 < base.novelty <= 5.0
        assert 0.0 < base.novelty2 <= 5.0


@criterion("correlation structure")
def test_correlation_matrix_structure():
    rng = random.Random(5)
    terms = {}
    for t in range(60):
        stats = TermYearStats(10)
        stats.papers_binary = [rng.randint(0, 15) for _ in range(10)]
        stats.papers_full = list(stats.papers_binary)
        stats.citations = [rng.randint(0, 30) for _ in range(10)]
        stats.patents = [rng.randint(0, 2) for _ in range(10)]
        stats.author_sets = [
            {f"a{rng.randint(0, 40)}" for _ in range(rng.randint(0, 6))} for _ in range(10)
        ]
        stats.org_sets = [
            {f"o{rng.randint(0, 12)}" for _ in range(rng.randint(0, 3))} for _ in range(10)
        ]
        terms[f"term{t:02d}"] = stats
    index = TermIndex(
        study_start=2010,
        study_end=2019,
        terms=terms,
        total_papers=[rng.randint(150, 250) for _ in range(10)],
        total_patents=[rng.randint(0, 9) for _ in range(10)],
    )
    vectors = compute_all_metrics(index)
    assert len(vectors) >= 50

    matrix = correlation_matrix(vectors)
    n = len(matrix.labels)
    columns = {
        label: [getattr(v, label) for v in vectors.values()]
        if label != "Emergence_Score"
        else [v.emergence_score for v in vectors.values()]
        for label in matrix.labels
    }
    for i in range(n):
        for j in range(n):
            value = matrix.values[i][j]
            assert abs(value - matrix.values[j][i]) <= 1e-12
            assert -1.0 <= value <= 1.0
            expected = 1.0 if i == j else naive_pearson(columns[matrix.labels[i]],
                                                        columns[matrix.labels[j]])
            if (matrix.labels[i], matrix.labels[j]) in matrix.degenerate_pairs:
                expected = 0.0
            assert value == pytest.approx(expected, abs=1e-12)


@criterion("pipeline determinism")
def test_pipeline_runs_are_byte_identical(tmp_path):
    outputs = []
    for run in ("a", "b"):
        out = tmp_path / run
        cfg = tmp_path / f"{run}.cfg"
        cfg.write_text(
            f"papers = {DATA / 'papers_wos.txt'}\n"
            f"patents = {DATA / 'patents.csv'}\n"
            "study_start = 2010\nstudy_end = 2019\n"
            f"out = {out}\n",
            encoding="utf-8",
        )
        assert cli.run(["pipeline", "--config", str(cfg)]) == 0
        outputs.append(
            {p.name: p.read_bytes() for p in sorted(out.iterdir())}
        )
    assert outputs[0] == outputs[1]


PUBLISHED_RANKING = [
    ("convolutional neural network", 63.05),
    ("deep reinforcement learning", 55.40),
    ("machine learning models", 53.18),
    ("medical imaging", 51.90),
    ("big data", 51.56),
    ("IoT", 51.44),
    ("random forest", 51.22),
    ("image analysis", 51.21),
    ("deep learning models", 51.11),
    ("clinical practice", 50.55),
    ("lstm", 50.16),
    ("deep learning technology", 49.02),
    ("recurrent neural network", 48.62),
    ("health care", 47.96),
]


@criterion("published ordering fixture")
def test_published_scores_rank_in_printed_order():
    rng = random.Random(3)
    shuffled = list(PUBLISHED_RANKING)
    rng.shuffle(shuffled)
    ranked = rank_terms(dict(shuffled))
    assert ranked == [term for term, _ in PUBLISHED_RANKING]


@criterion("sidecar round-trip")
def test_exported_sidecar_feeds_the_embedding_ranker(tmp_path):
    embed_cli = pytest.importorskip("embed_export.cli")
    from emergekit.ingest import write_canonical_csv
    from emergekit.terms import Sidecar, rank_candidates

    topics = ["ion trap", "laser cooling", "spin qubit", "error correction", "photon source"]
    papers = [
        make_paper(
            f"d{i}",
            2010 + i,
            f"{topics[i % 5].title()} study {i}",
            f"Results on the {topics[i % 5]} problem.",
            [f"a{i}"],
            ["lab"],
            i,
        )
        for i in range(10)
    ]
    corpus = make_corpus(papers)
    out = tmp_path / "out"
    out.mkdir()
    (out / "corpus.csv").write_text(write_canonical_csv(corpus.records), encoding="utf-8")

    cfg = tmp_path / "run.cfg"
    cfg.write_text(
        "study_start = 2010\nstudy_end = 2019\nmin_doc_frequency = 2\n"
        f"out = {out}\n",
        encoding="utf-8",
    )
    assert cli.run(["terms", "--config", str(cfg)]) == 0
    candidates = [
        line.split("\t")[0]
        for line in (out / "candidates.tsv").read_text("utf-8").splitlines()[1:]
    ]
    assert candidates

    sidecar_path = tmp_path / "embeddings.tsv"
    code = embed_cli.run(
        [
            "--corpus",
            str(out / "corpus.csv"),
            "--candidates",
            str(out / "candidates.tsv"),
            "--out",
            str(sidecar_path),
        ]
    )
    assert code == 0

    sidecar = Sidecar.load(sidecar_path)
    ids = {f"doc:{rec.id}" for rec in corpus.records}
    ids |= {f"term:{text}" for text in candidates}
    assert ids <= set(sidecar.vectors)
    for vector in sidecar.vectors.values():
        norm = math.sqrt(sum(x * x for x in vector))
        assert norm == pytest.approx(1.0, abs=1e-6)

    variant_lists = [tuple(text.split()) for text in candidates]
    ranked = rank_candidates(
        papers[0], variant_lists, ranker="embedding", top_k=3, sidecar=sidecar
    )
    assert ranked
    assert all(" ".join(tokens) in candidates for tokens in ranked)
