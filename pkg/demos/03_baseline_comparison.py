"""
Why raw frequency misses emergence
==================================

Three planted trajectories — an accelerating newcomer, a hot topic that
was always big, and a topic in decline — scored by the emergence
indicators and by two frequency-flavoured baselines.  TF-IDF rewards the
hot topic; the emergence score puts the newcomer first.
"""

import numpy as np

from emergekit.baselines import escore_proxy
from emergekit.index import TermIndex, TermYearStats
from emergekit.metrics import compute_all_metrics
from emergekit.report import rank_terms

PROFILES = {
    "newcomer": np.array([0, 0, 0, 0, 0, 1, 2, 5, 10, 18]),
    "hot topic": np.array([15, 15, 14, 15, 16, 15, 15, 14, 15, 15]),
    "decliner": np.array([15, 12, 10, 8, 6, 5, 3, 2, 1, 0]),
}
TOTALS = [120] * 10

terms = {}
for name, series in PROFILES.items():
    stats = TermYearStats(10)
    stats.papers_binary = series.tolist()
    stats.papers_full = series.tolist()
    stats.citations = (series * 2).tolist()
    stats.patents = [0] * 8 + [1, 2] if name == "newcomer" else [0] * 10
    stats.author_sets = [{f"{name}_a{i}" for i in range(int(n))} for n in series]
    stats.org_sets = [{f"{name}_o{i}" for i in range(min(int(n), 4))} for n in series]
    terms[name] = stats

index = TermIndex(
    study_start=2010,
    study_end=2019,
    terms=terms,
    total_papers=TOTALS,
    total_patents=[0] * 8 + [1, 2],
)

emergence = {t: v.emergence_score for t, v in compute_all_metrics(index).items()}
# a raw-frequency stand-in: total papers over the decade
frequency = {t: float(p.sum()) for t, p in PROFILES.items()}
escore = {t: escore_proxy(p.tolist()) for t, p in PROFILES.items()}

print(f"{'term':12s} {'papers':>7s} {'emergence':>10s} {'escore':>8s}")
for name, series in PROFILES.items():
    print(
        f"{name:12s} {series.sum():7d} {emergence[name]:10.3f} {escore[name]:8.3f}"
    )

print()
print("ranked by total frequency: ", rank_terms(frequency))
print("ranked by emergence score: ", rank_terms(emergence))
print("ranked by escore baseline: ", rank_terms(escore))

assert rank_terms(frequency)[0] != "newcomer"
assert rank_terms(emergence)[0] == "newcomer"
