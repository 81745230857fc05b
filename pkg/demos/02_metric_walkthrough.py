"""
How one term turns into twelve numbers
======================================

Builds a single-term index by hand and prints every indicator next to
the slice of the time series it looks at.  The term is given the classic
emergent profile: nothing early, then an accelerating burst.
"""

import numpy as np

from emergekit.index import TermIndex, TermYearStats
from emergekit.metrics import METRIC_NAMES, StudyWindows, compute_metric_vector

YEARS = np.arange(2010, 2020)

# papers mentioning the term, per year: silent first, bursting late
papers = np.array([0, 0, 1, 1, 2, 4, 6, 9, 14, 20])
# all papers in the corpus, per year: the field itself grows gently
totals = np.array([200, 220, 240, 260, 280, 300, 320, 340, 360, 380])

stats = TermYearStats(10)
stats.papers_binary = papers.tolist()
stats.papers_full = papers.tolist()
stats.citations = (papers * 3).tolist()
stats.patents = [0, 0, 0, 0, 0, 0, 0, 1, 2, 3]
# author/org pools widen as the topic catches on
stats.author_sets = [{f"a{i}" for i in range(int(n) * 2)} for n in papers]
stats.org_sets = [{f"o{i}" for i in range(min(int(n), 6))} for n in papers]

index = TermIndex(
    study_start=2010,
    study_end=2019,
    terms={"burst topic": stats},
    total_papers=totals.tolist(),
    total_patents=[0, 0, 0, 0, 0, 0, 0, 2, 3, 4],
)

windows = StudyWindows.decade()
print("study years:", YEARS[0], "..", YEARS[-1])
print("papers: ", papers)
print("share %:", np.round(100 * papers / totals, 2))
print()

# the window layout every indicator draws from (1-based year offsets)
for name in ("first3", "last3", "prior2", "last2", "relative"):
    print(f"window {name:9s} -> years {getattr(windows, name)}")
print()

vector = compute_metric_vector(index, "burst topic", windows)
width = max(len(n) for n in METRIC_NAMES)
for name in METRIC_NAMES:
    print(f"{name:{width}s} = {getattr(vector, name): .6f}")
print("-" * (width + 12))
print(f"{'emergence_score':{width}s} = {vector.emergence_score: .6f}")

# the score is literally the sum of the twelve lines above
assert abs(vector.emergence_score - sum(vector.components())) == 0.0
