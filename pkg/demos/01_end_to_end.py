"""
End-to-end batch run on a bundled corpus
========================================

Walks the full staged pipeline the same way the command line does:
ingest raw exports, extract and clump terms, build the term-year index,
score every term, then rank.  Each stage leaves a CSV/TSV artifact in
the output directory, so any step can be inspected or rerun in isolation.
"""

import tempfile
from pathlib import Path

from emergekit import cli

HERE = Path(__file__).resolve().parent
# demo input: the small synthetic corpus shipped with the test suite
DATA = HERE.parent / "tests" / "data"

workdir = Path(tempfile.mkdtemp(prefix="emergekit_demo_"))
out = workdir / "out"

config = workdir / "run.cfg"
config.write_text(
    f"""\
papers = {DATA / 'papers_wos.txt'}
patents = {DATA / 'patents.csv'}
study_start = 2010
study_end = 2019
out = {out}
""",
    encoding="utf-8",
)

# one call per stage; `pipeline` would do all of them in order
code = cli.run(["pipeline", "--config", str(config)])
assert code == 0, "pipeline failed"

print()
print("artifacts:")
for path in sorted(out.iterdir()):
    print(f"  {path.name:28s} {path.stat().st_size:6d} bytes")

# the ranking artifact is the headline output: terms by Emergence_Score
print()
print("top of ranking.csv:")
for line in (out / "ranking.csv").read_text("utf-8").splitlines()[:6]:
    rank, term, score = line.split(",")[:3]
    print(f"  {rank:>4s}  {term:20s} {score}")
