"""Read the core's corpus and candidate artifacts, write the sidecar.

The two inputs are consumed purely as file formats: a corpus CSV with
id/title/abstract columns and a candidate TSV whose first column is the
candidate string.  The output grammar is one ``dim=N`` header line, then
one ``<id>\\t<f1>,...,<fN>`` line per entry, ids prefixed ``doc:`` or
``term:``.
"""

import csv
import io
from pathlib import Path

from .errors import InputFormatError


def read_corpus(path) -> list[tuple[str, str]]:
    """(record id, title + abstract text) per row, in file order."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        required = {"id", "title", "abstract"}
        if reader.fieldnames is None or not required <= set(reader.fieldnames):
            raise InputFormatError(f"{path}: corpus CSV needs id, title, abstract columns")
        docs = []
        seen = set()
        for row in reader:
            rid = row["id"]
            if not rid or rid in seen:
                raise InputFormatError(f"{path}: missing or duplicate record id {rid!r}")
            seen.add(rid)
            text = f"{row['title']} {row['abstract']}".strip()
            docs.append((rid, text))
    if not docs:
        raise InputFormatError(f"{path}: corpus has no rows")
    return docs


def read_candidates(path) -> list[str]:
    """Candidate strings from the TSV's first column, deduplicated."""
    lines = Path(path).read_text("utf-8").splitlines()
    if not lines or lines[0].split("\t")[0] != "candidate":
        raise InputFormatError(f"{path}: candidate TSV needs a 'candidate' first column")
    out = []
    seen = set()
    for line in lines[1:]:
        text = line.split("\t")[0]
        if not text:
            raise InputFormatError(f"{path}: empty candidate line")
        if text not in seen:
            seen.add(text)
            out.append(text)
    return out


def format_vector(vec) -> str:
    return ",".join(str(float(x)) for x in vec)


def export_embeddings(corpus_csv, candidates_tsv, encoder) -> str:
    """Encode every document and candidate; return the sidecar text.

    Document vectors cover title plus abstract; term vectors cover the
    candidate string alone.
    """
    docs = read_corpus(corpus_csv)
    cands = read_candidates(candidates_tsv)
    buf = io.StringIO()
    buf.write(f"dim={encoder.dim}\n")
    for rid, text in docs:
        vec = encoder.encode(text, label=f"doc:{rid}")
        buf.write(f"doc:{rid}\t{format_vector(vec)}\n")
    for text in cands:
        vec = encoder.encode(text, label=f"term:{text}")
        buf.write(f"term:{text}\t{format_vector(vec)}\n")
    return buf.getvalue()
