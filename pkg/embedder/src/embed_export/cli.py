"""Command line: corpus + candidates in, sidecar out.

Exit codes: 0 success, 1 bad arguments or unusable model, 2 missing
input file.
"""

import argparse
import sys
from pathlib import Path

from .encoders import get_encoder
from .errors import ExportError
from .export import export_embeddings


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="embed-export",
        description="Write an embedding sidecar for the core's keyword ranker.",
    )
    parser.add_argument("--corpus", required=True, help="canonical corpus CSV")
    parser.add_argument("--candidates", required=True, help="candidate TSV")
    parser.add_argument("--out", required=True, help="sidecar file to write")
    parser.add_argument(
        "--model",
        default="hash",
        help="encoder spec: hash (default) or hf:<pretrained model>",
    )
    parser.add_argument(
        "--dim", type=int, default=64, help="dimensionality for the hash encoder"
    )
    return parser


def run(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    for path in (args.corpus, args.candidates):
        if not Path(path).exists():
            print(f"error: input file not found: {path}", file=sys.stderr)
            return 2
    try:
        encoder = get_encoder(args.model, dim=args.dim)
        text = export_embeddings(args.corpus, args.candidates, encoder)
    except ExportError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    Path(args.out).write_text(text, encoding="utf-8")
    entries = text.count("\n") - 1
    print(f"wrote {args.out}: {entries} vectors from {encoder.name}")
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
