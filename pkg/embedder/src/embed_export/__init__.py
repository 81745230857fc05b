"""Embedding sidecar exporter.

Couples to the core toolkit only through files: it reads the canonical
corpus CSV and candidate TSV the core writes, and emits the sidecar
format the core's embedding ranker reads.
"""

from .encoders import HashingEncoder, TransformerEncoder, get_encoder
from .errors import ExportError, InputFormatError, MissingModelError
from .export import export_embeddings, read_candidates, read_corpus

__version__ = "0.1.0"

__all__ = [
    "ExportError",
    "HashingEncoder",
    "InputFormatError",
    "MissingModelError",
    "TransformerEncoder",
    "export_embeddings",
    "get_encoder",
    "read_candidates",
    "read_corpus",
    "__version__",
]
