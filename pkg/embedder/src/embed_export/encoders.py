"""Text encoders.

Two backends: a dependency-free feature-hashing encoder, deterministic
across runs and platforms, and a pretrained transformer encoder (mean
pooling over the final layer) behind the ``hf:<model>`` spec.  Both
return L2-normalized float vectors, so the consumer's cosine similarity
reduces to a dot product.
"""

import hashlib
import re
import warnings

import numpy as np

from .errors import ExportError, MissingModelError

_TOKEN_RE = re.compile(r"[a-z0-9]+")


def _tokens(text: str, limit: int, label: str) -> list[str]:
    toks = _TOKEN_RE.findall(text.lower())
    if len(toks) > limit:
        warnings.warn(f"{label} exceeds {limit} tokens; truncated", stacklevel=3)
        toks = toks[:limit]
    return toks


class HashingEncoder:
    """Signed feature hashing over word unigrams and bigrams.

    blake2b keeps the bucket assignment stable everywhere, unlike the
    process-seeded builtin hash.
    """

    def __init__(self, dim: int = 64, max_tokens: int = 256):
        if dim < 2:
            raise ExportError("hash encoder needs dim >= 2")
        self.dim = dim
        self.max_tokens = max_tokens
        self.name = f"hash:{dim}"

    def encode(self, text: str, label: str = "text") -> np.ndarray:
        toks = _tokens(text, self.max_tokens, label)
        feats = toks + [f"{a} {b}" for a, b in zip(toks, toks[1:])]
        if not feats:
            feats = ["<empty>"]
        vec = np.zeros(self.dim, dtype=np.float64)
        for feat in feats:
            digest = hashlib.blake2b(feat.encode("utf-8"), digest_size=8).digest()
            h = int.from_bytes(digest, "big")
            sign = 1.0 if h & 1 == 0 else -1.0
            vec[(h >> 1) % self.dim] += sign
        norm = float(np.linalg.norm(vec))
        if norm == 0.0:
            # opposing signs cancelled every bucket; fall back to a bias axis
            vec[0] = 1.0
            norm = 1.0
        return vec / norm


class TransformerEncoder:
    """Pretrained transformer, mean pooling of last-layer token vectors."""

    def __init__(self, model_name: str):
        try:
            import torch
            from transformers import AutoModel, AutoTokenizer
        except ImportError as exc:
            raise MissingModelError(
                f"model {model_name!r} needs the transformers and torch packages"
            ) from exc
        try:
            self.tokenizer = AutoTokenizer.from_pretrained(model_name)
            self.model = AutoModel.from_pretrained(model_name)
        except OSError as exc:
            raise MissingModelError(
                f"model weights for {model_name!r} are not available locally"
            ) from exc
        self.torch = torch
        self.model.eval()
        self.dim = int(self.model.config.hidden_size)
        self.max_tokens = int(self.tokenizer.model_max_length)
        self.name = f"hf:{model_name}"

    def encode(self, text: str, label: str = "text") -> np.ndarray:
        torch = self.torch
        if len(self.tokenizer.tokenize(text)) > self.max_tokens - 2:
            warnings.warn(f"{label} exceeds {self.max_tokens} tokens; truncated", stacklevel=3)
        batch = self.tokenizer(text, truncation=True, return_tensors="pt")
        with torch.no_grad():
            hidden = self.model(**batch).last_hidden_state[0]
        mask = batch["attention_mask"][0].unsqueeze(-1)
        pooled = (hidden * mask).sum(0) / mask.sum()
        vec = pooled.double().numpy()
        norm = float(np.linalg.norm(vec))
        if norm == 0.0:
            raise ExportError(f"zero vector from model for {label}")
        return vec / norm


def get_encoder(spec: str, dim: int = 64):
    """Build an encoder from its config string: ``hash`` or ``hf:<model>``."""
    if spec == "hash":
        return HashingEncoder(dim=dim)
    if spec.startswith("hf:"):
        name = spec[len("hf:") :]
        if not name:
            raise ExportError("hf: spec needs a model name")
        return TransformerEncoder(name)
    raise ExportError(f"unknown encoder spec {spec!r}; use hash or hf:<model>")
