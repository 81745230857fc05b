"""Text normalization: tokenization, stopword removal, rule-based lemmatization.

Raw titles and abstracts are turned into token sequences that every other
stage (candidate extraction, term matching) consumes.  Normalization must be
deterministic and idempotent: running the output text through the normalizer
again yields the same sequence.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Iterator, NamedTuple

# Function words kept inside phrases ("internet of things") but never emitted
# as standalone tokens and never allowed at a phrase edge.
FUNCTION_WORDS = frozenset({"of", "for", "on", "in", "and"})

# A word is letters/digits joined by internal hyphens or apostrophes; the
# apostrophes are dropped later, the hyphens survive inside the token.
_WORD_RE = re.compile(r"[^\W_]+(?:['’-][^\W_]+)*", re.UNICODE)


def _load_resource(name: str) -> list[str]:
    text = resources.files("emergekit.resources").joinpath(name).read_text("utf-8")
    return [line.strip() for line in text.splitlines() if line.strip()]


def load_stopwords(path=None) -> frozenset[str]:
    """Load the stopword list, one word per line, from ``path`` or the bundled default."""
    if path is None:
        lines = _load_resource("stopwords.txt")
    else:
        with open(path, encoding="utf-8") as fh:
            lines = [ln.strip() for ln in fh if ln.strip()]
    return frozenset(w.lower() for w in lines)


def load_lemma_exceptions(path=None) -> dict[str, str]:
    """Load the lemmatizer exception table.

    Each line is either ``surface lemma`` or a single word mapping to itself.
    """
    if path is None:
        lines = _load_resource("lemma_exceptions.txt")
    else:
        with open(path, encoding="utf-8") as fh:
            lines = [ln.strip() for ln in fh if ln.strip()]
    table = {}
    for line in lines:
        parts = line.lower().split()
        if len(parts) == 1:
            table[parts[0]] = parts[0]
        elif len(parts) == 2:
            table[parts[0]] = parts[1]
        else:
            raise ValueError(f"malformed lemma exception line: {line!r}")
    return table


DEFAULT_STOPWORDS = load_stopwords()
DEFAULT_LEMMA_EXCEPTIONS = load_lemma_exceptions()


def lemmatize(token: str, exceptions: dict[str, str] | None = None) -> str:
    """Reduce a lowercase token to its lemma with ordered suffix rules.

    The exception table is consulted first; the suffix rules apply in a fixed
    order and at most one fires.  The function is idempotent.
    """
    table = DEFAULT_LEMMA_EXCEPTIONS if exceptions is None else exceptions
    if token in table:
        return table[token]
    if token.endswith("ies") and len(token) >= 5:
        return token[:-3] + "y"
    if token.endswith("sses"):
        return token[:-2]
    if token.endswith(("xes", "ches", "shes")):
        return token[:-2]
    if token.endswith("s") and len(token) > 3 and not token.endswith(("ss", "us", "is")):
        return token[:-1]
    return token


class StreamToken(NamedTuple):
    lemma: str
    surface: str
    is_function: bool


@dataclass(frozen=True)
class TokenSequence:
    """Normalized token stream split into punctuation-delimited segments.

    Each segment is a run of tokens with no phrase boundary inside it.
    Stopword removal leaves no boundary behind; punctuation does.  Function
    words stay in the stream (flagged) so phrases can span them, but they are
    not content tokens.
    """

    segments: tuple[tuple[StreamToken, ...], ...]

    def __post_init__(self):
        for seg in self.segments:
            if not seg:
                raise ValueError("empty segment in token sequence")

    @property
    def tokens(self) -> tuple[str, ...]:
        """Content lemmas only, function words excluded."""
        return tuple(t.lemma for seg in self.segments for t in seg if not t.is_function)

    @property
    def words(self) -> tuple[str, ...]:
        """All lemmas in stream order, function words included."""
        return tuple(t.lemma for seg in self.segments for t in seg)

    def __len__(self) -> int:
        return sum(len(seg) for seg in self.segments)

    def to_text(self) -> str:
        """Render back to text; '.' marks segment boundaries."""
        return " . ".join(" ".join(t.lemma for t in seg) for seg in self.segments)

    def concat(self, other: "TokenSequence") -> "TokenSequence":
        """Join two sequences with a phrase boundary between them."""
        return TokenSequence(self.segments + other.segments)


def _clean_word(word: str) -> str:
    # Drop anything outside letters and internal hyphens, collapse runs.
    kept = "".join(ch for ch in word if ch.isalpha() or ch == "-")
    kept = re.sub(r"-{2,}", "-", kept).strip("-")
    return kept


def normalize(
    raw_text: str,
    stopwords: frozenset[str] | None = None,
    lemma_exceptions: dict[str, str] | None = None,
) -> TokenSequence:
    """Normalize raw text to a TokenSequence.

    Case-folds, drops punctuation and standalone numbers, removes stopwords
    without leaving a boundary, records a boundary at punctuation, and
    lemmatizes the survivors.
    """
    sw = DEFAULT_STOPWORDS if stopwords is None else stopwords
    segments: list[tuple[StreamToken, ...]] = []
    current: list[StreamToken] = []

    def flush():
        if current:
            segments.append(tuple(current))
            current.clear()

    pos = 0
    for match in _WORD_RE.finditer(raw_text):
        gap = raw_text[pos : match.start()]
        if any(not ch.isspace() for ch in gap):
            flush()
        pos = match.end()
        word = match.group()
        if not any(ch.isalpha() for ch in word):
            continue  # pure number: dropped, no boundary
        lower = _clean_word(word.lower())
        if not lower:
            continue
        surface = _clean_word(word)
        if lower in FUNCTION_WORDS:
            current.append(StreamToken(lower, surface, True))
            continue
        if lower in sw:
            continue  # stopword: dropped, no boundary
        lemma = lemmatize(lower, lemma_exceptions)
        if lemma in sw:
            continue
        current.append(StreamToken(lemma, surface, False))
    tail = raw_text[pos:]
    if any(not ch.isspace() for ch in tail):
        flush()
    flush()
    return TokenSequence(tuple(segments))
