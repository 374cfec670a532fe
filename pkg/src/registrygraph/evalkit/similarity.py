"""String comparison rules shared by the evaluation tiers."""

from __future__ import annotations

import re

from registrygraph.graph.textindex import tokenize
from registrygraph.textmetrics import levenshtein_distance, levenshtein_similarity

__all__ = [
    "levenshtein_distance",
    "levenshtein_similarity",
    "normalize_answer",
    "normalized_exact_match",
    "token_set_key",
]

_PUNCT_RE = re.compile(r"[^\w\s]", re.UNICODE)


def token_set_key(name: str) -> tuple[str, ...]:
    """Alphabetically sorted lowercase tokens of a name.

    Two names merge legitimately when their sorted token sets match,
    which covers comma-first order and other permutations.
    """
    return tuple(sorted(tokenize(name)))


def normalize_answer(text: str) -> str:
    """Lowercase, strip punctuation, and collapse whitespace."""
    return " ".join(_PUNCT_RE.sub(" ", text.lower()).split())


def normalized_exact_match(actual: str, expected: str) -> bool:
    return normalize_answer(actual) == normalize_answer(expected)
