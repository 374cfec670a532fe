"""Edit distance and the normalized similarity ratio built on it.

The similarity of two strings A and B is

    S(A, B) = (|A| + |B| - Lev(A, B)) / (|A| + |B|)

where Lev is the character-level Levenshtein distance with unit costs.
S is 1.0 for identical strings and degrades toward 0.0; two empty
strings are defined as identical (S = 1.0).
"""

from __future__ import annotations


def levenshtein_distance(a: str, b: str) -> int:
    """Unit-cost edit distance, two-row dynamic program."""
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, char_a in enumerate(a, start=1):
        current = [i] + [0] * len(b)
        for j, char_b in enumerate(b, start=1):
            cost = 0 if char_a == char_b else 1
            current[j] = min(
                previous[j] + 1,      # deletion
                current[j - 1] + 1,   # insertion
                previous[j - 1] + cost,  # substitution
            )
        previous = current
    return previous[len(b)]


def levenshtein_similarity(a: str, b: str) -> float:
    """Normalized similarity in [0, 1]; empty-vs-empty is 1.0."""
    total = len(a) + len(b)
    if total == 0:
        return 1.0
    return (total - levenshtein_distance(a, b)) / total
