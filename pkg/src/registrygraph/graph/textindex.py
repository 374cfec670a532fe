"""Inverted index over event full text.

Tokenization is shared with the hub-key builder: Unicode-aware
lowercasing followed by splitting into maximal alphanumeric runs.
Postings keep token positions so search results can carry a snippet
window around the first match.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from registrygraph.graph.model import EmptyQuery, Uid

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


def tokenize(text: str) -> list[str]:
    """Split text into lowercase alphanumeric runs, in order."""
    return _TOKEN_RE.findall(text.lower())


def _token_spans(text: str) -> list[tuple[int, int]]:
    # Character offsets of each token, used to cut snippets from the
    # original (cased, punctuated) text.
    return [m.span() for m in _TOKEN_RE.finditer(text.lower())]


SNIPPET_RADIUS = 10


@dataclass
class _DocEntry:
    text: str
    spans: list[tuple[int, int]] = field(default_factory=list)


@dataclass
class ScoredHit:
    uid: Uid
    score: int
    snippet: str


class TextIndex:
    """Positional inverted index with term-frequency ranking."""

    def __init__(self) -> None:
        self._postings: dict[str, dict[Uid, list[int]]] = {}
        self._docs: dict[Uid, _DocEntry] = {}

    def __contains__(self, uid: Uid) -> bool:
        return uid in self._docs

    def index(self, uid: Uid, text: str) -> None:
        """Add or replace the document stored under uid."""
        if uid in self._docs:
            self.remove(uid)
        tokens = tokenize(text)
        self._docs[uid] = _DocEntry(text=text, spans=_token_spans(text))
        for position, token in enumerate(tokens):
            self._postings.setdefault(token, {}).setdefault(uid, []).append(position)

    def remove(self, uid: Uid) -> None:
        entry = self._docs.pop(uid, None)
        if entry is None:
            return
        for token in set(tokenize(entry.text)):
            bucket = self._postings.get(token)
            if bucket is None:
                continue
            bucket.pop(uid, None)
            if not bucket:
                del self._postings[token]

    def postings(self) -> dict[str, dict[Uid, list[int]]]:
        """Read-only view used by tests and diagnostics."""
        return {t: dict(d) for t, d in self._postings.items()}

    def search(self, query: str, limit: int = 10) -> list[ScoredHit]:
        """Rank documents by summed term frequency over the query tokens.

        Ties break on uid so results are stable.  The snippet is the
        original text around the first matching token, ±SNIPPET_RADIUS
        tokens.

        Raises:
            EmptyQuery: If the query contains no indexable tokens.
        """
        terms = tokenize(query)
        if not terms:
            raise EmptyQuery("text search needs at least one token")
        scores: dict[Uid, int] = {}
        first_hit: dict[Uid, int] = {}
        for term in terms:
            for uid, positions in self._postings.get(term, {}).items():
                scores[uid] = scores.get(uid, 0) + len(positions)
                pos = positions[0]
                if uid not in first_hit or pos < first_hit[uid]:
                    first_hit[uid] = pos
        ranked = sorted(scores.items(), key=lambda item: (-item[1], item[0]))
        hits = []
        for uid, score in ranked[: max(0, limit)]:
            hits.append(ScoredHit(uid=uid, score=score, snippet=self._snippet(uid, first_hit[uid])))
        return hits

    def _snippet(self, uid: Uid, position: int) -> str:
        entry = self._docs[uid]
        if not entry.spans:
            return ""
        lo = max(0, position - SNIPPET_RADIUS)
        hi = min(len(entry.spans) - 1, position + SNIPPET_RADIUS)
        start = entry.spans[lo][0]
        end = entry.spans[hi][1]
        return entry.text[start:end]
