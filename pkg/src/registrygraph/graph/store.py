"""In-memory property graph store.

Ownership model: many concurrent readers or one exclusive writer.  All
mutating operations take an internal lock; read paths are lock-free and
rely on the writer lock for consistency, which is adequate at the desk
scale this store targets.

The store keeps an inverted text index over Event ``full_text`` in sync
with node writes, and offers deterministic neighbor iteration so that
higher layers (tools, agent, evaluation) are reproducible.
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass
from typing import Iterable, Iterator

from registrygraph.graph.model import (
    DanglingEdge,
    ENTITY_LABELS,
    EdgeKind,
    GraphEdge,
    GraphNode,
    LabelConflict,
    NodeLabel,
    NodeNotFound,
    SchemaViolation,
    Uid,
)
from registrygraph.graph.textindex import ScoredHit, TextIndex

logger = logging.getLogger(__name__)

_EdgeKey = tuple[Uid, Uid, str, str | None]


@dataclass
class SearchHit:
    """A text-search result: event uid, snippet, and match score."""

    uid: Uid
    snippet: str
    score: int


class PropertyGraph:
    """Typed directed multigraph with per-kind edge deduplication."""

    def __init__(self) -> None:
        self._nodes: dict[Uid, GraphNode] = {}
        self._edges: dict[_EdgeKey, GraphEdge] = {}
        self._out: dict[Uid, set[_EdgeKey]] = {}
        self._in: dict[Uid, set[_EdgeKey]] = {}
        self._text = TextIndex()
        self._write_lock = threading.RLock()

    # ------------------------------------------------------------------
    # nodes

    def put_node(self, node: GraphNode) -> Uid:
        """Insert or idempotently merge a node.

        A re-put with the same label merges properties (new values win).
        Event nodes keep the text index in sync with their full_text.

        Raises:
            LabelConflict: If the uid exists under a different label.
        """
        with self._write_lock:
            existing = self._nodes.get(node.uid)
            if existing is not None:
                if existing.label is not node.label:
                    raise LabelConflict(
                        f"uid {node.uid!r} is {existing.label.value}, got {node.label.value}"
                    )
                existing.props.update(node.props)
                merged = existing
            else:
                self._nodes[node.uid] = node
                self._out.setdefault(node.uid, set())
                self._in.setdefault(node.uid, set())
                merged = node
            if merged.label is NodeLabel.EVENT:
                text = str(merged.props.get("full_text", ""))
                if text:
                    self._text.index(merged.uid, text)
            return merged.uid

    def get_node(self, uid: Uid) -> GraphNode:
        try:
            return self._nodes[uid]
        except KeyError:
            raise NodeNotFound(f"unknown node {uid!r}") from None

    def has_node(self, uid: Uid) -> bool:
        return uid in self._nodes

    def remove_node(self, uid: Uid) -> None:
        """Delete a node together with its incident edges."""
        with self._write_lock:
            if uid not in self._nodes:
                raise NodeNotFound(f"unknown node {uid!r}")
            for key in list(self._out.get(uid, ())) + list(self._in.get(uid, ())):
                self._drop_edge_key(key)
            self._out.pop(uid, None)
            self._in.pop(uid, None)
            node = self._nodes.pop(uid)
            if node.label is NodeLabel.EVENT:
                self._text.remove(uid)

    def nodes(self, label: NodeLabel | None = None) -> Iterator[GraphNode]:
        """Iterate nodes in uid order, optionally filtered by label."""
        for uid in sorted(self._nodes):
            node = self._nodes[uid]
            if label is None or node.label is label:
                yield node

    def node_count(self) -> int:
        return len(self._nodes)

    # ------------------------------------------------------------------
    # edges

    def put_edge(self, edge: GraphEdge) -> GraphEdge:
        """Insert an edge with set semantics on (src, dst, kind, role).

        Re-inserting the same identity merges the remaining properties.

        Raises:
            DanglingEdge: If either endpoint is missing.
            SchemaViolation: For direct Person<->Company edges of any
                non-HAS_NAME kind, or HAS_NAME edges that do not end at
                a NameHub.
        """
        with self._write_lock:
            src = self._nodes.get(edge.src)
            dst = self._nodes.get(edge.dst)
            if src is None or dst is None:
                missing = edge.src if src is None else edge.dst
                raise DanglingEdge(f"edge endpoint {missing!r} not in graph")
            labels = {src.label, dst.label}
            if edge.kind is EdgeKind.HAS_NAME:
                if dst.label is not NodeLabel.NAME_HUB:
                    raise SchemaViolation("HAS_NAME edges must terminate at a NameHub")
            elif labels == {NodeLabel.PERSON, NodeLabel.COMPANY}:
                raise SchemaViolation(
                    "persons and companies may only meet through events or name hubs"
                )
            key = edge.identity()
            existing = self._edges.get(key)
            if existing is not None:
                existing.props.update(edge.props)
                return existing
            self._edges[key] = edge
            self._out[edge.src].add(key)
            self._in[edge.dst].add(key)
            return edge

    def remove_edge(self, edge: GraphEdge) -> None:
        with self._write_lock:
            key = edge.identity()
            if key not in self._edges:
                raise NodeNotFound(f"unknown edge {key!r}")
            self._drop_edge_key(key)

    def _drop_edge_key(self, key: _EdgeKey) -> None:
        edge = self._edges.pop(key, None)
        if edge is None:
            return
        self._out.get(edge.src, set()).discard(key)
        self._in.get(edge.dst, set()).discard(key)

    def edges(self) -> Iterator[GraphEdge]:
        """Iterate edges sorted by (src, dst, kind, role)."""
        for key in sorted(self._edges, key=_edge_sort_key):
            yield self._edges[key]

    def edge_count(self) -> int:
        return len(self._edges)

    def neighbors(
        self,
        uid: Uid,
        kinds: Iterable[EdgeKind] | None = None,
        direction: str = "both",
    ) -> list[tuple[GraphEdge, GraphNode]]:
        """Adjacent (edge, other-node) pairs in deterministic order.

        Ordering is by edge kind, then the neighboring node's uid, then
        role.  ``direction`` is one of "out", "in", "both".

        Raises:
            NodeNotFound: If uid is unknown.
        """
        if uid not in self._nodes:
            raise NodeNotFound(f"unknown node {uid!r}")
        wanted = None if kinds is None else {k for k in kinds}
        keys: set[_EdgeKey] = set()
        if direction in ("out", "both"):
            keys |= self._out.get(uid, set())
        if direction in ("in", "both"):
            keys |= self._in.get(uid, set())
        if direction not in ("out", "in", "both"):
            raise ValueError(f"bad direction {direction!r}")
        pairs = []
        for key in keys:
            edge = self._edges[key]
            if wanted is not None and edge.kind not in wanted:
                continue
            other_uid = edge.dst if edge.src == uid else edge.src
            pairs.append((edge, self._nodes[other_uid]))
        pairs.sort(key=lambda p: (p[0].kind.value, p[1].uid, p[0].role or ""))
        return pairs

    # ------------------------------------------------------------------
    # text search

    def text_search(self, query: str, limit: int = 10) -> list[SearchHit]:
        """Full-text search over Event full_text.

        Results are ranked by summed term frequency, ties broken by uid.

        Raises:
            EmptyQuery: If the query has no indexable tokens.
        """
        hits: list[ScoredHit] = self._text.search(query, limit=limit)
        return [SearchHit(uid=h.uid, snippet=h.snippet, score=h.score) for h in hits]

    def text_postings(self) -> dict[str, dict[Uid, list[int]]]:
        return self._text.postings()


def _edge_sort_key(key: _EdgeKey) -> tuple[str, str, str, str]:
    src, dst, kind, role = key
    return (src, dst, kind, role or "")
