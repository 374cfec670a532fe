"""Phase 3: identity resolution over name hubs.

Two cleanups run here, both idempotent:

* Hub deduplication.  Hubs are grouped by the key recomputed from their
  representative name; in each group the hub with the lexicographically
  smallest uid survives, the others hand their HAS_NAME edges to the
  survivor and are deleted.

* Weak-node absorption.  A weak entity that shares a name hub AND at
  least one event with a strong entity is the same actor seen through
  the text extractor; the weak node is deleted and its edges reconnect
  to the strong node, kinds and roles preserved, duplicates collapsing
  through the store's set semantics.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from registrygraph.graph.model import (
    EdgeKind,
    ENTITY_LABELS,
    GraphEdge,
    NodeLabel,
    Strength,
    Uid,
)
from registrygraph.graph.store import PropertyGraph
from registrygraph.ingest.hubkeys import EmptyKey, generate_hub_key

logger = logging.getLogger(__name__)


@dataclass
class MergeStats:
    hubs_merged: int = 0
    edges_rewired: int = 0

    def as_dict(self) -> dict[str, int]:
        return dict(self.__dict__)


@dataclass
class AbsorbStats:
    weak_absorbed: int = 0
    edges_moved: int = 0

    def as_dict(self) -> dict[str, int]:
        return dict(self.__dict__)


def dedup_name_hubs(graph: PropertyGraph) -> MergeStats:
    """Merge hubs whose representative names share a hub key.

    Running this twice in a row reports zero changes the second time.
    """
    stats = MergeStats()
    groups: dict[str, list[Uid]] = {}
    for node in graph.nodes(label=NodeLabel.NAME_HUB):
        try:
            key = generate_hub_key(str(node.props.get("name", "")))
        except EmptyKey:
            logger.warning("hub %s has no usable representative name", node.uid)
            continue
        groups.setdefault(key, []).append(node.uid)
    for key in sorted(groups):
        uids = sorted(groups[key])
        if len(uids) < 2:
            continue
        survivor = uids[0]
        for redundant in uids[1:]:
            for edge, other in graph.neighbors(redundant, direction="in"):
                graph.remove_edge(edge)
                if other.uid != survivor:
                    graph.put_edge(
                        GraphEdge(other.uid, survivor, EdgeKind.HAS_NAME, dict(edge.props))
                    )
                stats.edges_rewired += 1
            graph.remove_node(redundant)
            stats.hubs_merged += 1
    return stats


def _hubs_of(graph: PropertyGraph, uid: Uid) -> set[Uid]:
    return {
        node.uid
        for _edge, node in graph.neighbors(uid, kinds=[EdgeKind.HAS_NAME], direction="out")
    }


def _events_of(graph: PropertyGraph, uid: Uid) -> set[Uid]:
    return {
        node.uid
        for _edge, node in graph.neighbors(uid, direction="out")
        if node.label is NodeLabel.EVENT
    }


def absorb_weak_nodes(graph: PropertyGraph) -> AbsorbStats:
    """Delete weak entities confirmed by a strong hub-and-event sibling.

    Assumes hub deduplication has run.  A weak node sharing a hub but no
    event with any strong node stays untouched.  When several strong
    nodes qualify, the one with the smallest uid wins, which keeps the
    operation deterministic.
    """
    stats = AbsorbStats()
    weak_uids = [
        node.uid
        for label in ENTITY_LABELS
        for node in graph.nodes(label=label)
        if node.strength is Strength.WEAK
    ]
    for weak in sorted(weak_uids):
        if not graph.has_node(weak):
            continue
        weak_label = graph.get_node(weak).label
        weak_events = _events_of(graph, weak)
        if not weak_events:
            continue
        candidates = []
        for hub in sorted(_hubs_of(graph, weak)):
            for edge, entity in graph.neighbors(hub, direction="in"):
                if entity.uid == weak or entity.strength is not Strength.STRONG:
                    continue
                if entity.label is not weak_label:
                    continue
                if weak_events & _events_of(graph, entity.uid):
                    candidates.append(entity.uid)
        if not candidates:
            continue
        strong = min(candidates)
        moved = 0
        for edge, other in graph.neighbors(weak, direction="out"):
            graph.put_edge(GraphEdge(strong, other.uid, edge.kind, dict(edge.props)))
            moved += 1
        for edge, other in graph.neighbors(weak, direction="in"):
            graph.put_edge(GraphEdge(other.uid, strong, edge.kind, dict(edge.props)))
            moved += 1
        graph.remove_node(weak)
        stats.weak_absorbed += 1
        stats.edges_moved += moved
    return stats
