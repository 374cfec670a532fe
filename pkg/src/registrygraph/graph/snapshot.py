"""Graph persistence: versioned line-delimited JSON snapshots.

Layout: a ``graph.v1`` header line, then one JSON record per line.
Node records are ``{"t": "n", "uid": ..., "label": ..., "strength": ...,
"props": {...}}`` and edge records ``{"t": "e", "src": ..., "dst": ...,
"kind": ..., "props": {...}}``.  Nodes are written before edges, both in
sorted order with sorted JSON keys, so a load/save round trip is
byte-identical.
"""

from __future__ import annotations

import json
from pathlib import Path

from registrygraph.graph.model import (
    EdgeKind,
    GraphEdge,
    GraphError,
    GraphNode,
    NodeLabel,
    Strength,
)
from registrygraph.graph.store import PropertyGraph

HEADER = "graph.v1"


class CorruptSnapshot(GraphError):
    """A snapshot line failed to parse or validate.

    Attributes:
        line_no: 1-based line number of the offending line.
    """

    def __init__(self, line_no: int, reason: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {reason}")


def _dump(record: dict) -> str:
    return json.dumps(record, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def save_graph(graph: PropertyGraph, path: str | Path) -> None:
    """Write the graph to a snapshot file."""
    lines = [HEADER]
    for node in graph.nodes():
        lines.append(
            _dump(
                {
                    "t": "n",
                    "uid": node.uid,
                    "label": node.label.value,
                    "strength": node.strength.value,
                    "props": node.props,
                }
            )
        )
    for edge in graph.edges():
        lines.append(
            _dump(
                {
                    "t": "e",
                    "src": edge.src,
                    "dst": edge.dst,
                    "kind": edge.kind.value,
                    "props": edge.props,
                }
            )
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_graph(path: str | Path) -> PropertyGraph:
    """Read a snapshot back into a fresh graph.

    The text index is rebuilt as event nodes are inserted.

    Raises:
        CorruptSnapshot: On a bad header, unparseable line, or a record
            that violates the schema; the error reports the line number.
    """
    graph = PropertyGraph()
    text = Path(path).read_text(encoding="utf-8")
    lines = text.splitlines()
    if not lines or lines[0].strip() != HEADER:
        raise CorruptSnapshot(1, f"expected header {HEADER!r}")
    for line_no, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorruptSnapshot(line_no, f"bad JSON: {exc.msg}") from None
        if not isinstance(record, dict):
            raise CorruptSnapshot(line_no, "record must be a JSON object")
        try:
            _apply(graph, record)
        except (GraphError, KeyError, ValueError) as exc:
            raise CorruptSnapshot(line_no, str(exc)) from None
    return graph


def _apply(graph: PropertyGraph, record: dict) -> None:
    tag = record.get("t")
    if tag == "n":
        graph.put_node(
            GraphNode(
                uid=record["uid"],
                label=NodeLabel(record["label"]),
                strength=Strength(record["strength"]),
                props=dict(record.get("props", {})),
            )
        )
    elif tag == "e":
        graph.put_edge(
            GraphEdge(
                src=record["src"],
                dst=record["dst"],
                kind=EdgeKind(record["kind"]),
                props=dict(record.get("props", {})),
            )
        )
    else:
        raise ValueError(f"unknown record tag {tag!r}")
