"""The seven retrieval tools the agent can call against the graph.

Every tool returns a ``ToolResult`` instead of raising: the agent loop
and the HTTP service need uniform outcomes they can inspect, log, and
recover from.  Status follows one law: SUCCESS exactly when the payload
carries at least one data row; zero rows is EMPTY; failures (unknown
uid, blocked query, bad arguments) are ERROR with a machine-readable
code in the payload.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from registrygraph.graph.model import (
    CORPORATE_STRUCTURE_KINDS,
    EdgeKind,
    EmptyQuery,
    ENTITY_LABELS,
    GraphNode,
    MutationBlocked,
    NodeLabel,
    QuerySyntax,
    Strength,
    Uid,
)
from registrygraph.graph.query import execute_restricted_query
from registrygraph.graph.store import PropertyGraph
from registrygraph.ingest.hubkeys import EmptyKey, generate_hub_key
from registrygraph.llm.gateway import ToolSpec
from registrygraph.textmetrics import levenshtein_distance

logger = logging.getLogger(__name__)

#: Rubrics that signal financial distress; the risk-rank metric counts them.
RISK_RUBRICS = frozenset({"KK02", "KK03", "KK06", "LS01", "LS02"})

#: Edit-distance budget for fuzzy candidate matching.
def _fuzzy_cutoff(query: str) -> int:
    return max(3, len(query) // 3)


class ToolStatus(Enum):
    SUCCESS = "success"
    EMPTY = "empty"
    ERROR = "error"


@dataclass
class ToolResult:
    """Uniform outcome of one tool invocation."""

    tool_name: str
    status: ToolStatus
    payload: dict[str, Any] = field(default_factory=dict)
    summary: str = ""

    @property
    def rows(self) -> list[dict[str, Any]]:
        return self.payload.get("rows", [])


def _ok(tool: str, rows: list[dict[str, Any]], summary: str, **extra) -> ToolResult:
    status = ToolStatus.SUCCESS if rows else ToolStatus.EMPTY
    return ToolResult(tool, status, {"rows": rows, **extra}, summary)


def _err(tool: str, code: str, detail: str) -> ToolResult:
    return ToolResult(
        tool, ToolStatus.ERROR, {"rows": [], "error": code, "detail": detail}, detail
    )


def _entity_row(node: GraphNode, **extra) -> dict[str, Any]:
    return {
        "uid": node.uid,
        "name": node.name,
        "label": node.label.value,
        "strength": node.strength.value,
        "location": node.props.get("location"),
        **extra,
    }


class Toolbox:
    """Dispatches tool calls against one property graph."""

    def __init__(self, graph: PropertyGraph):
        self._graph = graph

    # ------------------------------------------------------------------
    # dispatch

    def run(self, name: str, arguments: dict[str, Any]) -> ToolResult:
        handler = getattr(self, name, None)
        if name not in TOOL_NAMES or handler is None:
            return _err(name, "UnknownTool", f"no tool named {name!r}")
        try:
            return handler(**arguments)
        except TypeError as exc:
            return _err(name, "InvalidArgument", f"bad arguments for {name}: {exc}")

    # ------------------------------------------------------------------
    # entity search

    def search_companies(self, query: str = "", limit: int = 10) -> ToolResult:
        """Fuzzy entity lookup over names, locations, and purposes.

        Ranking: exact hub-key match, then substring containment, then
        edit distance on the name within a length-scaled budget; ties
        break on uid.  Weak candidates confirmed by a strong hub-and-
        event sibling are suppressed, mirroring absorption.
        """
        tool = "search_companies"
        if not query or not str(query).strip():
            return _err(tool, "InvalidArgument", "query must be non-empty")
        query = str(query).strip()
        try:
            query_key = generate_hub_key(query)
        except EmptyKey:
            query_key = None
        needle = query.lower()
        cutoff = _fuzzy_cutoff(query)
        scored: list[tuple[int, int, str, GraphNode]] = []
        for label in ENTITY_LABELS:
            for node in self._graph.nodes(label=label):
                tier, distance = self._match_tier(node, needle, query_key, cutoff)
                if tier is None:
                    continue
                if node.strength is Strength.WEAK and self._suppressed(node):
                    continue
                scored.append((tier, distance, node.uid, node))
        scored.sort(key=lambda item: item[:3])
        rows = []
        for tier, distance, _uid, node in scored[: max(0, int(limit))]:
            match = ("exact", "substring", "fuzzy")[tier]
            rows.append(_entity_row(node, match=match, distance=distance))
        return _ok(tool, rows, f"{len(rows)} candidates for {query!r}")

    def _match_tier(
        self, node: GraphNode, needle: str, query_key: str | None, cutoff: int
    ) -> tuple[int | None, int]:
        name = node.name
        if query_key is not None:
            try:
                if generate_hub_key(name) == query_key:
                    return 0, 0
            except EmptyKey:
                pass
        haystacks = [name.lower()]
        for prop in ("location", "purpose"):
            value = node.props.get(prop)
            if isinstance(value, str):
                haystacks.append(value.lower())
        if any(needle in hay for hay in haystacks if hay):
            return 1, 0
        distance = levenshtein_distance(needle, name.lower())
        if distance <= cutoff:
            return 2, distance
        return None, 0

    def _suppressed(self, weak: GraphNode) -> bool:
        weak_events = self._event_uids(weak.uid)
        if not weak_events:
            return False
        for _edge, hub in self._graph.neighbors(
            weak.uid, kinds=[EdgeKind.HAS_NAME], direction="out"
        ):
            for _e, sibling in self._graph.neighbors(hub.uid, direction="in"):
                if sibling.uid == weak.uid or sibling.strength is not Strength.STRONG:
                    continue
                if sibling.label is not weak.label:
                    continue
                if weak_events & self._event_uids(sibling.uid):
                    return True
        return False

    # ------------------------------------------------------------------
    # neighborhood

    def explore_network(self, uid: str = "") -> ToolResult:
        """Entities connected through corporate structure, shared events,
        or shared name hubs.  Rows carry the linking kind, role, date,
        and the event or hub they were found through."""
        tool = "explore_network"
        if not self._graph.has_node(uid):
            return _err(tool, "NotFound", f"unknown node {uid!r}")
        merged: dict[tuple, dict[str, Any]] = {}

        def add(node: GraphNode, kind: str, role, date, via: str, branch: str) -> None:
            key = (node.uid, kind, role, via)
            if key not in merged:
                merged[key] = _entity_row(
                    node, kind=kind, role=role, date=date, via=via, branch=branch
                )

        # direct edges to other entities (corporate structure written
        # straight between companies)
        for edge, other in self._graph.neighbors(uid):
            if other.label in ENTITY_LABELS and edge.kind in CORPORATE_STRUCTURE_KINDS:
                add(other, edge.kind.value, edge.role, edge.date, "direct", "corporate")
        # entities co-attached to this node's events
        for edge, ev in self._graph.neighbors(uid):
            if ev.label is not NodeLabel.EVENT:
                continue
            for other_edge, other in self._graph.neighbors(ev.uid, direction="in"):
                if other.uid == uid or other.label not in ENTITY_LABELS:
                    continue
                corporate = (
                    other_edge.kind in CORPORATE_STRUCTURE_KINDS
                    or edge.kind in CORPORATE_STRUCTURE_KINDS
                )
                add(
                    other,
                    other_edge.kind.value,
                    other_edge.role,
                    ev.props.get("date"),
                    ev.uid,
                    "corporate" if corporate else "event",
                )
        # entities sharing a name hub
        for _edge, hub in self._graph.neighbors(uid, kinds=[EdgeKind.HAS_NAME], direction="out"):
            for _e, other in self._graph.neighbors(hub.uid, direction="in"):
                if other.uid != uid and other.label in ENTITY_LABELS:
                    add(other, EdgeKind.HAS_NAME.value, None, None, hub.uid, "alias")
        rows = sorted(merged.values(), key=lambda r: (r["date"] or "", r["uid"], r["kind"]))
        return _ok(tool, rows, f"{len(rows)} connected entities for {uid}")

    def get_node_history(self, uid: str = "") -> ToolResult:
        """Chronology of events reachable from the node or any alias
        sharing one of its name hubs, oldest first."""
        tool = "get_node_history"
        if not self._graph.has_node(uid):
            return _err(tool, "NotFound", f"unknown node {uid!r}")
        aliases = {uid}
        for _edge, hub in self._graph.neighbors(uid, kinds=[EdgeKind.HAS_NAME], direction="out"):
            for _e, entity in self._graph.neighbors(hub.uid, direction="in"):
                aliases.add(entity.uid)
        seen: dict[str, dict[str, Any]] = {}
        for alias in sorted(aliases):
            for edge, ev in self._graph.neighbors(alias, direction="out"):
                if ev.label is not NodeLabel.EVENT or ev.uid in seen:
                    continue
                seen[ev.uid] = {
                    "uid": ev.uid,
                    "date": ev.props.get("date"),
                    "rubric": ev.props.get("rubric"),
                    "location": ev.props.get("location"),
                    "via": alias,
                    "role": edge.role,
                }
        rows = sorted(seen.values(), key=lambda r: (r["date"] or "", r["uid"]))
        return _ok(tool, rows, f"{len(rows)} events for {uid}")

    def _event_uids(self, uid: Uid) -> set[Uid]:
        return {
            n.uid
            for _e, n in self._graph.neighbors(uid, direction="out")
            if n.label is NodeLabel.EVENT
        }

    # ------------------------------------------------------------------
    # text and analytics

    def global_text_search(self, query: str = "", limit: int = 10) -> ToolResult:
        tool = "global_text_search"
        try:
            hits = self._graph.text_search(str(query), limit=int(limit))
        except EmptyQuery as exc:
            return _err(tool, "EmptyQuery", str(exc))
        rows = [{"uid": h.uid, "snippet": h.snippet, "score": h.score} for h in hits]
        return _ok(tool, rows, f"{len(rows)} text hits for {query!r}")

    def get_top_entities(
        self,
        metric: str = "event-count",
        n: int = 10,
        location: str | None = None,
        rubric: str | None = None,
        keyword: str | None = None,
    ) -> ToolResult:
        """Rank entities by nominal capital, event count, or risk rank.

        risk-rank counts a node's events in the distress rubrics.  The
        optional filters narrow by entity location, by counted event
        rubric, and by a keyword over name and purpose.
        """
        tool = "get_top_entities"
        if metric not in ("nominal-capital", "event-count", "risk-rank"):
            return _err(tool, "BadMetric", f"unknown metric {metric!r}")
        candidates: list[tuple[float, str, GraphNode]] = []
        labels = (NodeLabel.COMPANY,) if metric == "nominal-capital" else ENTITY_LABELS
        for label in labels:
            for node in self._graph.nodes(label=label):
                if location is not None and node.props.get("location") != location:
                    continue
                if keyword is not None:
                    blob = " ".join(
                        str(node.props.get(p, "")) for p in ("name", "purpose")
                    ).lower()
                    if keyword.lower() not in blob:
                        continue
                events = [
                    ev
                    for _e, ev in self._graph.neighbors(node.uid, direction="out")
                    if ev.label is NodeLabel.EVENT
                ]
                if rubric is not None:
                    events = [ev for ev in events if ev.props.get("rubric") == rubric]
                if metric == "nominal-capital":
                    value = node.props.get("nominal_capital")
                    if not isinstance(value, (int, float)) or isinstance(value, bool):
                        continue
                    if rubric is not None and not events:
                        continue
                elif metric == "event-count":
                    value = len({ev.uid for ev in events})
                    if value == 0:
                        continue
                else:
                    value = len(
                        {ev.uid for ev in events if ev.props.get("rubric") in RISK_RUBRICS}
                    )
                    if value == 0:
                        continue
                candidates.append((float(value), node.uid, node))
        candidates.sort(key=lambda item: (-item[0], item[1]))
        rows = [
            _entity_row(node, metric=metric, value=value)
            for value, _uid, node in candidates[: max(0, int(n))]
        ]
        return _ok(tool, rows, f"top {len(rows)} by {metric}")

    def count_entities_by_event(
        self, rubric: str = "", entity_label: str | None = None
    ) -> ToolResult:
        """Count distinct entities attached to events of one rubric."""
        tool = "count_entities_by_event"
        wanted_label: NodeLabel | None = None
        if entity_label is not None:
            try:
                wanted_label = NodeLabel(entity_label)
            except ValueError:
                return _err(tool, "InvalidArgument", f"unknown label {entity_label!r}")
        entities: set[Uid] = set()
        for ev in self._graph.nodes(label=NodeLabel.EVENT):
            if ev.props.get("rubric") != rubric:
                continue
            for _edge, node in self._graph.neighbors(ev.uid, direction="in"):
                if node.label not in ENTITY_LABELS:
                    continue
                if wanted_label is not None and node.label is not wanted_label:
                    continue
                entities.add(node.uid)
        row = {"rubric": rubric, "count": len(entities)}
        if entity_label is not None:
            row["entity_label"] = entity_label
        return _ok(tool, [row], f"{len(entities)} entities on {rubric} events")

    def execute_custom_query(self, query: str = "") -> ToolResult:
        """Run a read-only dialect query; mutations are refused with the
        offending keyword named in the result."""
        tool = "execute_custom_query"
        try:
            table = execute_restricted_query(self._graph, str(query))
        except MutationBlocked as exc:
            return _err(tool, f"MutationBlocked:{exc.keyword}", str(exc))
        except QuerySyntax as exc:
            return _err(tool, "QuerySyntax", str(exc))
        rows = [dict(zip(table.columns, row)) for row in table.rows]
        return _ok(tool, rows, f"{len(rows)} rows", columns=table.columns)


def _spec(name: str, description: str, properties: dict, required: list[str]) -> ToolSpec:
    return ToolSpec(
        name=name,
        description=description,
        parameters={
            "type": "object",
            "properties": properties,
            "required": required,
        },
    )


TOOL_SPECS: dict[str, ToolSpec] = {
    spec.name: spec
    for spec in (
        _spec(
            "search_companies",
            "Find companies or persons by name, location, or purpose; "
            "fuzzy matching with exact-alias priority.",
            {
                "query": {"type": "string", "description": "name or keyword to look up"},
                "limit": {"type": "integer", "default": 10},
            },
            ["query"],
        ),
        _spec(
            "explore_network",
            "List entities connected to a node through corporate structure, "
            "shared events, or shared name aliases.",
            {"uid": {"type": "string", "description": "node uid to explore"}},
            ["uid"],
        ),
        _spec(
            "get_node_history",
            "Chronological event history of a node including events reached "
            "through its name aliases.",
            {"uid": {"type": "string", "description": "node uid"}},
            ["uid"],
        ),
        _spec(
            "global_text_search",
            "Full-text search over raw publication texts; returns snippets.",
            {
                "query": {"type": "string"},
                "limit": {"type": "integer", "default": 10},
            },
            ["query"],
        ),
        _spec(
            "get_top_entities",
            "Rank entities by nominal-capital, event-count, or risk-rank, "
            "optionally filtered by location, rubric, or keyword.",
            {
                "metric": {
                    "type": "string",
                    "enum": ["nominal-capital", "event-count", "risk-rank"],
                },
                "n": {"type": "integer", "default": 10},
                "location": {"type": "string"},
                "rubric": {"type": "string"},
                "keyword": {"type": "string"},
            },
            ["metric"],
        ),
        _spec(
            "count_entities_by_event",
            "Count distinct entities attached to events of one rubric.",
            {
                "rubric": {"type": "string"},
                "entity_label": {"type": "string", "enum": ["Company", "Person"]},
            },
            ["rubric"],
        ),
        _spec(
            "execute_custom_query",
            "Run a read-only query in the restricted dialect "
            "(MATCH label, WHERE equality, CONNECTED hop, RETURN "
            "count/sum/max or properties, ORDER BY, LIMIT).",
            {"query": {"type": "string"}},
            ["query"],
        ),
    )
}

TOOL_NAMES = tuple(TOOL_SPECS)


def tool_specs(names: list[str] | None = None) -> list[ToolSpec]:
    """Specs for the named tools, in catalogue order."""
    if names is None:
        return [TOOL_SPECS[name] for name in TOOL_NAMES]
    return [TOOL_SPECS[name] for name in TOOL_NAMES if name in names]
