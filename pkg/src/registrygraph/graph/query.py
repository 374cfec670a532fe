"""Guarded read-only query execution.

A query is screened lexically for mutation keywords before any parsing:
a whole-word, case-insensitive match anywhere in the text (string
literals included) refuses execution.  What remains is a minimal
read-only dialect:

    MATCH <Label> [WHERE p='v' [AND ...]]
          [CONNECTED <KIND> [TO <Label> [WHERE ...]]]
    RETURN count | sum(p) | max(p) | p[, p ...]
    [ORDER BY p [ASC|DESC]] [LIMIT n]

Conditions are property equality only.  ``uid`` and ``label`` act as
pseudo-properties in RETURN/ORDER BY/WHERE.  Projection rows are ordered
by the ORDER BY key and then by uid, so output is deterministic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any

from registrygraph.graph.model import (
    EdgeKind,
    GraphNode,
    MutationBlocked,
    NodeLabel,
    QuerySyntax,
)
from registrygraph.graph.store import PropertyGraph

MUTATION_KEYWORDS = ("CREATE", "DELETE", "MERGE", "SET", "REMOVE", "DROP", "DETACH")

_DENY_RE = re.compile(
    r"\b(" + "|".join(MUTATION_KEYWORDS) + r")\b", re.IGNORECASE
)


def screen_mutations(text: str) -> None:
    """Refuse queries containing a mutation keyword.

    Raises:
        MutationBlocked: Naming the first offending keyword in the text.
    """
    match = _DENY_RE.search(text)
    if match:
        raise MutationBlocked(match.group(1))


@dataclass
class QueryTable:
    """Tabular query result with stable column and row order."""

    columns: list[str]
    rows: list[list[Any]] = field(default_factory=list)


_TOKEN_SPEC = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<string>'[^']*')
  | (?P<number>-?\d+(?:\.\d+)?)
  | (?P<lparen>\()
  | (?P<rparen>\))
  | (?P<comma>,)
  | (?P<eq>=)
  | (?P<word>[A-Za-z_][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)

_KEYWORDS = {
    "MATCH",
    "WHERE",
    "AND",
    "CONNECTED",
    "TO",
    "RETURN",
    "ORDER",
    "BY",
    "ASC",
    "DESC",
    "LIMIT",
    "COUNT",
    "SUM",
    "MAX",
}


@dataclass
class _Token:
    kind: str
    value: Any
    text: str


def _lex(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_SPEC.match(text, pos)
        if match is None:
            raise QuerySyntax(f"unexpected character {text[pos]!r} at offset {pos}")
        pos = match.end()
        kind = match.lastgroup or ""
        raw = match.group(0)
        if kind == "ws":
            continue
        if kind == "string":
            tokens.append(_Token("string", raw[1:-1], raw))
        elif kind == "number":
            value = float(raw) if "." in raw else int(raw)
            tokens.append(_Token("number", value, raw))
        elif kind == "word":
            upper = raw.upper()
            if upper in _KEYWORDS:
                tokens.append(_Token(upper, upper, raw))
            else:
                tokens.append(_Token("ident", raw, raw))
        else:
            tokens.append(_Token(kind, raw, raw))
    return tokens


@dataclass
class _Condition:
    prop: str
    value: Any


@dataclass
class _HopClause:
    kind: EdgeKind
    label: NodeLabel | None = None
    conditions: list[_Condition] = field(default_factory=list)


@dataclass
class _Query:
    label: NodeLabel
    conditions: list[_Condition]
    hop: _HopClause | None
    aggregate: tuple[str, str | None] | None  # (fn, prop)
    projection: list[str]
    order_by: str | None
    descending: bool
    limit: int | None


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self._tokens = tokens
        self._pos = 0

    def _peek(self) -> _Token | None:
        return self._tokens[self._pos] if self._pos < len(self._tokens) else None

    def _take(self, kind: str | None = None) -> _Token:
        token = self._peek()
        if token is None:
            raise QuerySyntax("unexpected end of query")
        if kind is not None and token.kind != kind:
            raise QuerySyntax(f"expected {kind}, got {token.text!r}")
        self._pos += 1
        return token

    def _accept(self, kind: str) -> _Token | None:
        token = self._peek()
        if token is not None and token.kind == kind:
            self._pos += 1
            return token
        return None

    def parse(self) -> _Query:
        self._take("MATCH")
        label = self._label()
        conditions = self._where_clause()
        hop = None
        if self._accept("CONNECTED"):
            hop = self._hop_clause()
        self._take("RETURN")
        aggregate, projection = self._return_clause()
        order_by = None
        descending = False
        if self._accept("ORDER"):
            self._take("BY")
            order_by = self._ident()
            if self._accept("DESC"):
                descending = True
            else:
                self._accept("ASC")
            if aggregate is not None:
                raise QuerySyntax("ORDER BY requires a projection, not an aggregate")
        limit = None
        if self._accept("LIMIT"):
            token = self._take("number")
            if not isinstance(token.value, int) or token.value < 0:
                raise QuerySyntax("LIMIT takes a non-negative integer")
            limit = token.value
        if self._peek() is not None:
            raise QuerySyntax(f"trailing input at {self._peek().text!r}")
        return _Query(
            label=label,
            conditions=conditions,
            hop=hop,
            aggregate=aggregate,
            projection=projection,
            order_by=order_by,
            descending=descending,
            limit=limit,
        )

    def _label(self) -> NodeLabel:
        token = self._take("ident")
        for label in NodeLabel:
            if label.value.lower() == token.value.lower():
                return label
        raise QuerySyntax(f"unknown label {token.value!r}")

    def _ident(self) -> str:
        token = self._peek()
        if token is None:
            raise QuerySyntax("unexpected end of query")
        if token.kind == "ident":
            return self._take().value
        raise QuerySyntax(f"expected identifier, got {token.text!r}")

    def _where_clause(self) -> list[_Condition]:
        conditions: list[_Condition] = []
        if not self._accept("WHERE"):
            return conditions
        while True:
            prop = self._ident()
            self._take("eq")
            token = self._peek()
            if token is None or token.kind not in ("string", "number"):
                raise QuerySyntax("condition value must be a string or number")
            self._take()
            conditions.append(_Condition(prop=prop, value=token.value))
            if not self._accept("AND"):
                break
        return conditions

    def _hop_clause(self) -> _HopClause:
        token = self._take("ident")
        try:
            kind = EdgeKind(token.value.upper())
        except ValueError:
            raise QuerySyntax(f"unknown edge kind {token.value!r}") from None
        clause = _HopClause(kind=kind)
        if self._accept("TO"):
            clause.label = self._label()
            clause.conditions = self._where_clause()
        return clause

    def _return_clause(self) -> tuple[tuple[str, str | None] | None, list[str]]:
        token = self._peek()
        if token is None:
            raise QuerySyntax("RETURN needs items")
        if token.kind == "COUNT":
            self._take()
            return ("count", None), []
        if token.kind in ("SUM", "MAX"):
            fn = self._take().kind.lower()
            self._take("lparen")
            prop = self._ident()
            self._take("rparen")
            return (fn, prop), []
        projection = [self._ident()]
        while self._accept("comma"):
            projection.append(self._ident())
        return None, projection


def _node_value(node: GraphNode, prop: str) -> Any:
    if prop == "uid":
        return node.uid
    if prop == "label":
        return node.label.value
    return node.props.get(prop)


def _matches(node: GraphNode, conditions: list[_Condition]) -> bool:
    return all(_node_value(node, c.prop) == c.value for c in conditions)


def _rank_value(value: Any) -> tuple[int, Any]:
    # Numbers sort before strings; booleans and other scalars sort by
    # their textual form so mixed-type columns never raise.
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return (0, value)
    return (1, repr(value))


def _order_nodes(
    nodes: list[GraphNode], order_by: str | None, descending: bool
) -> list[GraphNode]:
    """Order by the requested key with uid as the final tie-break.

    Nodes missing the key sort last regardless of direction.
    """
    if order_by is None:
        return sorted(nodes, key=lambda n: n.uid)
    present = [n for n in nodes if _node_value(n, order_by) is not None]
    absent = sorted(
        (n for n in nodes if _node_value(n, order_by) is None), key=lambda n: n.uid
    )
    present.sort(key=lambda n: (_rank_value(_node_value(n, order_by)), n.uid))
    if descending:
        # Stable re-sort on the key alone keeps uid ascending within ties.
        present.sort(key=lambda n: _rank_value(_node_value(n, order_by)), reverse=True)
    return present + absent


def execute_restricted_query(graph: PropertyGraph, text: str) -> QueryTable:
    """Parse and run a query under the read-only dialect.

    Raises:
        MutationBlocked: If the text contains a mutation keyword.
        QuerySyntax: If the text does not parse.
    """
    screen_mutations(text)
    query = _Parser(_lex(text)).parse()

    selected = [
        node
        for node in graph.nodes(label=query.label)
        if _matches(node, query.conditions)
    ]
    if query.hop is not None:
        hop = query.hop
        kept = []
        for node in selected:
            for edge, other in graph.neighbors(node.uid, kinds=[hop.kind]):
                if hop.label is not None and other.label is not hop.label:
                    continue
                if not _matches(other, hop.conditions):
                    continue
                kept.append(node)
                break
        selected = kept

    if query.aggregate is not None:
        fn, prop = query.aggregate
        if fn == "count":
            return QueryTable(columns=["count"], rows=[[len(selected)]])
        values = [
            v
            for v in (_node_value(node, prop or "") for node in selected)
            if isinstance(v, (int, float)) and not isinstance(v, bool)
        ]
        if fn == "sum":
            return QueryTable(columns=[f"sum({prop})"], rows=[[sum(values)]])
        return QueryTable(columns=[f"max({prop})"], rows=[[max(values) if values else None]])

    selected = _order_nodes(selected, query.order_by, query.descending)
    if query.limit is not None:
        selected = selected[: query.limit]
    rows = [[_node_value(node, prop) for prop in query.projection] for node in selected]
    return QueryTable(columns=list(query.projection), rows=rows)
