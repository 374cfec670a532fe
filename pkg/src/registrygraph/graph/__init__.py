"""Typed property graph with text index, read-only queries, and snapshots."""

from registrygraph.graph.model import (
    DanglingEdge,
    EdgeKind,
    EmptyQuery,
    GraphEdge,
    GraphError,
    GraphNode,
    LabelConflict,
    MutationBlocked,
    NodeLabel,
    NodeNotFound,
    QuerySyntax,
    SchemaViolation,
    Strength,
)
from registrygraph.graph.query import MUTATION_KEYWORDS, QueryTable
from registrygraph.graph.snapshot import CorruptSnapshot, load_graph, save_graph
from registrygraph.graph.store import PropertyGraph, SearchHit
from registrygraph.graph.textindex import tokenize

__all__ = [
    "CorruptSnapshot",
    "DanglingEdge",
    "EdgeKind",
    "EmptyQuery",
    "GraphEdge",
    "GraphError",
    "GraphNode",
    "LabelConflict",
    "MUTATION_KEYWORDS",
    "MutationBlocked",
    "NodeLabel",
    "NodeNotFound",
    "PropertyGraph",
    "QuerySyntax",
    "QueryTable",
    "SchemaViolation",
    "SearchHit",
    "Strength",
    "load_graph",
    "save_graph",
    "tokenize",
]
