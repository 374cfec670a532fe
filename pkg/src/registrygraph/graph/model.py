"""Node, edge, and error types for the registry property graph.

The schema is deliberately small: four node labels, ten edge kinds, and
scalar properties.  Entities (companies, persons) carry a strength marker
that records whether they came from structured registry columns (strong)
or from text extraction (weak); events and name hubs have no strength.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

Uid = str

#: Scalar property value.  Dates are carried as ISO "YYYY-MM-DD" strings,
#: which keeps snapshots JSON-round-trippable and sorts chronologically.
PropValue = Any


class NodeLabel(Enum):
    COMPANY = "Company"
    PERSON = "Person"
    EVENT = "Event"
    NAME_HUB = "NameHub"


#: Labels describing real-world actors rather than publications or hubs.
ENTITY_LABELS = (NodeLabel.COMPANY, NodeLabel.PERSON)


class Strength(Enum):
    STRONG = "strong"
    WEAK = "weak"
    NOT_APPLICABLE = "n/a"


class EdgeKind(Enum):
    HAS_EVENT = "HAS_EVENT"
    HEAD_OFFICE_OF = "HEAD_OFFICE_OF"
    TRANSFERRED_TO = "TRANSFERRED_TO"
    ACQUIRED_FROM = "ACQUIRED_FROM"
    INVOLVED_IN = "INVOLVED_IN"
    DISSOLVED_IN = "DISSOLVED_IN"
    PROVIDES_ASSURANCE_TO = "PROVIDES_ASSURANCE_TO"
    HAS_NAME = "HAS_NAME"
    ACTED_IN = "ACTED_IN"
    RELATED_TO = "RELATED_TO"


#: Edge kinds that describe corporate structure rather than mere mentions.
CORPORATE_STRUCTURE_KINDS = frozenset(
    {
        EdgeKind.HEAD_OFFICE_OF,
        EdgeKind.ACQUIRED_FROM,
        EdgeKind.TRANSFERRED_TO,
        EdgeKind.PROVIDES_ASSURANCE_TO,
    }
)


class GraphError(Exception):
    """Base class for graph-layer failures."""


class LabelConflict(GraphError):
    """A uid was re-used with a different node label."""


class DanglingEdge(GraphError):
    """An edge referenced an endpoint that is not in the graph."""


class SchemaViolation(GraphError):
    """An edge would break a structural rule of the schema."""


class NodeNotFound(GraphError):
    """Lookup of an unknown uid."""


class EmptyQuery(GraphError):
    """A text search was issued with no usable tokens."""


class MutationBlocked(GraphError):
    """A query contained a mutating keyword and was refused.

    Attributes:
        keyword: The offending keyword, upper-cased.
    """

    def __init__(self, keyword: str):
        self.keyword = keyword.upper()
        super().__init__(f"mutation keyword blocked: {self.keyword}")


class QuerySyntax(GraphError):
    """A query did not parse under the read-only dialect."""


@dataclass
class GraphNode:
    """A node in the property graph.

    Attributes:
        uid: Opaque unique identifier.
        label: One of the four node labels.
        strength: Provenance marker; mandatory for entities, fixed to
            NOT_APPLICABLE for events and name hubs.
        props: Scalar properties (strings, numbers, ISO date strings).

    Raises:
        ValueError: If the strength marker does not fit the label.
    """

    uid: Uid
    label: NodeLabel
    strength: Strength = Strength.NOT_APPLICABLE
    props: dict[str, PropValue] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.uid:
            raise ValueError("node uid must be non-empty")
        if self.label in ENTITY_LABELS:
            if self.strength is Strength.NOT_APPLICABLE:
                raise ValueError(
                    f"{self.label.value} node {self.uid!r} needs strong/weak strength"
                )
        elif self.strength is not Strength.NOT_APPLICABLE:
            raise ValueError(
                f"{self.label.value} node {self.uid!r} cannot carry a strength marker"
            )

    @property
    def name(self) -> str:
        return str(self.props.get("name", ""))


@dataclass
class GraphEdge:
    """A directed edge.  Identity is (src, dst, kind, role).

    Re-inserting an edge with the same identity merges the remaining
    properties instead of duplicating the edge, so ingestion stays
    idempotent.

    Attributes:
        src: Source node uid.
        dst: Destination node uid.
        kind: Relationship kind.
        props: Extra scalars; ``role`` and ``date`` are the common ones.
    """

    src: Uid
    dst: Uid
    kind: EdgeKind
    props: dict[str, PropValue] = field(default_factory=dict)

    @property
    def role(self) -> str | None:
        value = self.props.get("role")
        return None if value is None else str(value)

    @property
    def date(self) -> str | None:
        value = self.props.get("date")
        return None if value is None else str(value)

    def identity(self) -> tuple[Uid, Uid, str, str | None]:
        return (self.src, self.dst, self.kind.value, self.role)
