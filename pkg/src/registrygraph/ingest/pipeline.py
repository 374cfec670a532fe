"""Phase 1 ingestion and shared plumbing for phases 2 and 3.

Node identity is deterministic so that re-running ingestion merges
instead of duplicating: companies key on their registry id when present
(otherwise on an order-preserving name slug), persons on the name slug,
events on the record id, weak nodes on the extracted name, and hubs on
the hub key itself.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from registrygraph.graph.model import (
    EdgeKind,
    ENTITY_LABELS,
    GraphEdge,
    GraphNode,
    NodeLabel,
    Strength,
    Uid,
)
from registrygraph.graph.store import PropertyGraph
from registrygraph.graph.textindex import tokenize
from registrygraph.ingest.extraction import ExtractionEntity
from registrygraph.ingest.hubkeys import EmptyKey, generate_hub_key, name_slug
from registrygraph.ingest.records import EntityRef, RegistryRecord

logger = logging.getLogger(__name__)

#: Structured role -> edge kind connecting the entity to the event node.
ROLE_EDGE_MAP: dict[str, EdgeKind] = {
    "SUBJECT": EdgeKind.HAS_EVENT,
    "PARENT": EdgeKind.HEAD_OFFICE_OF,
    "SELLER": EdgeKind.TRANSFERRED_TO,
    "BUYER": EdgeKind.ACQUIRED_FROM,
    "DEBTOR_COMPANY": EdgeKind.HAS_EVENT,
    "DEBTOR_PERSON": EdgeKind.INVOLVED_IN,
    "DISSOLVED": EdgeKind.DISSOLVED_IN,
    "ASSURANCE": EdgeKind.PROVIDES_ASSURANCE_TO,
    "NAME_ALIAS": EdgeKind.HAS_NAME,
}

#: Fallback for roles without a dedicated mapping.
DEFAULT_EDGE_KIND = EdgeKind.RELATED_TO

#: Rubrics whose free text goes through entity extraction: commercial
#: register mutations, bankruptcy phases, and debt-enforcement notices.
EXTRACTION_RUBRICS = frozenset({"HR01", "KK03", "KK02", "KK06", "LS01", "LS02"})


@dataclass
class IngestStats:
    """Counters emitted by ingestion steps."""

    records_seen: int = 0
    records_skipped: int = 0
    events_created: int = 0
    companies_created: int = 0
    persons_created: int = 0
    weak_nodes_created: int = 0
    hubs_created: int = 0
    edges_created: int = 0
    aliases_skipped: int = 0

    def as_dict(self) -> dict[str, int]:
        return dict(self.__dict__)


def event_uid(record_id: str) -> Uid:
    return f"evt:{record_id}"


def entity_uid(ref: EntityRef) -> Uid:
    """Deterministic uid for a strong entity descriptor."""
    if ref.kind == "company":
        if ref.registry_id:
            return "co:" + "".join(tokenize(ref.registry_id))
        return "co:" + name_slug(ref.name)
    return "pe:" + name_slug(ref.name)


def weak_uid(kind: str, name: str) -> Uid:
    prefix = "co" if kind == "company" else "pe"
    return f"wk:{prefix}:{name_slug(name)}"


def hub_uid(key: str) -> Uid:
    return f"hub:{key}"


def role_edge_kind(role: str, kind: str) -> EdgeKind:
    """Edge kind for a (role, entity-kind) pair.

    Persons extracted from resolutions act in the event; companies use
    the structured role mapping with RELATED_TO as the fallback.
    """
    normalized = role.strip().upper().replace(" ", "_")
    if kind == "person" and normalized not in ROLE_EDGE_MAP:
        return EdgeKind.ACTED_IN
    return ROLE_EDGE_MAP.get(normalized, DEFAULT_EDGE_KIND)


def ingest_structured(records: list[RegistryRecord], graph: PropertyGraph) -> IngestStats:
    """Phase 1: build strong entities, events, and role edges.

    The pipeline never aborts on a bad record; failures are counted in
    the returned stats and logged.
    """
    stats = IngestStats()
    for record in records:
        stats.records_seen += 1
        try:
            _ingest_one(record, graph, stats)
        except Exception as exc:  # noqa: BLE001 - malformed records must not abort the run
            stats.records_skipped += 1
            logger.warning("skipping record %s: %s", record.record_id, exc)
    return stats


def _ingest_one(record: RegistryRecord, graph: PropertyGraph, stats: IngestStats) -> None:
    ev_uid = event_uid(record.record_id)
    created = not graph.has_node(ev_uid)
    props = {
        "record_id": record.record_id,
        "rubric": record.rubric,
        "date": record.date,
        "location": record.location,
        "language": record.language,
        "full_text": record.full_text(),
    }
    if record.sub_rubric:
        props["sub_rubric"] = record.sub_rubric
    graph.put_node(GraphNode(uid=ev_uid, label=NodeLabel.EVENT, props=props))
    if created:
        stats.events_created += 1

    subject_uid: Uid | None = None
    aliases: list[EntityRef] = []
    for role, refs in record.structured.items():
        normalized = role.strip().upper().replace(" ", "_")
        if normalized == "NAME_ALIAS":
            aliases.extend(refs)
            continue
        for ref in refs:
            uid = _put_strong_entity(ref, record, graph, stats)
            if normalized == "SUBJECT" and subject_uid is None:
                subject_uid = uid
            kind = role_edge_kind(role, ref.kind)
            edge = GraphEdge(
                uid, ev_uid, kind, {"role": normalized, "date": record.date}
            )
            before = graph.edge_count()
            graph.put_edge(edge)
            stats.edges_created += graph.edge_count() - before

    for ref in aliases:
        # an alias names the record's subject under another spelling;
        # without a subject there is nothing to bind it to
        if subject_uid is None:
            stats.aliases_skipped += 1
            logger.warning(
                "record %s: NAME_ALIAS %r without SUBJECT", record.record_id, ref.name
            )
            continue
        try:
            key = generate_hub_key(ref.name)
        except EmptyKey:
            stats.aliases_skipped += 1
            continue
        h_uid = _ensure_hub(graph, key, ref.name, stats)
        before = graph.edge_count()
        graph.put_edge(GraphEdge(subject_uid, h_uid, EdgeKind.HAS_NAME))
        stats.edges_created += graph.edge_count() - before


def _put_strong_entity(
    ref: EntityRef, record: RegistryRecord, graph: PropertyGraph, stats: IngestStats
) -> Uid:
    uid = entity_uid(ref)
    label = NodeLabel.COMPANY if ref.kind == "company" else NodeLabel.PERSON
    props = {"name": ref.name, **ref.attrs}
    if ref.registry_id:
        props["registry_id"] = ref.registry_id
    if "location" not in props and record.location:
        props["location"] = record.location
    created = not graph.has_node(uid)
    graph.put_node(GraphNode(uid=uid, label=label, strength=Strength.STRONG, props=props))
    if created:
        if label is NodeLabel.COMPANY:
            stats.companies_created += 1
        else:
            stats.persons_created += 1
    return uid


def _ensure_hub(graph: PropertyGraph, key: str, name: str, stats: IngestStats) -> Uid:
    uid = hub_uid(key)
    if not graph.has_node(uid):
        graph.put_node(
            GraphNode(uid=uid, label=NodeLabel.NAME_HUB, props={"key": key, "name": name})
        )
        stats.hubs_created += 1
    return uid


def select_extraction_targets(graph: PropertyGraph) -> list[Uid]:
    """Event uids whose rubric calls for free-text entity extraction."""
    return [
        node.uid
        for node in graph.nodes(label=NodeLabel.EVENT)
        if node.props.get("rubric") in EXTRACTION_RUBRICS
    ]


def materialize_weak_nodes(
    extractions: dict[Uid, list[ExtractionEntity]], graph: PropertyGraph
) -> IngestStats:
    """Phase 2 output -> weak nodes, role edges, and hub links.

    Applying the same extraction twice yields the same graph: node uids
    derive from the extracted names and edges deduplicate on identity.
    """
    stats = IngestStats()
    for ev_uid in sorted(extractions):
        if not graph.has_node(ev_uid):
            logger.warning("extraction references unknown event %s", ev_uid)
            continue
        for entity in extractions[ev_uid]:
            try:
                uid = weak_uid(entity.kind, entity.name)
                key = generate_hub_key(entity.name)
            except EmptyKey:
                continue
            label = NodeLabel.COMPANY if entity.kind == "company" else NodeLabel.PERSON
            created = not graph.has_node(uid)
            graph.put_node(
                GraphNode(
                    uid=uid, label=label, strength=Strength.WEAK, props={"name": entity.name}
                )
            )
            if created:
                stats.weak_nodes_created += 1
            kind = role_edge_kind(entity.role, entity.kind)
            date = graph.get_node(ev_uid).props.get("date")
            before = graph.edge_count()
            graph.put_edge(
                GraphEdge(uid, ev_uid, kind, {"role": entity.role, "date": date})
            )
            h_uid = _ensure_hub(graph, key, entity.name, stats)
            graph.put_edge(GraphEdge(uid, h_uid, EdgeKind.HAS_NAME))
            stats.edges_created += graph.edge_count() - before
    ensure_hub_links(graph, stats)
    return stats


def ensure_hub_links(graph: PropertyGraph, stats: IngestStats | None = None) -> int:
    """Bind every entity node to the hub of its name; idempotent.

    Runs as part of weak-node materialization and again at the start of
    resolution, so hubs exist even for corpora ingested without the
    extraction phase.

    Returns:
        Number of HAS_NAME edges added.
    """
    stats = stats if stats is not None else IngestStats()
    added = 0
    for label in ENTITY_LABELS:
        for node in list(graph.nodes(label=label)):
            name = node.name
            if not name:
                continue
            try:
                key = generate_hub_key(name)
            except EmptyKey:
                continue
            h_uid = _ensure_hub(graph, key, name, stats)
            before = graph.edge_count()
            graph.put_edge(GraphEdge(node.uid, h_uid, EdgeKind.HAS_NAME))
            delta = graph.edge_count() - before
            added += delta
            stats.edges_created += delta
    return added
