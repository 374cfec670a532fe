"""Benchmark generation by reading answers out of the graph first.

Dataset items are produced backwards: deterministic seed extractors
pull small subgraphs (a node property, a corporate link, a hub's name
variants, an event chronology), the expected answer is rendered from
the seed by a fixed template, and only the question's phrasing is
delegated to the model.  The factual core of every expected answer is
therefore copied from the graph, never generated.

Four seed classes feed three difficulty levels:

    level 1  direct-extraction      single node property reads
    level 2  multi-hop-hierarchy    two companies linked through one event
    level 2  namehub-resolution     name variants merged under one hub
    level 3  temporal-history       chronological event sequences
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass
from typing import Any

from registrygraph.graph.model import (
    CORPORATE_STRUCTURE_KINDS,
    EdgeKind,
    NodeLabel,
)
from registrygraph.graph.store import PropertyGraph
from registrygraph.llm.gateway import LlmConfig, LlmGateway

logger = logging.getLogger(__name__)

SEED_CLASSES = (
    "direct-extraction",
    "multi-hop-hierarchy",
    "namehub-resolution",
    "temporal-history",
)

CLASS_LEVELS = {
    "direct-extraction": 1,
    "multi-hop-hierarchy": 2,
    "namehub-resolution": 2,
    "temporal-history": 3,
}


class EmptySeed(Warning):
    """The graph yields no seeds at all."""


class PartialDataset(Warning):
    """A level got fewer items than requested."""


@dataclass
class BenchmarkItem:
    question: str
    expected_answer: str
    level: int
    seed_class: str

    def __post_init__(self):
        if not self.expected_answer:
            raise ValueError("expected_answer must be non-empty")
        if self.level not in (1, 2, 3):
            raise ValueError(f"level must be 1, 2, or 3, got {self.level!r}")
        if self.seed_class not in SEED_CLASSES:
            raise ValueError(f"unknown seed class {self.seed_class!r}")

    def to_dict(self) -> dict[str, Any]:
        return {
            "question": self.question,
            "expected_answer": self.expected_answer,
            "level": self.level,
            "seed_class": self.seed_class,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "BenchmarkItem":
        return cls(
            question=data["question"],
            expected_answer=data["expected_answer"],
            level=int(data["level"]),
            seed_class=data["seed_class"],
        )


# ----------------------------------------------------------------------
# seed extraction (deterministic, graph order)

_PROPERTY_PHRASES = {
    "location": "{name} is registered in {value}.",
    "purpose": "The registered purpose of {name} is: {value}",
    "nominal_capital": "The nominal capital of {name} is {value} CHF.",
}

_PROPERTY_QUESTIONS = {
    "location": "Where is {name} registered?",
    "purpose": "What is the registered purpose of {name}?",
    "nominal_capital": "What is the nominal capital of {name}?",
}


def _direct_extraction_seeds(graph: PropertyGraph) -> list[dict[str, Any]]:
    seeds = []
    for node in graph.nodes(label=NodeLabel.COMPANY):
        for prop in ("location", "purpose", "nominal_capital"):
            value = node.props.get(prop)
            if value in (None, ""):
                continue
            seeds.append(
                {"name": node.name, "uid": node.uid, "property": prop, "value": value}
            )
    return seeds


def _hierarchy_seeds(graph: PropertyGraph) -> list[dict[str, Any]]:
    corporate = CORPORATE_STRUCTURE_KINDS
    seeds = []
    for event in graph.nodes(label=NodeLabel.EVENT):
        attached = [
            (edge, node)
            for edge, node in graph.neighbors(event.uid, direction="in")
            if node.label is NodeLabel.COMPANY
        ]
        corporate_pairs = [(e, n) for e, n in attached if e.kind in corporate]
        if not corporate_pairs or len(attached) < 2:
            continue
        edge_a, node_a = corporate_pairs[0]
        edge_b, node_b = next(
            ((e, n) for e, n in attached if n.uid != node_a.uid), (None, None)
        )
        if node_b is None:
            continue
        seeds.append(
            {
                "event_uid": event.uid,
                "date": event.props.get("date", ""),
                "rubric": event.props.get("rubric", ""),
                "name_a": node_a.name,
                "kind_a": edge_a.kind.value,
                "name_b": node_b.name,
                "kind_b": edge_b.kind.value,
            }
        )
    return seeds


def _hub_seeds(graph: PropertyGraph) -> list[dict[str, Any]]:
    seeds = []
    for hubnode in graph.nodes(label=NodeLabel.NAME_HUB):
        pairs = graph.neighbors(hubnode.uid, kinds=[EdgeKind.HAS_NAME], direction="in")
        names = sorted({node.name for _, node in pairs if node.name})
        if len(names) < 2:
            continue
        seeds.append({"hub_uid": hubnode.uid, "hub_name": hubnode.name, "names": names})
    return seeds


def _history_seeds(graph: PropertyGraph) -> list[dict[str, Any]]:
    seeds = []
    for label in (NodeLabel.COMPANY, NodeLabel.PERSON):
        for node in graph.nodes(label=label):
            events = [
                other
                for _, other in graph.neighbors(node.uid, direction="out")
                if other.label is NodeLabel.EVENT and other.props.get("date")
            ]
            if len(events) < 2:
                continue
            ordered = sorted(events, key=lambda e: (e.props["date"], e.uid))
            seeds.append(
                {
                    "name": node.name,
                    "uid": node.uid,
                    "events": [
                        {"date": e.props["date"], "rubric": e.props.get("rubric", "")}
                        for e in ordered
                    ],
                }
            )
    return seeds


# ----------------------------------------------------------------------
# rendering

def _expected_answer(seed_class: str, seed: dict[str, Any]) -> str:
    if seed_class == "direct-extraction":
        return _PROPERTY_PHRASES[seed["property"]].format(
            name=seed["name"], value=seed["value"]
        )
    if seed_class == "multi-hop-hierarchy":
        return (
            "{name_a} and {name_b} are connected through the {rubric} "
            "publication of {date}."
        ).format(**seed)
    if seed_class == "namehub-resolution":
        return "The name {hub_name} covers these recorded variants: {variants}.".format(
            hub_name=seed["hub_name"], variants="; ".join(seed["names"])
        )
    lines = [f"{e['date']}: {e['rubric']}" for e in seed["events"]]
    return "Chronology for {name}: {entries}.".format(
        name=seed["name"], entries="; ".join(lines)
    )


def _fallback_question(seed_class: str, seed: dict[str, Any]) -> str:
    if seed_class == "direct-extraction":
        return _PROPERTY_QUESTIONS[seed["property"]].format(name=seed["name"])
    if seed_class == "multi-hop-hierarchy":
        return f"How are {seed['name_a']} and {seed['name_b']} connected?"
    if seed_class == "namehub-resolution":
        return f"Which recorded name variants refer to {seed['hub_name']}?"
    return f"What is the chronological publication history of {seed['name']}?"


def _phrase_question(
    seed_class: str,
    seed: dict[str, Any],
    gateway: LlmGateway,
    config: LlmConfig | None,
) -> str:
    fact = _expected_answer(seed_class, seed)
    prompt = (
        "Phrase exactly one natural-language question a registry analyst "
        "would ask whose correct answer is the following fact. Reply with "
        f"the question only.\n\nFact: {fact}"
    )
    reply = gateway.chat([{"role": "user", "content": prompt}], config=config)
    question = (reply.text or "").strip()
    if not question:
        logger.warning("model returned no question for a %s seed; using template", seed_class)
        return _fallback_question(seed_class, seed)
    return question


def generate_benchmark(
    graph: PropertyGraph,
    counts: dict[int, int],
    gateway: LlmGateway,
    config: LlmConfig | None = None,
) -> list[BenchmarkItem]:
    """Produce up to counts[level] items per difficulty level.

    Level 2 interleaves its two seed classes.  Shortfalls emit a
    PartialDataset warning; a graph with no seeds at all emits
    EmptySeed and yields zero items.
    """
    pools: dict[str, list[dict[str, Any]]] = {
        "direct-extraction": _direct_extraction_seeds(graph),
        "multi-hop-hierarchy": _hierarchy_seeds(graph),
        "namehub-resolution": _hub_seeds(graph),
        "temporal-history": _history_seeds(graph),
    }
    if not any(pools.values()):
        warnings.warn("graph yields no benchmark seeds", EmptySeed, stacklevel=2)
        return []

    plan: list[tuple[str, dict[str, Any]]] = []
    for level in (1, 2, 3):
        wanted = counts.get(level, 0)
        if wanted <= 0:
            continue
        if level == 1:
            chosen = [("direct-extraction", s) for s in pools["direct-extraction"][:wanted]]
        elif level == 3:
            chosen = [("temporal-history", s) for s in pools["temporal-history"][:wanted]]
        else:
            chosen = []
            hierarchy = list(pools["multi-hop-hierarchy"])
            hubs = list(pools["namehub-resolution"])
            while len(chosen) < wanted and (hierarchy or hubs):
                if hierarchy:
                    chosen.append(("multi-hop-hierarchy", hierarchy.pop(0)))
                if len(chosen) < wanted and hubs:
                    chosen.append(("namehub-resolution", hubs.pop(0)))
        if len(chosen) < wanted:
            warnings.warn(
                f"level {level}: only {len(chosen)} of {wanted} requested items "
                "could be seeded",
                PartialDataset,
                stacklevel=2,
            )
        plan.extend(chosen)

    items = []
    for seed_class, seed in plan:
        items.append(
            BenchmarkItem(
                question=_phrase_question(seed_class, seed, gateway, config),
                expected_answer=_expected_answer(seed_class, seed),
                level=CLASS_LEVELS[seed_class],
                seed_class=seed_class,
            )
        )
    return items
