"""Identity-resolution precision over name hubs.

A hub's connected nodes are the spelling variants the pipeline decided
to merge under one identity.  For every sampled hub, each distinct
merged name is compared once against the hub's representative name; the
merge counts as a true positive when the Levenshtein similarity
exceeds 0.6 or the alphabetically sorted token sets match exactly.
The second rule accepts comma-first and other token permutations that
plain string similarity scores poorly.

Precision = true positives / comparisons.  Recall is deliberately not
computed: finding every missed merge would require a full-corpus audit.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from registrygraph.graph.model import EdgeKind, NodeLabel
from registrygraph.graph.store import PropertyGraph
from registrygraph.evalkit.similarity import levenshtein_similarity, token_set_key

#: Hub degree window that skips trivial and pathological hubs.
MIN_CONNECTED = 2
MAX_CONNECTED = 20

SIMILARITY_THRESHOLD = 0.6


class EmptySample(ValueError):
    """No hub satisfies the degree window."""


@dataclass
class Tier1Sample:
    """One hub with the distinct merged names connected to it."""

    hub_uid: str
    representative_name: str
    merged_names: set[str] = field(default_factory=set)


@dataclass
class Tier1Result:
    precision: float
    comparisons: int
    true_positives: int
    hubs_sampled: int
    false_merges: list[tuple[str, str, str]] = field(default_factory=list)


def collect_hub_samples(
    graph: PropertyGraph,
    min_connected: int = MIN_CONNECTED,
    max_connected: int = MAX_CONNECTED,
) -> list[Tier1Sample]:
    """All hubs whose connected-node count falls inside the window.

    Returned in hub-uid order so sampling is reproducible per seed.
    """
    samples = []
    for hub in graph.nodes(label=NodeLabel.NAME_HUB):
        pairs = graph.neighbors(hub.uid, kinds=[EdgeKind.HAS_NAME], direction="in")
        if not (min_connected <= len(pairs) <= max_connected):
            continue
        names = {node.name for _, node in pairs if node.name}
        if not names:
            continue
        samples.append(Tier1Sample(hub.uid, hub.name, names))
    return samples


def is_true_positive(merged_name: str, hub_name: str) -> bool:
    """The published merge-verification rule for one comparison."""
    if levenshtein_similarity(merged_name, hub_name) > SIMILARITY_THRESHOLD:
        return True
    return token_set_key(merged_name) == token_set_key(hub_name)


def tier1_evaluate(
    graph: PropertyGraph, sample_size: int = 1000, rng_seed: int = 0
) -> Tier1Result:
    """Precision of the deduplication layer over a seeded hub sample.

    Raises:
        EmptySample: If no hub has between 2 and 20 connected nodes.
    """
    candidates = collect_hub_samples(graph)
    if not candidates:
        raise EmptySample(
            f"no hub has between {MIN_CONNECTED} and {MAX_CONNECTED} connected nodes"
        )
    rng = random.Random(rng_seed)
    if len(candidates) > sample_size:
        sampled = rng.sample(candidates, sample_size)
    else:
        sampled = list(candidates)

    comparisons = 0
    true_positives = 0
    false_merges: list[tuple[str, str, str]] = []
    for sample in sampled:
        for merged in sorted(sample.merged_names):
            comparisons += 1
            if is_true_positive(merged, sample.representative_name):
                true_positives += 1
            else:
                false_merges.append((sample.hub_uid, merged, sample.representative_name))
    precision = true_positives / comparisons if comparisons else 0.0
    return Tier1Result(
        precision=precision,
        comparisons=comparisons,
        true_positives=true_positives,
        hubs_sampled=len(sampled),
        false_merges=false_merges,
    )
