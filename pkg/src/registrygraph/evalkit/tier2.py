"""Tool-routing audit computed from trajectory logs.

Four behavioral rates, kept as exact rationals so they equal brute-force
recomputation bit for bit:

    TSA  fraction of trajectories whose FIRST tool call is a structured
         graph operation (trajectories with no steps have no first call
         and are excluded from this denominator only)
    FAR  fraction containing a global text search anywhere
    ARS  mean number of tool invocations per trajectory
    QSR  fraction with at least one successful retrieval
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from registrygraph.agent.turn import Trajectory

#: Deterministic graph operations; a first call here counts toward TSA.
STRUCTURED_TOOLS = frozenset(
    {"search_companies", "get_node_history", "explore_network"}
)

FALLBACK_TOOL = "global_text_search"


class EmptyInput(ValueError):
    """tier2_evaluate needs at least one trajectory."""


@dataclass
class Tier2Result:
    """Exact routing rates; ``tsa`` is None when every turn had 0 steps."""

    tsa: Fraction | None
    far: Fraction
    ars: Fraction
    qsr: Fraction
    mean_latency_s: float
    trajectories: int
    tsa_denominator: int

    def as_floats(self) -> dict[str, float | None]:
        return {
            "tsa": None if self.tsa is None else float(self.tsa),
            "far": float(self.far),
            "ars": float(self.ars),
            "qsr": float(self.qsr),
            "mean_latency_s": self.mean_latency_s,
        }


def tier2_evaluate(trajectories: Iterable[Trajectory]) -> Tier2Result:
    """Compute the four routing rates over a trajectory log.

    Raises:
        EmptyInput: If the iterable yields no trajectories.
    """
    items = list(trajectories)
    if not items:
        raise EmptyInput("no trajectories to evaluate")

    total = len(items)
    with_steps = 0
    structured_first = 0
    fallback_hits = 0
    step_sum = 0
    success_hits = 0
    latency_sum = 0.0
    for trajectory in items:
        steps = trajectory.steps
        step_sum += len(steps)
        latency_sum += trajectory.latency_s
        if steps:
            with_steps += 1
            if steps[0].tool in STRUCTURED_TOOLS:
                structured_first += 1
        if any(step.tool == FALLBACK_TOOL for step in steps):
            fallback_hits += 1
        if any(step.status == "success" for step in steps):
            success_hits += 1

    tsa = Fraction(structured_first, with_steps) if with_steps else None
    return Tier2Result(
        tsa=tsa,
        far=Fraction(fallback_hits, total),
        ars=Fraction(step_sum, total),
        qsr=Fraction(success_hits, total),
        mean_latency_s=latency_sum / total,
        trajectories=total,
        tsa_denominator=with_steps,
    )
