"""Finite dialogue-state machine steering retrieval and synthesis.

Five states describe how far the conversation has drilled into an
entity:

    S0  disambiguation: several candidates match, the user must choose
    S1  dossier: one entity is active, structured profile answers
    S2  network explored: connections shown, history still unseen
    S3  history explored: chronology shown, network still unseen
    S4  deep text search: structured answers exhausted or the user
        asked for corroboration; retrieval pivots to raw text

The transition function is pure and total: any (state, input) pair not
covered by an explicit rule keeps the current state.  Each state owns
an instruction block that is injected into the synthesis call.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any

#: Verbatim closing line of every disambiguation answer.
DISAMBIGUATION_QUESTION = "Which of these entities would you like to investigate further?"

#: Follow-up directions a dossier answer must offer.
DOSSIER_DIRECTIONS = "network exploration or event history"


class DialogueState(Enum):
    S0 = "S0"
    S1 = "S1"
    S2 = "S2"
    S3 = "S3"
    S4 = "S4"


@dataclass(frozen=True)
class SsmInput:
    """Signals gathered over one turn, evaluated before synthesis.

    Attributes:
        candidates: Number of rows in the turn's last entity search.
        selected: An entity is unambiguously active (picked by the user,
            pinned by the interface, or the single search hit).
        escalate: The user asked for corroboration against raw text.
        has_network: The session has shown the entity's network.
        has_history: The session has shown the entity's chronology.
    """

    candidates: int = 0
    selected: bool = False
    escalate: bool = False
    has_network: bool = False
    has_history: bool = False


def transition(state: DialogueState, signal: SsmInput) -> DialogueState:
    """Next dialogue state; deterministic and total over all inputs."""
    if signal.escalate:
        return DialogueState.S4
    if signal.candidates > 1 and not signal.selected:
        return DialogueState.S0
    entity_known = (
        signal.selected or signal.candidates == 1 or state is not DialogueState.S0
    )
    if not entity_known:
        return state
    if signal.has_network and signal.has_history:
        return DialogueState.S4
    if signal.has_network:
        return DialogueState.S2
    if signal.has_history:
        return DialogueState.S3
    if signal.selected or signal.candidates == 1:
        return DialogueState.S1
    return state


def render_candidate_table(candidates: list[dict[str, Any]]) -> str:
    """Markdown table of entity candidates for disambiguation answers."""
    lines = [
        "| # | Name | Type | Location | Id |",
        "| --- | --- | --- | --- | --- |",
    ]
    for index, row in enumerate(candidates, start=1):
        lines.append(
            "| {} | {} | {} | {} | {} |".format(
                index,
                row.get("name", ""),
                row.get("label", ""),
                row.get("location") or "",
                row.get("uid", ""),
            )
        )
    return "\n".join(lines)


def instruction_for(
    state: DialogueState, candidates: list[dict[str, Any]] | None = None
) -> str:
    """Synthesis instruction block for the state reached this turn."""
    if state is DialogueState.S0:
        table = render_candidate_table(candidates or [])
        return (
            "Several entities match. Present every candidate in this table, "
            "unchanged and complete:\n"
            f"{table}\n"
            f'Close your answer with exactly this question: "{DISAMBIGUATION_QUESTION}"'
        )
    if state is DialogueState.S1:
        return (
            "Exactly one entity is active. Compose its dossier from the "
            "evidence: profile, involved parties, and chronological events. "
            f"Offer the user the choice of {DOSSIER_DIRECTIONS} as next steps."
        )
    if state is DialogueState.S2:
        return (
            "The entity's network has been explored. Summarize the "
            "connections from the evidence and direct the user toward the "
            "event history as the unexplored dimension."
        )
    if state is DialogueState.S3:
        return (
            "The entity's event history has been explored. Summarize the "
            "chronology from the evidence and suggest network exploration "
            "as the unexplored dimension."
        )
    return (
        "Structured navigation is exhausted or corroboration was requested. "
        "Ground every statement in the raw publication excerpts in the "
        "evidence and cite the matching snippets verbatim where they "
        "support the answer."
    )
