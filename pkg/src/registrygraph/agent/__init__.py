"""Tool-calling agent: intent router, reflection loop, dialogue states."""

from registrygraph.agent.intent import (
    ESCALATION_MARKERS,
    Intent,
    TOOL_SUBSETS,
    detect_escalation,
    route_intent,
)
from registrygraph.agent.loop import LoopOutcome, feedback_message, run_reflection_loop
from registrygraph.agent.ssm import (
    DISAMBIGUATION_QUESTION,
    DialogueState,
    SsmInput,
    instruction_for,
    transition,
)
from registrygraph.agent.turn import (
    MAX_TOOL_STEPS,
    SessionContext,
    TraceEvent,
    Trajectory,
    TurnError,
    TurnOutcome,
    TurnStep,
    handle_turn,
)

__all__ = [
    "DISAMBIGUATION_QUESTION",
    "DialogueState",
    "ESCALATION_MARKERS",
    "Intent",
    "LoopOutcome",
    "MAX_TOOL_STEPS",
    "SessionContext",
    "SsmInput",
    "TOOL_SUBSETS",
    "TraceEvent",
    "Trajectory",
    "TurnError",
    "TurnOutcome",
    "TurnStep",
    "detect_escalation",
    "feedback_message",
    "handle_turn",
    "instruction_for",
    "route_intent",
    "run_reflection_loop",
    "transition",
]
