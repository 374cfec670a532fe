"""One conversational turn, end to end.

A turn makes between 2 and 6 model calls:

    1        intent routing
    0 to 4   reflection-loop steps (0 when the router judged the
             conversation history sufficient)
    1        answer synthesis under the dialogue-state instruction

The dialogue state is evaluated after retrieval and before synthesis,
and two deterministic format guards run after synthesis so the
disambiguation and dossier contracts hold even when the model drifts.
"""

from __future__ import annotations

import hashlib
import json
import time
import uuid
from dataclasses import dataclass, field
from typing import Any, Callable

from registrygraph.agent.intent import TOOL_SUBSETS, detect_escalation, route_intent
from registrygraph.agent.loop import MAX_TOOL_STEPS, LoopOutcome, run_reflection_loop
from registrygraph.agent.ssm import (
    DISAMBIGUATION_QUESTION,
    DOSSIER_DIRECTIONS,
    DialogueState,
    SsmInput,
    instruction_for,
    render_candidate_table,
    transition,
)
from registrygraph.llm.gateway import GatewayError, LlmConfig, LlmGateway
from registrygraph.prompts import load_asset
from registrygraph.tools import ToolStatus, Toolbox

#: Injected into the loop transcript when the turn runs in deep-text mode.
TEXT_SEARCH_DIRECTIVE = (
    "Corroboration mode: answer from raw publication text. Call "
    "global_text_search before relying on any structured result."
)


class TurnError(RuntimeError):
    """A model call failed while handling the turn."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"turn failed during {stage}: {cause}")
        self.stage = stage
        self.cause = cause


@dataclass
class SessionContext:
    """Conversation state carried across turns of one session."""

    session_id: str = field(default_factory=lambda: uuid.uuid4().hex[:12])
    state: DialogueState = DialogueState.S0
    current_uid: str | None = None
    candidates: list[dict[str, Any]] = field(default_factory=list)
    has_network: bool = False
    has_history: bool = False
    history: list[dict[str, Any]] = field(default_factory=list)
    turn_count: int = 0

    def pin_entity(self, uid: str | None) -> None:
        """Activate an entity; switching entities resets the coverage flags."""
        if uid != self.current_uid:
            self.has_network = False
            self.has_history = False
        self.current_uid = uid

    def to_dict(self) -> dict[str, Any]:
        return {
            "session_id": self.session_id,
            "state": self.state.value,
            "current_uid": self.current_uid,
            "candidates": list(self.candidates),
            "has_network": self.has_network,
            "has_history": self.has_history,
            "history": list(self.history),
            "turn_count": self.turn_count,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "SessionContext":
        return cls(
            session_id=data["session_id"],
            state=DialogueState(data.get("state", DialogueState.S0.value)),
            current_uid=data.get("current_uid"),
            candidates=list(data.get("candidates", [])),
            has_network=bool(data.get("has_network", False)),
            has_history=bool(data.get("has_history", False)),
            history=list(data.get("history", [])),
            turn_count=int(data.get("turn_count", 0)),
        )


@dataclass
class TurnStep:
    """One executed tool call inside a turn."""

    tool: str
    arguments: dict[str, Any]
    status: str
    summary: str = ""
    row_count: int = 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "tool": self.tool,
            "arguments": self.arguments,
            "status": self.status,
            "summary": self.summary,
            "row_count": self.row_count,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "TurnStep":
        return cls(
            tool=data["tool"],
            arguments=dict(data.get("arguments", {})),
            status=data["status"],
            summary=data.get("summary", ""),
            row_count=int(data.get("row_count", 0)),
        )


@dataclass
class TraceEvent:
    """Streamable progress marker emitted while the turn runs."""

    kind: str
    detail: str
    args_digest: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "detail": self.detail, "args_digest": self.args_digest}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "TraceEvent":
        return cls(data["kind"], data["detail"], data.get("args_digest", ""))


def _digest(arguments: dict[str, Any]) -> str:
    blob = json.dumps(arguments, sort_keys=True, ensure_ascii=False, default=str)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:12]


@dataclass
class Trajectory:
    """Full audit record of one turn, JSON-serializable."""

    turn_id: str
    query: str
    intent: str
    direct: bool
    escalated: bool
    states: list[str]
    steps: list[TurnStep]
    model_calls: int
    latency_s: float
    answer: str
    events: list[TraceEvent] = field(default_factory=list)
    expected_tools: list[str] = field(default_factory=list)
    tags: list[str] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "turn_id": self.turn_id,
            "query": self.query,
            "intent": self.intent,
            "direct": self.direct,
            "escalated": self.escalated,
            "states": list(self.states),
            "steps": [step.to_dict() for step in self.steps],
            "model_calls": self.model_calls,
            "latency_s": self.latency_s,
            "answer": self.answer,
            "events": [event.to_dict() for event in self.events],
            "expected_tools": list(self.expected_tools),
            "tags": list(self.tags),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Trajectory":
        return cls(
            turn_id=data["turn_id"],
            query=data["query"],
            intent=data.get("intent", ""),
            direct=bool(data.get("direct", False)),
            escalated=bool(data.get("escalated", False)),
            states=list(data.get("states", [])),
            steps=[TurnStep.from_dict(item) for item in data.get("steps", [])],
            model_calls=int(data.get("model_calls", 0)),
            latency_s=float(data.get("latency_s", 0.0)),
            answer=data.get("answer", ""),
            events=[TraceEvent.from_dict(item) for item in data.get("events", [])],
            expected_tools=list(data.get("expected_tools", [])),
            tags=list(data.get("tags", [])),
        )


@dataclass
class TurnOutcome:
    """What the caller gets back: the answer plus the audit trail."""

    answer: str
    state: DialogueState
    active_uid: str | None
    trajectory: Trajectory


def handle_turn(
    query: str,
    session: SessionContext,
    toolbox: Toolbox,
    gateway: LlmGateway,
    config: LlmConfig | None = None,
    current_uid: str | None = None,
    on_event: Callable[[TraceEvent], None] | None = None,
) -> TurnOutcome:
    """Route, retrieve, transition, synthesize, and guard one turn.

    ``on_event`` fires for every trace event the moment it happens, so a
    caller can relay progress while the turn is still running.
    """
    started = time.perf_counter()
    start_state = session.state
    if current_uid is not None:
        session.pin_entity(current_uid)
    escalate = detect_escalation(query)
    events: list[TraceEvent] = []

    def emit(event: TraceEvent) -> None:
        events.append(event)
        if on_event is not None:
            on_event(event)

    try:
        intent, direct, fallback = route_intent(query, gateway, session.history, config)
    except GatewayError as exc:
        raise TurnError("routing", exc) from exc
    detail = intent.value + ("|direct" if direct else "")
    if fallback:
        detail += "|fallback"
    emit(TraceEvent("route", detail))

    messages: list[dict[str, Any]] = [
        {"role": "system", "content": load_asset("loop_prompt.txt")}
    ]
    messages.extend(session.history)
    if session.current_uid:
        messages.append(
            {"role": "system", "content": f"Active entity uid: {session.current_uid}"}
        )
    messages.append({"role": "user", "content": query})
    if escalate or start_state is DialogueState.S4:
        messages.append({"role": "system", "content": TEXT_SEARCH_DIRECTIVE})

    if direct:
        outcome = LoopOutcome()
    else:
        def on_step(call, result):
            emit(
                TraceEvent("tool", f"{call.name}:{result.status.value}", _digest(call.arguments))
            )

        try:
            outcome = run_reflection_loop(
                messages, TOOL_SUBSETS[intent], toolbox, gateway, config, on_step
            )
        except GatewayError as exc:
            raise TurnError("retrieval", exc) from exc

    active = outcome.selected_uid or session.current_uid
    if active != session.current_uid:
        session.pin_entity(active)
    _apply_coverage(session, outcome, active)

    signal = SsmInput(
        candidates=len(outcome.candidates),
        selected=active is not None,
        escalate=escalate,
        has_network=session.has_network,
        has_history=session.has_history,
    )
    new_state = transition(session.state, signal)
    emit(TraceEvent("state", f"{start_state.value}->{new_state.value}"))

    instruction = instruction_for(new_state, outcome.candidates)
    synth_messages = [
        {"role": "system", "content": load_asset("synthesis_prompt.txt")}
    ]
    synth_messages.extend(messages[1:])
    synth_messages.append({"role": "system", "content": instruction})
    try:
        reply = gateway.chat(synth_messages, config=config)
    except GatewayError as exc:
        raise TurnError("synthesis", exc) from exc
    answer = reply.text or ""
    answer = _apply_format_guards(answer, new_state, outcome.candidates)
    emit(TraceEvent("synthesis", f"{len(answer)} chars"))

    model_calls = 1 + outcome.model_calls + 1
    session.state = new_state
    session.candidates = list(outcome.candidates)
    session.turn_count += 1
    session.history.append({"role": "user", "content": query})
    session.history.append({"role": "assistant", "content": answer})

    trajectory = Trajectory(
        turn_id=f"{session.session_id}:{session.turn_count}",
        query=query,
        intent=intent.value,
        direct=direct,
        escalated=escalate,
        states=[start_state.value, new_state.value],
        steps=[
            TurnStep(
                tool=result.tool_name,
                arguments=arguments,
                status=result.status.value,
                summary=result.summary,
                row_count=len(result.rows),
            )
            for result, arguments in zip(outcome.steps, outcome.arguments)
        ],
        model_calls=model_calls,
        latency_s=time.perf_counter() - started,
        answer=answer,
        events=events,
    )
    return TurnOutcome(answer, new_state, session.current_uid, trajectory)


def _apply_coverage(
    session: SessionContext, outcome: LoopOutcome, active: str | None
) -> None:
    """Mark the active entity's explored dimensions from this turn's steps."""
    if active is None:
        return
    for result, arguments in zip(outcome.steps, outcome.arguments):
        if result.status is not ToolStatus.SUCCESS:
            continue
        if str(arguments.get("uid")) != active:
            continue
        if result.tool_name == "explore_network":
            session.has_network = True
        elif result.tool_name == "get_node_history":
            session.has_history = True


def _apply_format_guards(
    answer: str, state: DialogueState, candidates: list[dict[str, Any]]
) -> str:
    """Deterministic repairs for the state-bound answer contracts.

    S0 answers must show the full candidate table and end with the
    verbatim disambiguation question; S1 answers must offer both
    follow-up directions.
    """
    if state is DialogueState.S0:
        table = render_candidate_table(candidates)
        if table not in answer:
            answer = answer.rstrip() + "\n\n" + table
        if not answer.rstrip().endswith(DISAMBIGUATION_QUESTION):
            answer = answer.rstrip() + "\n\n" + DISAMBIGUATION_QUESTION
        return answer
    if state is DialogueState.S1:
        lowered = answer.lower()
        if "network" in lowered and ("history" in lowered or "chronolog" in lowered):
            return answer
        return answer.rstrip() + f"\n\nNext I can continue with {DOSSIER_DIRECTIONS}."
    return answer
