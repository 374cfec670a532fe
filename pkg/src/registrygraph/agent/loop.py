"""The agentic reflection loop: up to four tool steps per turn.

Each iteration sends the running transcript to the model with the
intent's tool subset attached.  A tool call is executed against the
toolbox and its outcome appended as a tool message: successful payloads
become evidence, failures become a deterministic recovery hint from the
feedback catalogue.  A plain-text reply means the model judged the
evidence sufficient, which ends the loop early.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from typing import Any, Callable

from registrygraph.llm.gateway import LlmConfig, LlmGateway, ToolCall
from registrygraph.tools import ToolResult, ToolStatus, Toolbox, tool_specs

logger = logging.getLogger(__name__)

#: Hard ceiling on tool executions per turn.
MAX_TOOL_STEPS = 4

FEEDBACK_CATALOGUE_VERSION = 1

#: Recovery hints injected when a tool comes back empty.
_EMPTY_FEEDBACK: dict[str, str] = {
    "search_companies": (
        "search_companies returned no candidates. Recovery: retry with the "
        "most distinctive name token only, or pivot to global_text_search."
    ),
    "explore_network": (
        "explore_network found no connected entities; the node is isolated. "
        "Recovery: inspect its event history or search for related names."
    ),
    "get_node_history": (
        "get_node_history found no events for this node. Recovery: confirm "
        "the uid via search_companies or explore its network instead."
    ),
    "global_text_search": (
        "global_text_search matched no publication text. Recovery: retry "
        "with fewer, more distinctive keywords."
    ),
    "get_top_entities": (
        "get_top_entities produced an empty ranking. Recovery: drop the "
        "filters or try another metric."
    ),
    "count_entities_by_event": (
        "count_entities_by_event found nothing to count. Recovery: check "
        "the rubric code spelling."
    ),
    "execute_custom_query": (
        "execute_custom_query returned no rows. Recovery: relax the WHERE "
        "conditions or verify the property names."
    ),
}

#: Recovery hints injected when a tool reports an error, by error code prefix.
_ERROR_FEEDBACK: dict[str, str] = {
    "NotFound": "Recovery: resolve the entity via search_companies first; uids must come from earlier results.",
    "EmptyQuery": "Recovery: provide at least one alphanumeric search token.",
    "MutationBlocked": "Recovery: the query dialect is read-only; rephrase without mutating keywords.",
    "QuerySyntax": "Recovery: follow the dialect MATCH label [WHERE p='v'] RETURN count/sum/max or properties.",
    "InvalidArgument": "Recovery: re-check the tool's required arguments against its schema.",
    "BadMetric": "Recovery: choose one of nominal-capital, event-count, risk-rank.",
    "UnknownTool": "Recovery: only the listed tools exist; pick one of them.",
}


def feedback_message(result: ToolResult) -> str:
    """Deterministic recovery hint for a non-successful tool outcome."""
    if result.status is ToolStatus.EMPTY:
        return _EMPTY_FEEDBACK.get(
            result.tool_name,
            f"{result.tool_name} returned no rows. Recovery: adjust the arguments.",
        )
    code = str(result.payload.get("error", "")).split(":", 1)[0]
    hint = _ERROR_FEEDBACK.get(code, "Recovery: adjust the arguments and retry.")
    return f"{result.tool_name} failed ({result.payload.get('error')}): {result.summary}. {hint}"


@dataclass
class LoopOutcome:
    """Everything the turn handler needs from a finished loop."""

    steps: list[ToolResult] = field(default_factory=list)
    arguments: list[dict[str, Any]] = field(default_factory=list)
    evidence: list[dict[str, Any]] = field(default_factory=list)
    model_calls: int = 0
    candidates: list[dict[str, Any]] = field(default_factory=list)
    selected_uid: str | None = None
    sufficiency_note: str | None = None


def run_reflection_loop(
    base_messages: list[dict[str, Any]],
    tool_names: tuple[str, ...],
    toolbox: Toolbox,
    gateway: LlmGateway,
    config: LlmConfig | None = None,
    on_step: Callable[[ToolCall, ToolResult], None] | None = None,
) -> LoopOutcome:
    """Run up to MAX_TOOL_STEPS retrieval steps.

    The transcript in ``base_messages`` is extended in place with the
    assistant tool calls and tool results, so the synthesis call that
    follows sees the full exchange.
    """
    outcome = LoopOutcome()
    specs = tool_specs(list(tool_names))
    while len(outcome.steps) < MAX_TOOL_STEPS:
        outcome.model_calls += 1
        reply = gateway.chat(base_messages, tools=specs, config=config)
        if reply.tool_call is None:
            outcome.sufficiency_note = reply.text or ""
            break
        call = reply.tool_call
        result = toolbox.run(call.name, call.arguments)
        outcome.steps.append(result)
        outcome.arguments.append(dict(call.arguments))
        _record(outcome, call, result)
        call_id = call.call_id or f"step-{len(outcome.steps)}"
        base_messages.append(
            {
                "role": "assistant",
                "content": None,
                "tool_calls": [
                    {
                        "id": call_id,
                        "type": "function",
                        "function": {
                            "name": call.name,
                            "arguments": json.dumps(call.arguments, sort_keys=True),
                        },
                    }
                ],
            }
        )
        if result.status is ToolStatus.SUCCESS:
            content = json.dumps(
                {"summary": result.summary, "rows": result.rows},
                sort_keys=True,
                ensure_ascii=False,
                default=str,
            )
        else:
            content = feedback_message(result)
        base_messages.append(
            {"role": "tool", "tool_call_id": call_id, "name": call.name, "content": content}
        )
        if on_step is not None:
            on_step(call, result)
    return outcome


def _record(outcome: LoopOutcome, call: ToolCall, result: ToolResult) -> None:
    if result.status is not ToolStatus.SUCCESS:
        return
    outcome.evidence.append(
        {"tool": call.name, "summary": result.summary, "rows": result.rows}
    )
    if call.name == "search_companies":
        outcome.candidates = list(result.rows)
        if len(result.rows) == 1:
            outcome.selected_uid = result.rows[0].get("uid")
    elif call.name in ("explore_network", "get_node_history"):
        uid = call.arguments.get("uid")
        if uid:
            outcome.selected_uid = str(uid)
