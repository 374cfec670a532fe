"""Deterministic gateway doubles for tests and offline runs.

``ScriptedGateway`` replays an ordered list of (matcher, reply) entries:
each chat call consumes the next entry, optionally checking that the
request looks like what the script author expected.  Replies can be
text, a tool call, several tool calls (to exercise the first-call-wins
rule), or a simulated failure.  Scripts live in versioned JSON fixture
files:

    {"version": 1, "entries": [
        {"match": {"contains": "intent"}, "reply": {"text": "search_companies"}},
        {"reply": {"tool_call": {"name": "search_companies",
                                  "arguments": {"query": "Acme"}}}},
        {"reply": {"error": "timeout"}}
    ]}

``CallableGateway`` wraps a plain function for programmatic doubles, and
``CountingGateway`` counts calls through any inner gateway.
"""

from __future__ import annotations

import json
import logging
import threading
from pathlib import Path
from typing import Any, Callable

from registrygraph.llm.gateway import (
    ChatReply,
    InvalidStructured,
    LlmConfig,
    TimedOut,
    ToolCall,
    ToolSpec,
    Unavailable,
)

logger = logging.getLogger(__name__)

SCRIPT_VERSION = 1


class ScriptExhausted(AssertionError):
    """A chat call arrived after the script ran out of entries."""


class ScriptMismatch(AssertionError):
    """A chat call did not satisfy the entry's matcher."""


def load_script(path: str | Path) -> list[dict[str, Any]]:
    """Read a script fixture file and return its entries.

    Raises:
        ValueError: On an unknown script version or a malformed file.
    """
    document = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(document, dict) or document.get("version") != SCRIPT_VERSION:
        raise ValueError(f"expected a version {SCRIPT_VERSION} script file")
    entries = document.get("entries")
    if not isinstance(entries, list):
        raise ValueError("script entries must be a list")
    return entries


def _last_message(messages: list[dict[str, Any]]) -> dict[str, Any]:
    return messages[-1] if messages else {}


def _check_match(matcher: dict[str, Any], messages, tools) -> str | None:
    if "contains" in matcher:
        needle = matcher["contains"]
        haystack = "\n".join(str(m.get("content", "")) for m in messages)
        if needle not in haystack:
            return f"no message contains {needle!r}"
    if "last_contains" in matcher:
        needle = matcher["last_contains"]
        if needle not in str(_last_message(messages).get("content", "")):
            return f"last message does not contain {needle!r}"
    if "role" in matcher and _last_message(messages).get("role") != matcher["role"]:
        return f"last role is not {matcher['role']!r}"
    if "has_tools" in matcher and bool(tools) != bool(matcher["has_tools"]):
        return f"has_tools != {matcher['has_tools']}"
    return None


def _build_reply(spec: dict[str, Any], structured: bool) -> ChatReply:
    if "error" in spec:
        kind = spec["error"]
        if kind == "timeout":
            raise TimedOut("scripted timeout")
        if kind == "unavailable":
            raise Unavailable("scripted outage")
        if kind == "invalid":
            raise InvalidStructured("scripted invalid structured reply")
        raise ValueError(f"unknown scripted error {kind!r}")
    calls = []
    if "tool_call" in spec:
        calls = [spec["tool_call"]]
    elif "tool_calls" in spec:
        calls = list(spec["tool_calls"])
    if calls:
        if len(calls) > 1:
            logger.warning("script returned %d tool calls; honoring the first", len(calls))
        first = calls[0]
        return ChatReply(
            tool_call=ToolCall(
                name=first["name"],
                arguments=dict(first.get("arguments", {})),
                call_id=first.get("id", ""),
            )
        )
    text = spec.get("text")
    if text is None:
        raise ValueError(f"scripted reply needs text, tool_call, or error: {spec!r}")
    if structured:
        try:
            json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidStructured(f"structured reply is not JSON: {exc.msg}") from None
    return ChatReply(text=text)


class ScriptedGateway:
    """Replays scripted replies in order; thread-safe."""

    def __init__(self, entries: list[dict[str, Any]], strict: bool = True):
        self._entries = list(entries)
        self._cursor = 0
        self._strict = strict
        self._lock = threading.Lock()

    @classmethod
    def from_file(cls, path: str | Path, strict: bool = True) -> "ScriptedGateway":
        return cls(load_script(path), strict=strict)

    @property
    def remaining(self) -> int:
        return len(self._entries) - self._cursor

    def chat(
        self,
        messages: list[dict[str, Any]],
        tools: list[ToolSpec] | None = None,
        config: LlmConfig | None = None,
    ) -> ChatReply:
        with self._lock:
            if self._cursor >= len(self._entries):
                raise ScriptExhausted(
                    f"script exhausted after {len(self._entries)} calls"
                )
            entry = self._entries[self._cursor]
            self._cursor += 1
        matcher = entry.get("match")
        if matcher:
            problem = _check_match(matcher, messages, tools)
            if problem is not None:
                if self._strict:
                    raise ScriptMismatch(f"entry {self._cursor - 1}: {problem}")
                logger.warning("script matcher miss at entry %d: %s", self._cursor - 1, problem)
        structured = bool(config and config.structured_output)
        return _build_reply(entry["reply"], structured)


class CallableGateway:
    """Adapts a plain function into a gateway for programmatic doubles.

    The function receives (messages, tools, config) and may return a
    ChatReply, a bare string, or a reply-spec dict in script syntax.
    """

    def __init__(self, fn: Callable[[list[dict[str, Any]], list[ToolSpec] | None, LlmConfig | None], Any]):
        self._fn = fn

    def chat(self, messages, tools=None, config=None) -> ChatReply:
        outcome = self._fn(messages, tools, config)
        if isinstance(outcome, ChatReply):
            return outcome
        if isinstance(outcome, str):
            return ChatReply(text=outcome)
        if isinstance(outcome, dict):
            structured = bool(config and config.structured_output)
            return _build_reply(outcome, structured)
        raise TypeError(f"callable gateway returned {type(outcome).__name__}")


class CountingGateway:
    """Delegates to an inner gateway while counting calls."""

    def __init__(self, inner):
        self._inner = inner
        self.calls = 0

    def chat(self, messages, tools=None, config=None) -> ChatReply:
        self.calls += 1
        return self._inner.chat(messages, tools=tools, config=config)
