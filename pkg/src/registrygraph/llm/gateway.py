"""Chat-completions gateway.

Every model interaction in the system goes through the ``LlmGateway``
protocol: a list of role/content messages plus an optional tool
catalogue in, a text reply or a single tool call out.  Decoding
defaults are pinned for reproducibility (temperature 0.0, top_p 1.0,
zero penalties).  If a provider returns several tool calls in one turn,
only the first is honored and the rest are logged and dropped.
"""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, field
from typing import Any, Protocol

import httpx

logger = logging.getLogger(__name__)

#: Environment variable holding the bearer token for remote providers.
TOKEN_ENV_VAR = "REGISTRYGRAPH_LLM_TOKEN"

#: Every judge prompt must end with this sentence; the parser depends on it.
JUDGE_SUFFIX = "Output ONLY a float number."


class GatewayError(Exception):
    """Base class for model-call failures."""


class Unavailable(GatewayError):
    """Transport-level failure talking to the provider."""


class TimedOut(GatewayError):
    """The provider did not answer within the configured timeout."""


class InvalidStructured(GatewayError):
    """A structured-output reply did not parse as a single JSON document."""


class JudgeUnparseable(GatewayError):
    """A judge reply could not be read as a float, even after a retry."""


@dataclass(frozen=True)
class LlmConfig:
    """Decoding and transport settings for one call."""

    model: str = "default"
    temperature: float = 0.0
    top_p: float = 1.0
    frequency_penalty: float = 0.0
    presence_penalty: float = 0.0
    structured_output: bool = False
    timeout: float = 30.0


@dataclass(frozen=True)
class ToolSpec:
    """Machine-readable description of one callable tool."""

    name: str
    description: str
    parameters: dict[str, Any] = field(default_factory=dict, hash=False)

    def to_wire(self) -> dict[str, Any]:
        return {
            "type": "function",
            "function": {
                "name": self.name,
                "description": self.description,
                "parameters": self.parameters,
            },
        }


@dataclass
class ToolCall:
    """A tool invocation requested by the model."""

    name: str
    arguments: dict[str, Any]
    call_id: str = ""


@dataclass
class ChatReply:
    """Either assistant text or one honored tool call."""

    text: str | None = None
    tool_call: ToolCall | None = None


class LlmGateway(Protocol):
    def chat(
        self,
        messages: list[dict[str, Any]],
        tools: list[ToolSpec] | None = None,
        config: LlmConfig | None = None,
    ) -> ChatReply: ...


class HttpGateway:
    """Client for any chat-completions compatible endpoint."""

    def __init__(
        self,
        base_url: str,
        token: str | None = None,
        client: httpx.Client | None = None,
    ):
        self._base_url = base_url.rstrip("/")
        self._token = token if token is not None else os.environ.get(TOKEN_ENV_VAR)
        self._client = client or httpx.Client()

    def chat(
        self,
        messages: list[dict[str, Any]],
        tools: list[ToolSpec] | None = None,
        config: LlmConfig | None = None,
    ) -> ChatReply:
        config = config or LlmConfig()
        payload: dict[str, Any] = {
            "model": config.model,
            "messages": messages,
            "temperature": config.temperature,
            "top_p": config.top_p,
            "frequency_penalty": config.frequency_penalty,
            "presence_penalty": config.presence_penalty,
        }
        if tools:
            payload["tools"] = [spec.to_wire() for spec in tools]
            payload["tool_choice"] = "auto"
        if config.structured_output:
            payload["response_format"] = {"type": "json_object"}
        headers = {}
        if self._token:
            headers["Authorization"] = f"Bearer {self._token}"
        try:
            response = self._client.post(
                f"{self._base_url}/chat/completions",
                json=payload,
                headers=headers,
                timeout=config.timeout,
            )
            response.raise_for_status()
        except httpx.TimeoutException as exc:
            raise TimedOut(str(exc)) from exc
        except httpx.HTTPError as exc:
            raise Unavailable(str(exc)) from exc
        return parse_completion(response.json(), structured=config.structured_output)


def parse_completion(document: dict[str, Any], structured: bool = False) -> ChatReply:
    """Decode one chat-completions response body.

    Raises:
        Unavailable: If the body does not carry a message.
        InvalidStructured: If structured output was demanded and the
            text is not a single JSON document.
    """
    try:
        message = document["choices"][0]["message"]
    except (KeyError, IndexError, TypeError) as exc:
        raise Unavailable(f"malformed completion body: {exc}") from None
    raw_calls = message.get("tool_calls") or []
    if raw_calls:
        if len(raw_calls) > 1:
            logger.warning("model returned %d tool calls; honoring the first", len(raw_calls))
        call = raw_calls[0]
        function = call.get("function", {})
        raw_args = function.get("arguments", "{}")
        try:
            arguments = json.loads(raw_args) if isinstance(raw_args, str) else dict(raw_args)
        except (json.JSONDecodeError, TypeError) as exc:
            raise InvalidStructured(f"tool arguments not valid JSON: {exc}") from None
        return ChatReply(
            tool_call=ToolCall(
                name=function.get("name", ""),
                arguments=arguments,
                call_id=call.get("id", ""),
            )
        )
    text = message.get("content")
    if text is None:
        raise Unavailable("completion carried neither content nor tool calls")
    if structured:
        try:
            json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidStructured(f"structured reply is not JSON: {exc.msg}") from None
    return ChatReply(text=text)


def judge_score(
    gateway: LlmGateway, prompt: str, config: LlmConfig | None = None
) -> float:
    """Ask the model for a float score in [0, 1].

    The prompt must end with the fixed suffix demanding a bare float.
    An unparseable reply gets one retry; a second failure raises.
    Out-of-range floats are clamped with a warning.

    Raises:
        ValueError: If the prompt lacks the required suffix.
        JudgeUnparseable: If two replies in a row fail to parse.
    """
    if not prompt.rstrip().endswith(JUDGE_SUFFIX):
        raise ValueError(f"judge prompt must end with {JUDGE_SUFFIX!r}")
    config = config or LlmConfig()
    messages = [{"role": "user", "content": prompt}]
    last_reply = ""
    for _attempt in range(2):
        reply = gateway.chat(messages, config=config)
        last_reply = reply.text or ""
        try:
            value = float(last_reply.strip())
        except ValueError:
            logger.warning("judge reply %r is not a float; retrying", last_reply)
            continue
        if value < 0.0 or value > 1.0:
            clamped = min(1.0, max(0.0, value))
            logger.warning("judge score %s outside [0, 1]; clamped to %s", value, clamped)
            return clamped
        return value
    raise JudgeUnparseable(f"judge reply not a float after retry: {last_reply!r}")
