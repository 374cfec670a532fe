"""Language-model access: HTTP client, scripted test doubles, judging."""

from registrygraph.llm.gateway import (
    ChatReply,
    GatewayError,
    HttpGateway,
    InvalidStructured,
    JudgeUnparseable,
    LlmConfig,
    LlmGateway,
    TimedOut,
    ToolCall,
    ToolSpec,
    Unavailable,
    judge_score,
)
from registrygraph.llm.mock import (
    CallableGateway,
    CountingGateway,
    ScriptedGateway,
    ScriptExhausted,
    ScriptMismatch,
    load_script,
)

__all__ = [
    "CallableGateway",
    "ChatReply",
    "CountingGateway",
    "GatewayError",
    "HttpGateway",
    "InvalidStructured",
    "JudgeUnparseable",
    "LlmConfig",
    "LlmGateway",
    "ScriptExhausted",
    "ScriptMismatch",
    "ScriptedGateway",
    "TimedOut",
    "ToolCall",
    "ToolSpec",
    "Unavailable",
    "judge_score",
    "load_script",
]
