"""Zero-shot intent routing and per-intent tool subsets.

One cheap model call classifies the user query into one of five
intents; the intent then gates which tools the reflection loop may
call.  A reply the parser cannot read falls back to the full tool
catalogue with a warning, so a flaky router can never strand a turn.

The router may append ``|direct`` to its token when the conversation
history already answers the question; the loop is then skipped
entirely and the turn costs only the router and synthesis calls.
"""

from __future__ import annotations

import logging
import re
from enum import Enum

from registrygraph.llm.gateway import LlmConfig, LlmGateway
from registrygraph.prompts import load_asset

logger = logging.getLogger(__name__)


class Intent(Enum):
    SEARCH_COMPANIES = "search_companies"
    EXPLORE_NETWORK = "explore_network"
    GET_NODE_HISTORY = "get_node_history"
    ANALYTICS = "analytics"
    ALL_TOOLS = "all_tools"


#: Tools the loop may call under each routed intent.
TOOL_SUBSETS: dict[Intent, tuple[str, ...]] = {
    Intent.SEARCH_COMPANIES: (
        "search_companies",
        "explore_network",
        "get_node_history",
        "global_text_search",
    ),
    Intent.EXPLORE_NETWORK: (
        "search_companies",
        "explore_network",
        "get_node_history",
        "global_text_search",
    ),
    Intent.GET_NODE_HISTORY: (
        "search_companies",
        "explore_network",
        "get_node_history",
        "global_text_search",
    ),
    Intent.ANALYTICS: (
        "get_top_entities",
        "count_entities_by_event",
        "execute_custom_query",
    ),
    Intent.ALL_TOOLS: (
        "search_companies",
        "explore_network",
        "get_node_history",
        "global_text_search",
        "get_top_entities",
        "count_entities_by_event",
        "execute_custom_query",
    ),
}

#: Phrases that signal the user wants corroboration against raw text;
#: they escalate the dialogue straight to deep text search.
ESCALATION_MARKERS = (
    "corroborate",
    "corroboration",
    "verify against",
    "raw text",
    "source text",
    "original text",
    "original publication",
    "exact wording",
)


def detect_escalation(query: str) -> bool:
    """Deterministic check for corroboration phrasing in the query."""
    lowered = query.lower()
    return any(marker in lowered for marker in ESCALATION_MARKERS)


def route_intent(
    query: str,
    gateway: LlmGateway,
    history: list[dict] | None = None,
    config: LlmConfig | None = None,
) -> tuple[Intent, bool, bool]:
    """Classify the query with one model call.

    Returns:
        (intent, direct, fallback): the routed intent, whether the
        router judged the history sufficient to answer without
        retrieval, and whether parsing fell back to the full catalogue.
    """
    messages = [{"role": "system", "content": load_asset("router_prompt.txt")}]
    for message in history or []:
        messages.append(message)
    messages.append({"role": "user", "content": query})
    reply = gateway.chat(messages, config=config)
    return parse_router_reply(reply.text or "")


def parse_router_reply(text: str) -> tuple[Intent, bool, bool]:
    cleaned = text.strip().lower()
    cleaned = re.sub(r"[^a-z_|]+", "", cleaned)
    token, _, suffix = cleaned.partition("|")
    direct = suffix == "direct"
    for intent in Intent:
        if token == intent.value:
            return intent, direct, False
    logger.warning("unparseable router reply %r; using the full catalogue", text)
    return Intent.ALL_TOOLS, False, True
