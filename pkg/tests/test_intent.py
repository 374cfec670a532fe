"""Intent routing and escalation detection."""

import pytest

from registrygraph.agent.intent import (
    ESCALATION_MARKERS,
    Intent,
    TOOL_SUBSETS,
    detect_escalation,
    parse_router_reply,
    route_intent,
)
from registrygraph.llm.mock import CallableGateway, ScriptedGateway
from registrygraph.tools import TOOL_NAMES


class TestToolSubsets:
    def test_every_intent_has_a_subset(self):
        assert set(TOOL_SUBSETS) == set(Intent)

    def test_exploration_intents_share_the_four_tool_subset(self):
        expected = (
            "search_companies",
            "explore_network",
            "get_node_history",
            "global_text_search",
        )
        for intent in (
            Intent.SEARCH_COMPANIES,
            Intent.EXPLORE_NETWORK,
            Intent.GET_NODE_HISTORY,
        ):
            assert TOOL_SUBSETS[intent] == expected

    def test_analytics_subset(self):
        assert TOOL_SUBSETS[Intent.ANALYTICS] == (
            "get_top_entities",
            "count_entities_by_event",
            "execute_custom_query",
        )

    def test_all_tools_covers_the_whole_catalogue(self):
        assert set(TOOL_SUBSETS[Intent.ALL_TOOLS]) == set(TOOL_NAMES)
        assert len(TOOL_SUBSETS[Intent.ALL_TOOLS]) == 7

    def test_subsets_contain_only_real_tools(self):
        for subset in TOOL_SUBSETS.values():
            assert set(subset) <= set(TOOL_NAMES)


class TestParseRouterReply:
    @pytest.mark.parametrize(
        "text,intent",
        [
            ("search_companies", Intent.SEARCH_COMPANIES),
            ("explore_network", Intent.EXPLORE_NETWORK),
            ("get_node_history", Intent.GET_NODE_HISTORY),
            ("analytics", Intent.ANALYTICS),
            ("all_tools", Intent.ALL_TOOLS),
        ],
    )
    def test_plain_tokens(self, text, intent):
        assert parse_router_reply(text) == (intent, False, False)

    def test_direct_suffix(self):
        assert parse_router_reply("analytics|direct") == (Intent.ANALYTICS, True, False)

    def test_whitespace_and_case_tolerated(self):
        assert parse_router_reply("  Search_Companies \n") == (
            Intent.SEARCH_COMPANIES,
            False,
            False,
        )

    def test_markdown_noise_stripped(self):
        assert parse_router_reply("`get_node_history`") == (
            Intent.GET_NODE_HISTORY,
            False,
            False,
        )

    def test_garbage_falls_back_to_all_tools(self):
        intent, direct, fallback = parse_router_reply("I think you want a search.")
        assert intent is Intent.ALL_TOOLS
        assert not direct
        assert fallback

    def test_empty_reply_falls_back(self):
        assert parse_router_reply("") == (Intent.ALL_TOOLS, False, True)

    def test_unknown_direct_suffix_is_not_direct(self):
        intent, direct, fallback = parse_router_reply("analytics|later")
        assert intent is Intent.ANALYTICS
        assert not direct


class TestRouteIntent:
    def test_one_call_with_system_prompt_and_query_last(self):
        seen = {}

        def fn(messages, tools, config):
            seen["messages"] = messages
            seen["tools"] = tools
            return "analytics"

        gateway = CallableGateway(fn)
        intent, direct, fallback = route_intent("top ten by capital", gateway)
        assert intent is Intent.ANALYTICS
        assert seen["messages"][0]["role"] == "system"
        assert seen["messages"][-1] == {"role": "user", "content": "top ten by capital"}
        assert seen["tools"] is None

    def test_history_is_passed_between_prompt_and_query(self):
        seen = {}
        gateway = CallableGateway(lambda m, t, c: seen.setdefault("m", m) and "all_tools" or "all_tools")
        history = [
            {"role": "user", "content": "earlier question"},
            {"role": "assistant", "content": "earlier answer"},
        ]
        route_intent("and now?", gateway, history=history)
        assert seen["m"][1:3] == history

    def test_scripted_direct_route(self):
        gateway = ScriptedGateway(
            [{"match": {"role": "user"}, "reply": {"text": "get_node_history|direct"}}]
        )
        assert route_intent("more of the same", gateway) == (
            Intent.GET_NODE_HISTORY,
            True,
            False,
        )


class TestDetectEscalation:
    @pytest.mark.parametrize("marker", ESCALATION_MARKERS)
    def test_each_marker_triggers(self, marker):
        assert detect_escalation(f"please {marker} this claim")

    def test_case_insensitive(self):
        assert detect_escalation("Show me the RAW TEXT of that entry")

    def test_plain_questions_do_not_trigger(self):
        assert not detect_escalation("who owns acme ag in geneva?")
        assert not detect_escalation("show the last ten events")
