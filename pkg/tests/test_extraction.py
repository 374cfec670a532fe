"""Extraction batching, retry-by-halving, and post-hoc validation."""

from __future__ import annotations

import json

from registrygraph.ingest import extract_batch, load_stoplist, materialize_weak_nodes
from registrygraph.ingest.extraction import TRUNCATION_LIMIT, max_recursion_depth
from registrygraph.graph import EdgeKind, NodeLabel, PropertyGraph, Strength
from registrygraph.llm import CallableGateway, LlmConfig, ScriptedGateway
from tests.conftest import event

STRUCTURED = LlmConfig(structured_output=True)


def _entities_reply(mapping) -> dict:
    return {"text": json.dumps(mapping)}


def test_single_batch_happy_path():
    script = ScriptedGateway(
        [
            {
                "reply": _entities_reply(
                    {
                        "0": [{"kind": "Person", "name": "Hans Weber", "role": "Liquidator"}],
                        "1": [],
                    }
                )
            }
        ]
    )
    results, stats = extract_batch(
        [("evt:a", "text a"), ("evt:b", "text b")], script, config=STRUCTURED
    )
    assert [e.name for e in results["evt:a"]] == ["Hans Weber"]
    assert results["evt:a"][0].kind == "person"
    assert results["evt:b"] == []
    assert stats.calls_made == 1
    assert stats.events_failed == []


def test_batch_aliases_are_small_ints_and_texts_truncated():
    seen = {}

    def fn(messages, tools, config):
        payload = json.loads(messages[-1]["content"])
        seen.update(payload)
        return _entities_reply({k: [] for k in payload})

    long_text = "x" * (TRUNCATION_LIMIT + 500)
    extract_batch(
        [("evt:a", long_text), ("evt:b", "short")], CallableGateway(fn), config=STRUCTURED
    )
    assert sorted(seen) == ["0", "1"]
    assert len(seen["0"]) == TRUNCATION_LIMIT


def test_failed_batch_splits_in_half():
    calls = []

    def fn(messages, tools, config):
        payload = json.loads(messages[-1]["content"])
        calls.append(len(payload))
        if len(payload) > 1:
            return {"error": "invalid"}
        return _entities_reply({"0": []})

    events = [(f"evt:{i}", f"text {i}") for i in range(4)]
    results, stats = extract_batch(events, CallableGateway(fn), config=STRUCTURED)
    assert calls == [4, 2, 1, 1, 2, 1, 1]
    assert set(results) == {u for u, _ in events}
    assert stats.events_failed == []
    assert stats.max_depth == 2


def test_size_one_batch_gets_two_retries_then_fails():
    calls = []

    def fn(messages, tools, config):
        calls.append(1)
        return {"error": "timeout"}

    results, stats = extract_batch([("evt:a", "text")], CallableGateway(fn), config=STRUCTURED)
    assert len(calls) == 3  # initial attempt + 2 retries
    assert stats.events_failed == ["evt:a"]
    assert "evt:a" not in results


def test_recursion_depth_bound():
    def always_fail(messages, tools, config):
        return {"error": "invalid"}

    for n in (1, 2, 3, 5, 8, 13):
        events = [(f"evt:{i}", "t") for i in range(n)]
        _, stats = extract_batch(events, CallableGateway(always_fail), config=STRUCTURED)
        assert stats.max_depth <= max_recursion_depth(n)
        assert len(stats.events_failed) == n


def test_stoplist_and_compound_names_rejected():
    reply = _entities_reply(
        {
            "0": [
                {"kind": "Company", "name": "SHAB", "role": "Publisher"},
                {"kind": "Person", "name": "Hans Weber und Anna Keller", "role": "Liquidator"},
                {"kind": "Person", "name": "Anna Keller", "role": "Liquidator"},
                {"kind": "Company", "name": "Konkursamt", "role": "Authority"},
                {"kind": "Company", "name": "Konkursamt Zug", "role": "Authority"},
            ]
        }
    )
    results, stats = extract_batch(
        [("evt:a", "text")], ScriptedGateway([{"reply": reply}]), config=STRUCTURED
    )
    names = [e.name for e in results["evt:a"]]
    assert names == ["Anna Keller", "Konkursamt Zug"]
    assert stats.entities_rejected == 3


def test_default_stoplist_contains_the_gazette_artifact():
    assert "shab" in load_stoplist()


def test_materialize_creates_weak_nodes_and_hub_links():
    g = PropertyGraph()
    g.put_node(event("evt:a", "KK03", "2021-02-20", "Liquidator: Hans Weber."))
    script = ScriptedGateway(
        [
            {
                "reply": _entities_reply(
                    {"0": [{"kind": "Person", "name": "Hans Weber", "role": "Liquidator"}]}
                )
            }
        ]
    )
    results, _ = extract_batch([("evt:a", "Liquidator: Hans Weber.")], script, config=STRUCTURED)
    stats = materialize_weak_nodes(results, g)
    assert stats.weak_nodes_created == 1
    weak = g.get_node("wk:pe:hans-weber")
    assert weak.strength is Strength.WEAK
    (acted,) = g.neighbors("wk:pe:hans-weber", kinds=[EdgeKind.ACTED_IN], direction="out")
    assert acted[1].uid == "evt:a"
    (named,) = g.neighbors("wk:pe:hans-weber", kinds=[EdgeKind.HAS_NAME], direction="out")
    assert named[1].uid == "hub:hansweber"


def test_materialize_twice_is_idempotent():
    g = PropertyGraph()
    g.put_node(event("evt:a", "KK03", "2021-02-20", "text"))
    extractions = {
        "evt:a": [
            __import__("registrygraph.ingest", fromlist=["ExtractionEntity"]).ExtractionEntity(
                kind="person", name="Hans Weber", role="Liquidator"
            )
        ]
    }
    materialize_weak_nodes(extractions, g)
    nodes, edges = g.node_count(), g.edge_count()
    stats = materialize_weak_nodes(extractions, g)
    assert (g.node_count(), g.edge_count()) == (nodes, edges)
    assert stats.weak_nodes_created == 0


def test_extracted_company_defaults_to_related_to():
    g = PropertyGraph()
    g.put_node(event("evt:a", "KK03", "2021-02-20", "text"))
    from registrygraph.ingest import ExtractionEntity

    materialize_weak_nodes(
        {"evt:a": [ExtractionEntity(kind="company", name="Acme AG", role="Mentioned")]}, g
    )
    (edge, _) = g.neighbors("wk:co:acme-ag", kinds=[EdgeKind.RELATED_TO], direction="out")[0]
    assert edge.role == "Mentioned"
