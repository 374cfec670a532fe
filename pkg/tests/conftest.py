"""Shared fixtures: small hand-built graphs with known shape."""

from __future__ import annotations

import re
from pathlib import Path

import pytest

from registrygraph.graph import (
    EdgeKind,
    GraphEdge,
    GraphNode,
    NodeLabel,
    PropertyGraph,
    Strength,
)


def company(uid: str, name: str, strength: Strength = Strength.STRONG, **props) -> GraphNode:
    return GraphNode(uid=uid, label=NodeLabel.COMPANY, strength=strength, props={"name": name, **props})


def person(uid: str, name: str, strength: Strength = Strength.STRONG, **props) -> GraphNode:
    return GraphNode(uid=uid, label=NodeLabel.PERSON, strength=strength, props={"name": name, **props})


def event(uid: str, rubric: str, date: str, text: str = "", **props) -> GraphNode:
    return GraphNode(
        uid=uid,
        label=NodeLabel.EVENT,
        props={"rubric": rubric, "date": date, "full_text": text, **props},
    )


def hub(uid: str, key: str, name: str) -> GraphNode:
    return GraphNode(uid=uid, label=NodeLabel.NAME_HUB, props={"key": key, "name": name})


@pytest.fixture
def small_graph() -> PropertyGraph:
    """Two companies, one person, three events, one shared name hub.

    acme-ag ──HAS_EVENT──> evt1 (HR01, 2021-01-10, Geneva text)
    acme-ag ──HAS_EVENT──> evt2 (KK03, 2021-02-20, bankruptcy text)
    beta-sa ──ACQUIRED_FROM──> evt2
    hans    ──ACTED_IN──> evt2 (role Liquidator)
    beta-sa ──HAS_EVENT──> evt3 (HR01, 2020-12-01)
    acme-ag ──HAS_NAME──> hub-acme
    """
    g = PropertyGraph()
    g.put_node(company("acme-ag", "Acme AG", location="Geneva", nominal_capital=100000,
                       purpose="crypto asset management"))
    g.put_node(company("beta-sa", "Beta SA", location="Zurich", nominal_capital=250000,
                       purpose="watch manufacturing"))
    g.put_node(person("hans", "Hans Weber"))
    g.put_node(event("evt1", "HR01", "2021-01-10",
                     "Acme AG, Geneva, new entity registered in the commercial register."))
    g.put_node(event("evt2", "KK03", "2021-02-20",
                     "Bankruptcy proceedings opened over Acme AG. Liquidator: Hans Weber."))
    g.put_node(event("evt3", "HR01", "2020-12-01",
                     "Beta SA, Zurich, new entity registered."))
    g.put_node(hub("hub:acmeag", "acmeag", "Acme AG"))
    g.put_edge(GraphEdge("acme-ag", "evt1", EdgeKind.HAS_EVENT, {"role": "SUBJECT", "date": "2021-01-10"}))
    g.put_edge(GraphEdge("acme-ag", "evt2", EdgeKind.HAS_EVENT, {"role": "SUBJECT", "date": "2021-02-20"}))
    g.put_edge(GraphEdge("beta-sa", "evt2", EdgeKind.ACQUIRED_FROM, {"role": "BUYER", "date": "2021-02-20"}))
    g.put_edge(GraphEdge("hans", "evt2", EdgeKind.ACTED_IN, {"role": "Liquidator", "date": "2021-02-20"}))
    g.put_edge(GraphEdge("beta-sa", "evt3", EdgeKind.HAS_EVENT, {"role": "SUBJECT", "date": "2020-12-01"}))
    g.put_edge(GraphEdge("acme-ag", "hub:acmeag", EdgeKind.HAS_NAME))
    return g


CRITERION_LABELS = {
    1: "entity resolution precision on seeded truth",
    2: "name similarity against an independent oracle",
    3: "resolution fixpoint and graph schema guarantee",
    4: "retrieval loop step and model-call budgets",
    5: "dialogue state machine conformance",
    6: "trajectory metrics equal exact brute force",
    7: "judged-tier success rule and prompt fidelity",
    8: "query guard blocks writes, read results exact",
    9: "reversible obfuscation with keyed digests",
    10: "end-to-end routed conversations",
}

_CRITERION_TEST = re.compile(r"test_criterion_(\d+)_")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One release-criterion verdict line per acceptance test that ran."""
    outcomes: dict[int, str] = {}
    for status in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(status, []):
            if "test_acceptance" not in getattr(report, "nodeid", ""):
                continue
            found = _CRITERION_TEST.search(report.nodeid)
            if found:
                number = int(found.group(1))
                verdict = "PASS" if status == "passed" else "FAIL"
                outcomes[number] = verdict
    if not outcomes:
        return

    detail: dict[int, str] = {}
    report_file = Path(__file__).parent / ".acceptance_report"
    if report_file.exists():
        for line in report_file.read_text(encoding="utf-8").splitlines():
            found = re.search(r"criterion\s+(\d+): (.*)", line)
            if found:
                detail[int(found.group(1))] = found.group(2)

    terminalreporter.section("release criteria")
    for number in sorted(outcomes):
        verdict = outcomes[number]
        label = detail.get(number) if verdict == "PASS" else None
        label = label or CRITERION_LABELS.get(number, "")
        terminalreporter.write_line(f"{verdict}  criterion {number:2d}: {label}")
