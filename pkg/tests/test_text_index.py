"""Text index: tokenization, ranking, snippets, and re-index stability."""

from __future__ import annotations

import pytest

from registrygraph.graph import EmptyQuery, PropertyGraph, tokenize
from registrygraph.graph.textindex import SNIPPET_RADIUS, TextIndex
from tests.conftest import event


def test_tokenize_lowercases_and_splits_alphanumeric_runs():
    assert tokenize("Acme AG, Geneva 2021!") == ["acme", "ag", "geneva", "2021"]
    assert tokenize("Zürich-Büro") == ["zürich", "büro"]
    assert tokenize("...") == []
    assert tokenize("a_b") == ["a", "b"]


def test_search_ranks_by_term_frequency_then_uid():
    idx = TextIndex()
    idx.index("e1", "alpha beta alpha")
    idx.index("e2", "alpha gamma")
    idx.index("e3", "delta only")
    hits = idx.search("alpha")
    assert [h.uid for h in hits] == ["e1", "e2"]
    assert hits[0].score == 2
    # tie on score breaks by uid
    idx.index("e0", "alpha gamma")
    hits = idx.search("alpha")
    assert [h.uid for h in hits] == ["e1", "e0", "e2"]


def test_search_zero_hits_and_empty_query():
    idx = TextIndex()
    idx.index("e1", "alpha beta")
    assert idx.search("zeta") == []
    with pytest.raises(EmptyQuery):
        idx.search("!!!")


def test_snippet_window_around_first_match():
    words = [f"w{i}" for i in range(60)]
    words[30] = "needle"
    idx = TextIndex()
    idx.index("e1", " ".join(words))
    (hit,) = idx.search("needle")
    snippet_tokens = hit.snippet.split()
    assert len(snippet_tokens) == 2 * SNIPPET_RADIUS + 1
    assert snippet_tokens[SNIPPET_RADIUS] == "needle"
    # match near the start clips the window
    idx.index("e2", "needle " + " ".join(words[:30]))
    hits = idx.search("needle")
    early = next(h for h in hits if h.uid == "e2")
    assert early.snippet.split()[0] == "needle"


def test_snippet_preserves_original_text():
    idx = TextIndex()
    idx.index("e1", "Bankruptcy proceedings opened over Acme AG.")
    (hit,) = idx.search("acme")
    assert "Acme AG" in hit.snippet


def test_reindex_same_graph_yields_identical_postings():
    def build() -> PropertyGraph:
        g = PropertyGraph()
        g.put_node(event("e2", "HR01", "2021-01-01", "beta gamma beta"))
        g.put_node(event("e1", "KK03", "2021-02-01", "alpha beta"))
        return g

    assert build().text_postings() == build().text_postings()


def test_event_reput_replaces_postings():
    g = PropertyGraph()
    g.put_node(event("e1", "HR01", "2021-01-01", "alpha beta"))
    g.put_node(event("e1", "HR01", "2021-01-01", "gamma delta"))
    assert g.text_search("gamma")[0].uid == "e1"
    assert g.text_search("alpha") == []


def test_removed_event_leaves_index(small_graph):
    assert small_graph.text_search("bankruptcy")
    small_graph.remove_node("evt2")
    assert small_graph.text_search("bankruptcy") == []
