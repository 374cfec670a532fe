"""Identity-resolution precision: merge rule, degree window, sampling."""

import pytest

from registrygraph.evalkit.tier1 import (
    EmptySample,
    Tier1Sample,
    collect_hub_samples,
    is_true_positive,
    tier1_evaluate,
)
from registrygraph.graph import (
    EdgeKind,
    GraphEdge,
    GraphNode,
    NodeLabel,
    PropertyGraph,
)

from conftest import company, hub, person


def add_hub_with_variants(graph, hub_uid, hub_name, variants):
    graph.put_node(hub(hub_uid, hub_uid.removeprefix("hub:"), hub_name))
    for index, variant in enumerate(variants):
        uid = f"{hub_uid}-v{index}"
        graph.put_node(person(uid, variant))
        graph.put_edge(GraphEdge(uid, hub_uid, EdgeKind.HAS_NAME))


class TestMergeRule:
    def test_identical_names_pass(self):
        assert is_true_positive("John Doe", "John Doe")

    def test_comma_first_passes_via_token_sets(self):
        """Comma-first order scores badly on edit distance alone."""
        assert is_true_positive("Doe, John", "John Doe")

    def test_permutation_passes(self):
        assert is_true_positive("Holding Acme AG", "Acme Holding AG")

    def test_small_typo_passes_via_similarity(self):
        assert is_true_positive("Acme Holdings AG", "Acme Holding AG")

    def test_unrelated_names_fail(self):
        assert not is_true_positive("Omega Trust", "Zeta Partners")

    def test_middle_initial_with_low_overlap_fails(self):
        assert not is_true_positive("Li, X.", "Wu Chen")


class TestHubCollection:
    def test_window_excludes_degree_one_and_over_twenty(self):
        g = PropertyGraph()
        add_hub_with_variants(g, "hub:lonely", "Lonely AG", ["Lonely AG"])
        add_hub_with_variants(g, "hub:ok", "Fine SA", ["Fine SA", "Fine, SA"])
        add_hub_with_variants(
            g, "hub:huge", "Huge AG", [f"Huge AG {i}" for i in range(21)]
        )
        samples = collect_hub_samples(g)
        assert [s.hub_uid for s in samples] == ["hub:ok"]

    def test_duplicate_names_collapse_to_distinct_set(self):
        g = PropertyGraph()
        g.put_node(hub("hub:dup", "dup", "Dup AG"))
        for uid in ("a", "b", "c"):
            g.put_node(company(uid, "Dup AG"))
            g.put_edge(GraphEdge(uid, "hub:dup", EdgeKind.HAS_NAME))
        samples = collect_hub_samples(g)
        assert samples[0].merged_names == {"Dup AG"}

    def test_sample_dataclass_holds_the_parts(self):
        sample = Tier1Sample("hub:x", "X AG", {"X AG", "AG X"})
        assert sample.representative_name == "X AG"


class TestEvaluate:
    def build_clean_graph(self):
        g = PropertyGraph()
        add_hub_with_variants(g, "hub:doe", "John Doe", ["John Doe", "Doe, John"])
        add_hub_with_variants(
            g, "hub:acme", "Acme Holding AG", ["Acme Holding AG", "Holding Acme AG"]
        )
        return g

    def test_all_permutation_variants_score_perfect_precision(self):
        result = tier1_evaluate(self.build_clean_graph(), sample_size=10, rng_seed=0)
        assert result.precision == 1.0
        assert result.comparisons == 4
        assert result.true_positives == 4
        assert result.false_merges == []

    def test_false_merge_lowers_precision_and_is_reported(self):
        g = self.build_clean_graph()
        add_hub_with_variants(g, "hub:bad", "Zeta Partners", ["Zeta Partners", "Omega Trust"])
        result = tier1_evaluate(g, sample_size=10, rng_seed=0)
        assert result.comparisons == 6
        assert result.true_positives == 5
        assert result.precision == pytest.approx(5 / 6)
        assert ("hub:bad", "Omega Trust", "Zeta Partners") in result.false_merges

    def test_precision_stays_within_bounds(self):
        result = tier1_evaluate(self.build_clean_graph(), sample_size=1, rng_seed=3)
        assert 0.0 <= result.precision <= 1.0
        assert result.hubs_sampled == 1

    def test_same_seed_same_sample(self):
        g = self.build_clean_graph()
        first = tier1_evaluate(g, sample_size=1, rng_seed=42)
        second = tier1_evaluate(g, sample_size=1, rng_seed=42)
        assert first == second

    def test_no_qualifying_hub_raises_empty_sample(self):
        g = PropertyGraph()
        add_hub_with_variants(g, "hub:lonely", "Lonely AG", ["Lonely AG"])
        with pytest.raises(EmptySample):
            tier1_evaluate(g)

    def test_empty_graph_raises_empty_sample(self):
        with pytest.raises(EmptySample):
            tier1_evaluate(PropertyGraph())
