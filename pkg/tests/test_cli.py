"""Command-line workflows: generation, ingestion, evaluation, errors."""

import json
import socket

import pytest

from registrygraph.agent import Trajectory, TurnStep
from registrygraph.cli import main
from registrygraph.evalkit import (
    BenchmarkItem,
    ConversationSpec,
    ConversationTurn,
    write_benchmark,
    write_conversations,
    write_trajectories,
)
from registrygraph.graph.snapshot import load_graph


def run(argv):
    return main([str(a) for a in argv])


def write_script(path, entries):
    path.write_text(json.dumps({"version": 1, "entries": entries}), encoding="utf-8")
    return path


def router(token):
    return {"match": {"has_tools": False}, "reply": {"text": token}}


def synthesis(text):
    return {"reply": {"text": text}}


def judge(metric_phrase, score):
    return {"match": {"contains": metric_phrase}, "reply": {"text": score}}


@pytest.fixture()
def corpus_graph(tmp_path):
    """Small generated corpus ingested into a snapshot."""
    out = tmp_path / "corpus"
    assert run(["gensample", "--size", 30, "--persons", 20, "--seed", 5, "--output", out]) == 0
    graph_path = tmp_path / "graph.snapshot"
    code = run(
        ["ingest", "--input", out / "records.jsonl", "--graph", graph_path, "--phase", "all"]
    )
    assert code == 0
    return graph_path


class TestGensample:
    def test_same_seed_twice_is_byte_identical(self, tmp_path, capsys):
        a, b = tmp_path / "a", tmp_path / "b"
        assert run(["gensample", "--size", 20, "--seed", 7, "--output", a]) == 0
        assert run(["gensample", "--size", 20, "--seed", 7, "--output", b]) == 0
        assert (a / "records.jsonl").read_bytes() == (b / "records.jsonl").read_bytes()
        assert (a / "truth.json").read_bytes() == (b / "truth.json").read_bytes()

    def test_reports_written_paths(self, tmp_path, capsys):
        run(["gensample", "--size", 5, "--persons", 5, "--output", tmp_path / "c"])
        out = capsys.readouterr().out
        assert "records.jsonl" in out and "truth.json" in out


class TestIngest:
    def test_builds_snapshot_and_reports_phases(self, tmp_path, capsys):
        out = tmp_path / "corpus"
        run(["gensample", "--size", 10, "--persons", 8, "--output", out])
        graph_path = tmp_path / "g.snapshot"
        code = run(["ingest", "--input", out / "records.jsonl", "--graph", graph_path])
        assert code == 0
        text = capsys.readouterr().out
        assert "phase 1:" in text
        assert "phase 2: skipped" in text
        assert "phase 3:" in text
        assert graph_path.exists()
        assert load_graph(graph_path).node_count() > 0

    def test_phase_2_without_gateway_is_an_error(self, tmp_path, capsys):
        out = tmp_path / "corpus"
        run(["gensample", "--size", 4, "--persons", 4, "--output", out])
        graph_path = tmp_path / "g.snapshot"
        run(["ingest", "--input", out / "records.jsonl", "--graph", graph_path, "--phase", "1"])
        code = run(
            ["ingest", "--input", out / "records.jsonl", "--graph", graph_path, "--phase", "2"]
        )
        assert code == 1
        assert "gateway" in capsys.readouterr().err

    def test_missing_input_is_diagnostic_failure(self, tmp_path, capsys):
        assert run(["ingest", "--input", tmp_path / "absent.jsonl"]) == 1
        assert "not found" in capsys.readouterr().err


class TestUsageErrors:
    def test_bad_tier_exits_2(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            run(["eval", "--tier", 9])
        assert excinfo.value.code == 2

    def test_unknown_command_exits_2(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            run(["transmogrify"])
        assert excinfo.value.code == 2


class TestEvalTier1:
    def test_prints_precision_percentage(self, corpus_graph, capsys):
        assert run(["eval", "--tier", 1, "--graph", corpus_graph]) == 0
        out = capsys.readouterr().out
        assert out.startswith("precision: ")
        assert "%" in out

    def test_missing_graph_flag_is_diagnostic(self, capsys):
        assert run(["eval", "--tier", 1]) == 1
        assert "--graph" in capsys.readouterr().err


class TestEvalTier2:
    def test_metrics_from_trajectory_log(self, tmp_path, capsys):
        def traj(turn, tools):
            return Trajectory(
                turn_id=f"s:{turn}",
                query="q",
                intent="all_tools",
                direct=False,
                escalated=False,
                states=["S0", "S1"],
                steps=[
                    TurnStep(tool=t, arguments={}, status="success") for t in tools
                ],
                model_calls=2 + len(tools),
                latency_s=1.0,
                answer="a",
            )

        path = tmp_path / "trajectories.jsonl"
        write_trajectories(
            path,
            [
                traj(1, ["search_companies", "explore_network"]),
                traj(2, ["global_text_search"]),
            ],
        )
        assert run(["eval", "--tier", 2, "--dataset", path]) == 0
        out = capsys.readouterr().out
        assert "tsa: 0.5000" in out
        assert "far: 0.5000" in out
        assert "qsr: 1.0000" in out

    def test_missing_dataset_is_diagnostic(self, capsys):
        assert run(["eval", "--tier", 2]) == 1
        assert "--dataset" in capsys.readouterr().err


class TestEvalTier3:
    def test_judged_benchmark_run_with_scripted_gateway(self, corpus_graph, tmp_path, capsys):
        dataset = tmp_path / "bench.jsonl"
        write_benchmark(
            dataset,
            [
                BenchmarkItem(
                    question="Where is it registered?",
                    expected_answer="Geneva.",
                    level=1,
                    seed_class="direct-extraction",
                )
            ],
        )
        script = write_script(
            tmp_path / "script.json",
            [
                router("analytics|direct"),
                synthesis("Geneva."),
                judge("correctness score", "0.9"),
            ],
        )
        code = run(
            [
                "eval", "--tier", 3, "--dataset", dataset, "--graph", corpus_graph,
                "--script", script, "--metrics", "correctness",
                "--output", tmp_path / "report.json",
            ]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "correctness" in out and "0.9" in out
        report = json.loads((tmp_path / "report.json").read_text())
        assert report["metrics"]["correctness"] == pytest.approx(0.9)


class TestEvalTier4:
    def test_conversation_run_with_scripted_gateway(self, corpus_graph, tmp_path, capsys):
        dataset = tmp_path / "convos.jsonl"
        write_conversations(
            dataset,
            [
                ConversationSpec(
                    goal="basic follow-up",
                    turns=[
                        ConversationTurn("Who is it?", "Acme AG."),
                        ConversationTurn("Where?", "Geneva."),
                    ],
                )
            ],
        )
        entries = []
        for answer in ("Acme AG.", "Geneva."):
            entries.append(router("analytics|direct"))
            entries.append(synthesis(answer))
            entries.append(judge("correctness score", "1.0"))
            entries.append(judge("relevance score", "1.0"))
            entries.append(judge("Expected Answer's core information", "1.0"))
        script = write_script(tmp_path / "script.json", entries)
        code = run(
            [
                "eval", "--tier", 4, "--dataset", dataset,
                "--graph", corpus_graph, "--script", script,
            ]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "turn_success_rate" in out
        assert "1.000" in out


class TestGenbench:
    def test_writes_items_from_graph(self, corpus_graph, tmp_path, capsys):
        entries = [
            {"reply": {"text": f"Question {i}?"}} for i in range(4)
        ]
        script = write_script(tmp_path / "script.json", entries)
        output = tmp_path / "bench.jsonl"
        code = run(
            [
                "genbench", "--graph", corpus_graph, "--counts", "2,1,1",
                "--output", output, "--script", script,
            ]
        )
        assert code == 0
        lines = [l for l in output.read_text().splitlines() if l.strip()]
        assert len(lines) == 4
        assert "wrote 4 benchmark items" in capsys.readouterr().out

    def test_bad_counts_is_diagnostic(self, corpus_graph, tmp_path, capsys):
        code = run(
            ["genbench", "--graph", corpus_graph, "--counts", "2,x", "--script",
             write_script(tmp_path / "s.json", [])]
        )
        assert code == 1
        assert "--counts" in capsys.readouterr().err


class TestAnonymize:
    def test_obfuscate_then_restore_round_trips(self, corpus_graph, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("REGISTRYGRAPH_SECRET", "hush")
        original = corpus_graph.read_bytes()
        table = tmp_path / "trans.table"
        assert run(
            ["anonymize", "--graph", corpus_graph, "--fields", "name", "--table", table]
        ) == 0
        obfuscated = corpus_graph.read_bytes()
        assert obfuscated != original
        assert table.exists()
        assert run(["anonymize", "--graph", corpus_graph, "--table", table, "--restore"]) == 0
        assert corpus_graph.read_bytes() == original

    def test_missing_secret_is_diagnostic(self, corpus_graph, tmp_path, capsys, monkeypatch):
        monkeypatch.delenv("REGISTRYGRAPH_SECRET", raising=False)
        assert run(["anonymize", "--graph", corpus_graph, "--table", tmp_path / "t"]) == 1
        assert "REGISTRYGRAPH_SECRET" in capsys.readouterr().err


class TestServe:
    def test_occupied_port_fails_with_diagnostic(self, corpus_graph, tmp_path, capsys):
        blocker = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        blocker.bind(("127.0.0.1", 0))
        blocker.listen(1)
        port = blocker.getsockname()[1]
        script = write_script(tmp_path / "s.json", [])
        try:
            code = run(
                ["serve", "--port", port, "--graph", corpus_graph, "--script", script]
            )
        finally:
            blocker.close()
        assert code == 1
        assert str(port) in capsys.readouterr().err
