"""Operator command line: pipeline lifecycle, service, and evaluation.

Subcommands mirror the life of a deployment: ``gensample`` fabricates a
registry corpus, ``ingest`` turns records into a graph snapshot (phase
1 structured, phase 2 model extraction, phase 3 resolution),
``anonymize`` obfuscates or restores sensitive properties, ``serve``
exposes the HTTP API, and ``eval``/``genbench`` run the evaluation
tiers and build benchmark datasets.

Every command exits 0 on success and 1 with a diagnostic on stderr on
failure; argparse handles flag errors with usage text and exit 2.
Model-backed steps accept ``--script`` (a scripted-gateway fixture) or
``--gateway-url``; otherwise REGISTRYGRAPH_GATEWAY_URL is consulted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from registrygraph.agent import SessionContext, handle_turn
from registrygraph.evalkit import (
    AnswerRecord,
    JUDGE_METRICS,
    generate_benchmark,
    read_benchmark,
    read_conversations,
    read_trajectories,
    tier1_evaluate,
    tier2_evaluate,
    tier3_evaluate,
    tier4_evaluate,
    write_benchmark,
)
from registrygraph.graph import PropertyGraph
from registrygraph.graph.snapshot import load_graph, save_graph
from registrygraph.ingest.extraction import extract_batch
from registrygraph.ingest.pipeline import (
    ensure_hub_links,
    ingest_structured,
    materialize_weak_nodes,
    select_extraction_targets,
)
from registrygraph.ingest.records import read_records
from registrygraph.ingest.resolution import absorb_weak_nodes, dedup_name_hubs
from registrygraph.llm.gateway import HttpGateway, LlmConfig, LlmGateway
from registrygraph.llm.mock import ScriptedGateway, load_script
from registrygraph.privacy import TranslationTable, obfuscate_graph, restore_graph
from registrygraph.samples import DEFAULT_PERSONS, write_corpus
from registrygraph.tools import Toolbox

GATEWAY_URL_ENV = "REGISTRYGRAPH_GATEWAY_URL"


class CliError(Exception):
    """Operator-facing failure; message goes to stderr, exit code 1."""


def _gateway(args: argparse.Namespace, required: bool = True) -> LlmGateway | None:
    script = getattr(args, "script", None)
    if script:
        return ScriptedGateway(load_script(script))
    url = getattr(args, "gateway_url", None) or os.environ.get(GATEWAY_URL_ENV)
    if url:
        return HttpGateway(url)
    if required:
        raise CliError(
            "no model gateway configured; pass --script or --gateway-url "
            f"(or set {GATEWAY_URL_ENV})"
        )
    return None


def _load_graph(path: str) -> PropertyGraph:
    if not Path(path).exists():
        raise CliError(f"graph snapshot not found: {path}")
    return load_graph(path)


# ----------------------------------------------------------------------
# commands


def cmd_gensample(args: argparse.Namespace) -> int:
    records_path, truth_path = write_corpus(
        args.output, companies=args.size, persons=args.persons, seed=args.seed
    )
    print(f"wrote {records_path} and {truth_path}")
    return 0


def cmd_ingest(args: argparse.Namespace) -> int:
    if not Path(args.input).exists():
        raise CliError(f"input file not found: {args.input}")
    phases = ("1", "2", "3") if args.phase == "all" else (args.phase,)
    graph = _load_graph(args.graph) if "1" not in phases else PropertyGraph()

    if "1" in phases:
        records, skipped = read_records(args.input)
        stats = ingest_structured(records, graph)
        ensure_hub_links(graph)
        print(
            f"phase 1: {stats.events_created} events, "
            f"{stats.companies_created + stats.persons_created} entities, "
            f"{stats.edges_created} edges ({skipped} records skipped)"
        )

    if "2" in phases:
        gateway = _gateway(args, required=args.phase == "2")
        if gateway is None:
            print("phase 2: skipped (no model gateway configured)")
        else:
            targets = select_extraction_targets(graph)
            events = [
                (uid, graph.get_node(uid).props.get("full_text", "")) for uid in targets
            ]
            extractions, ex_stats = extract_batch(
                events, gateway, config=LlmConfig(structured_output=True)
            )
            stats = materialize_weak_nodes(extractions, graph)
            print(
                f"phase 2: {ex_stats.entities_extracted} entities extracted, "
                f"{stats.weak_nodes_created} weak nodes, "
                f"{len(ex_stats.events_failed)} events failed"
            )

    if "3" in phases:
        merges = dedup_name_hubs(graph)
        absorbed = absorb_weak_nodes(graph)
        print(
            f"phase 3: {merges.hubs_merged} hubs merged, "
            f"{absorbed.weak_absorbed} weak nodes absorbed"
        )

    save_graph(graph, args.graph)
    print(f"graph saved to {args.graph} ({graph.node_count()} nodes, {graph.edge_count()} edges)")
    return 0


def cmd_anonymize(args: argparse.Namespace) -> int:
    graph = _load_graph(args.graph)
    if args.restore:
        if not args.table or not Path(args.table).exists():
            raise CliError("--restore needs an existing --table file")
        table = TranslationTable.load(args.table)
        restored = restore_graph(graph, table)
        save_graph(graph, args.graph)
        print(f"restored {restored} properties")
        return 0
    secret = os.environ.get(args.secret_env, "")
    if not secret:
        raise CliError(f"environment variable {args.secret_env} is empty or unset")
    fields = frozenset(f.strip() for f in args.fields.split(",") if f.strip())
    if not fields:
        raise CliError("--fields must name at least one property")
    table = obfuscate_graph(graph, secret.encode("utf-8"), fields)
    save_graph(graph, args.graph)
    table.save(args.table)
    print(f"obfuscated {len(table.entries)} distinct values; table saved to {args.table}")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from registrygraph.service import create_app

    graph = _load_graph(args.graph)
    gateway = _gateway(args)
    app = create_app(graph, gateway, session_file=args.sessions)
    try:
        uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    except (OSError, SystemExit) as exc:
        raise CliError(f"server failed to start on port {args.port}: {exc}") from exc
    return 0


def _agent_answerer(graph: PropertyGraph, gateway: LlmGateway):
    """Answer questions with the full agent; fresh session per dialogue."""
    toolbox = Toolbox(graph)
    state: dict[str, SessionContext] = {}

    def answer(question: str, history: list[dict]) -> AnswerRecord:
        if not history or "session" not in state:
            state["session"] = SessionContext()
        outcome = handle_turn(question, state["session"], toolbox, gateway)
        steps = outcome.trajectory.steps
        contexts = [s.summary for s in steps if s.status == "success" and s.summary]
        return AnswerRecord(
            text=outcome.answer,
            contexts=contexts,
            tools=[s.tool for s in steps],
        )

    return answer


def cmd_eval(args: argparse.Namespace) -> int:
    if args.tier == 1:
        if not args.graph:
            raise CliError("eval --tier 1 needs --graph")
        graph = _load_graph(args.graph)
        result = tier1_evaluate(graph, sample_size=args.sample_size, rng_seed=args.seed)
        print(
            f"precision: {float(result.precision) * 100:.2f}% "
            f"({result.true_positives}/{result.comparisons} merges correct, "
            f"{result.hubs_sampled} hubs sampled)"
        )
        for hub_uid, merged, hub_name in result.false_merges:
            print(f"  false merge: {merged!r} under {hub_name!r} ({hub_uid})")
        return 0

    if not args.dataset:
        raise CliError(f"eval --tier {args.tier} needs --dataset")
    if not Path(args.dataset).exists():
        raise CliError(f"dataset not found: {args.dataset}")

    if args.tier == 2:
        result = tier2_evaluate(read_trajectories(args.dataset))
        for name, value in result.as_floats().items():
            print(f"{name}: {'n/a' if value is None else f'{value:.4f}'}")
        return 0

    if not args.graph:
        raise CliError(f"eval --tier {args.tier} needs --graph for the answering agent")
    graph = _load_graph(args.graph)
    gateway = _gateway(args)
    answerer = _agent_answerer(graph, gateway)
    if args.tier == 3:
        metric_set = (
            tuple(m.strip() for m in args.metrics.split(",") if m.strip())
            if args.metrics
            else JUDGE_METRICS
        )
        report = tier3_evaluate(read_benchmark(args.dataset), answerer, gateway, metric_set)
    else:
        report = tier4_evaluate(read_conversations(args.dataset), answerer, gateway)
    print(report.table())
    if args.output:
        Path(args.output).write_text(
            json.dumps(report.to_dict(), sort_keys=True, ensure_ascii=False, indent=2) + "\n",
            encoding="utf-8",
        )
        print(f"report saved to {args.output}")
    return 0


def cmd_genbench(args: argparse.Namespace) -> int:
    graph = _load_graph(args.graph)
    gateway = _gateway(args)
    parts = [p.strip() for p in args.counts.split(",")]
    if len(parts) != 3 or not all(p.isdigit() for p in parts):
        raise CliError("--counts expects three integers: level1,level2,level3")
    counts = {level: int(part) for level, part in zip((1, 2, 3), parts)}
    items = generate_benchmark(graph, counts, gateway)
    written = write_benchmark(args.output, items)
    print(f"wrote {written} benchmark items to {args.output}")
    return 0


# ----------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="registrygraph",
        description="Commercial-registry graph pipeline, service, and evaluation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_gateway_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--script", help="scripted-gateway fixture file (offline runs)")
        p.add_argument("--gateway-url", help=f"chat endpoint URL (default ${GATEWAY_URL_ENV})")

    p = sub.add_parser("gensample", help="generate a synthetic registry corpus")
    p.add_argument("--size", type=int, default=500, help="number of companies")
    p.add_argument("--persons", type=int, default=DEFAULT_PERSONS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default="corpus", help="output directory")
    p.set_defaults(func=cmd_gensample)

    p = sub.add_parser("ingest", help="build a graph snapshot from registry records")
    p.add_argument("--input", required=True, help="records file, one JSON per line")
    p.add_argument("--graph", default="graph.snapshot", help="snapshot path to write")
    p.add_argument("--phase", choices=["1", "2", "3", "all"], default="all")
    add_gateway_flags(p)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("anonymize", help="obfuscate or restore graph properties")
    p.add_argument("--graph", required=True)
    p.add_argument("--fields", default="name,location", help="comma-separated properties")
    p.add_argument("--table", default="translation.table", help="translation table path")
    p.add_argument("--secret-env", default="REGISTRYGRAPH_SECRET")
    p.add_argument("--restore", action="store_true", help="undo using --table")
    p.set_defaults(func=cmd_anonymize)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--graph", required=True)
    p.add_argument("--sessions", help="session persistence file")
    add_gateway_flags(p)
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("eval", help="run one evaluation tier")
    p.add_argument("--tier", type=int, choices=[1, 2, 3, 4], required=True)
    p.add_argument("--dataset", help="tier 2: trajectories; 3: benchmark; 4: conversations")
    p.add_argument("--graph", help="graph snapshot (tiers 1, 3, 4)")
    p.add_argument("--sample-size", type=int, default=1000, help="tier 1 hub sample")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--metrics", help="tier 3 metric subset, comma-separated")
    p.add_argument("--output", help="write the full report as JSON")
    add_gateway_flags(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("genbench", help="derive benchmark questions from a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--counts", required=True, help="items per level: level1,level2,level3")
    p.add_argument("--output", default="benchmark.jsonl")
    p.add_argument("--seed", type=int, default=0)
    add_gateway_flags(p)
    p.set_defaults(func=cmd_genbench)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
