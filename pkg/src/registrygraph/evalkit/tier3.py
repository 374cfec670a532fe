"""Judged answer quality over a benchmark of question/answer pairs.

Each item is answered once, then scored once per requested metric by a
judge model.  The scoring instructions live in versioned assets and are
embedded verbatim at the end of every judge prompt; the judge must reply
with a bare float.  Items whose judge reply cannot be parsed are marked
unscored and excluded from that metric's mean.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from statistics import fmean
from typing import Any, Callable

from registrygraph.evalkit.benchgen import BenchmarkItem
from registrygraph.evalkit.report import MetricReport
from registrygraph.llm.gateway import (
    JudgeUnparseable,
    LlmConfig,
    LlmGateway,
    judge_score,
)
from registrygraph.prompts import load_asset

#: Metrics tier 3 can score, in report order.
JUDGE_METRICS = ("faithfulness", "correctness", "answer_relevance", "information_recall")


@dataclass
class AnswerRecord:
    """What an answerer produced for one question.

    ``contexts`` carries the retrieved evidence snippets (required for
    faithfulness scoring); ``tools`` the names of tools invoked, used by
    the conversational tier's tool-transition metric.
    """

    text: str
    contexts: list[str] = field(default_factory=list)
    tools: list[str] = field(default_factory=list)


#: (question, history) -> str or AnswerRecord
Answerer = Callable[[str, list[dict[str, Any]]], Any]


def coerce_record(raw: Any) -> AnswerRecord:
    if isinstance(raw, AnswerRecord):
        return raw
    if isinstance(raw, str):
        return AnswerRecord(text=raw)
    raise TypeError(f"answerer must return str or AnswerRecord, got {type(raw).__name__}")


def build_faithfulness_prompt(context: str, answer: str) -> str:
    return (
        f"Context:\n{context}\n\n"
        f"Answer:\n{answer}\n\n"
        f"{load_asset('judge_faithfulness.txt')}"
    )


def build_correctness_prompt(question: str, expected: str, actual: str) -> str:
    return (
        f"Question:\n{question}\n\n"
        f"Expected Answer:\n{expected}\n\n"
        f"Actual Answer:\n{actual}\n\n"
        f"{load_asset('judge_correctness.txt')}"
    )


def build_relevance_prompt(question: str, answer: str) -> str:
    return (
        f"Question:\n{question}\n\n"
        f"Answer:\n{answer}\n\n"
        f"{load_asset('judge_relevance.txt')}"
    )


def build_recall_prompt(expected: str, actual: str) -> str:
    return (
        f"Expected Answer:\n{expected}\n\n"
        f"Actual Answer:\n{actual}\n\n"
        f"{load_asset('judge_recall.txt')}"
    )


def _prompt_for(metric: str, item: BenchmarkItem, record: AnswerRecord) -> str:
    if metric == "faithfulness":
        return build_faithfulness_prompt("\n\n".join(record.contexts), record.text)
    if metric == "correctness":
        return build_correctness_prompt(item.question, item.expected_answer, record.text)
    if metric == "answer_relevance":
        return build_relevance_prompt(item.question, record.text)
    if metric == "information_recall":
        return build_recall_prompt(item.expected_answer, record.text)
    raise ValueError(f"unknown metric {metric!r}")


def tier3_evaluate(
    items: list[BenchmarkItem],
    answerer: Answerer,
    judge_gateway: LlmGateway,
    metric_set: tuple[str, ...] = JUDGE_METRICS,
    judge_config: LlmConfig | None = None,
) -> MetricReport:
    """Answer every item and judge it on each requested metric.

    Raises:
        ValueError: On an unknown metric, or when faithfulness is
            requested but an answer carries no retrieved contexts.
    """
    for metric in metric_set:
        if metric not in JUDGE_METRICS:
            raise ValueError(f"unknown metric {metric!r}")

    scores: dict[str, list[float]] = {metric: [] for metric in metric_set}
    unscored: dict[str, int] = {metric: 0 for metric in metric_set}
    rows: list[dict[str, Any]] = []
    answer_latency = 0.0
    judge_latency = 0.0

    for index, item in enumerate(items):
        begun = time.perf_counter()
        record = coerce_record(answerer(item.question, []))
        answer_latency += time.perf_counter() - begun
        if "faithfulness" in metric_set and not record.contexts:
            raise ValueError(
                "faithfulness scoring needs retrieved contexts from the answerer"
            )
        row: dict[str, Any] = {
            "index": index,
            "question": item.question,
            "level": item.level,
            "answer": record.text,
        }
        for metric in metric_set:
            begun = time.perf_counter()
            try:
                value = judge_score(
                    judge_gateway, _prompt_for(metric, item, record), judge_config
                )
            except JudgeUnparseable:
                unscored[metric] += 1
                row[metric] = None
            else:
                scores[metric].append(value)
                row[metric] = value
            judge_latency += time.perf_counter() - begun
        rows.append(row)

    aggregates: dict[str, float | None] = {
        metric: (fmean(values) if values else None)
        for metric, values in scores.items()
    }
    return MetricReport(
        metrics=aggregates,
        per_item=rows,
        unscored=unscored,
        metadata={
            "items": len(items),
            "metric_set": list(metric_set),
            "answer_latency_s": answer_latency,
            "judge_latency_s": judge_latency,
        },
    )
