"""Multi-turn conversational scoring.

Every turn is answered with the full prior dialogue attached, judged on
correctness, answer relevance, and information recall, then classified
by a deterministic success rule.  Three dialogue-level rates follow:

    turn_success_rate          mean success over all turns
    context_carryover_accuracy same rule over memory-tagged turns only
    tool_transition_accuracy   turns with an expected tool set where at
                               least one expected tool was called
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from statistics import fmean
from typing import Any

from registrygraph.evalkit.report import MetricReport
from registrygraph.evalkit.similarity import normalized_exact_match
from registrygraph.evalkit.tier3 import (
    Answerer,
    build_correctness_prompt,
    build_recall_prompt,
    build_relevance_prompt,
    coerce_record,
)
from registrygraph.llm.gateway import (
    JudgeUnparseable,
    LlmConfig,
    LlmGateway,
    judge_score,
)

#: Tags marking a turn as memory-sensitive.
MEMORY_TAGS = frozenset({"context_carryover", "entity_memory", "temporal_memory"})

SUCCESS_CORRECTNESS = 0.80
COMBO_CORRECTNESS = 0.70
COMBO_RELEVANCE = 0.70


@dataclass
class ConversationTurn:
    question: str
    expected_answer: str
    tags: tuple[str, ...] = ()
    expected_tools: tuple[str, ...] = ()

    def __post_init__(self):
        bad = set(self.tags) - MEMORY_TAGS
        if bad:
            raise ValueError(f"unknown memory tags {sorted(bad)}")

    def to_dict(self) -> dict[str, Any]:
        return {
            "question": self.question,
            "expected_answer": self.expected_answer,
            "tags": list(self.tags),
            "expected_tools": list(self.expected_tools),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ConversationTurn":
        return cls(
            question=data["question"],
            expected_answer=data["expected_answer"],
            tags=tuple(data.get("tags", ())),
            expected_tools=tuple(data.get("expected_tools", ())),
        )


@dataclass
class ConversationSpec:
    """A scripted conversation: a goal and at least two turns."""

    goal: str
    turns: list[ConversationTurn] = field(default_factory=list)

    def __post_init__(self):
        if len(self.turns) < 2:
            raise ValueError("a conversation needs at least two turns")

    def to_dict(self) -> dict[str, Any]:
        return {"goal": self.goal, "turns": [turn.to_dict() for turn in self.turns]}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ConversationSpec":
        return cls(
            goal=data["goal"],
            turns=[ConversationTurn.from_dict(item) for item in data.get("turns", [])],
        )


def turn_success(
    exact_match: bool, correctness: float | None, relevance: float | None
) -> bool:
    """Deterministic success rule applied after judging.

    Success iff the normalized exact match holds, or correctness is at
    least 0.80, or correctness and relevance both reach 0.70.
    """
    if exact_match:
        return True
    if correctness is None:
        return False
    if correctness >= SUCCESS_CORRECTNESS:
        return True
    return (
        relevance is not None
        and correctness >= COMBO_CORRECTNESS
        and relevance >= COMBO_RELEVANCE
    )


def tier4_evaluate(
    conversations: list[ConversationSpec],
    answerer: Answerer,
    judge_gateway: LlmGateway,
    judge_config: LlmConfig | None = None,
) -> MetricReport:
    """Run and judge every conversation turn by turn."""
    per_turn: list[dict[str, Any]] = []
    successes: list[bool] = []
    tagged_successes: list[bool] = []
    tool_hits: list[bool] = []
    metric_values: dict[str, list[float]] = {
        "correctness": [],
        "answer_relevance": [],
        "information_recall": [],
    }
    unscored = {name: 0 for name in metric_values}
    answer_latency = 0.0

    for conv_index, conversation in enumerate(conversations):
        history: list[dict[str, Any]] = []
        for turn_index, turn in enumerate(conversation.turns):
            begun = time.perf_counter()
            record = coerce_record(answerer(turn.question, list(history)))
            answer_latency += time.perf_counter() - begun
            history.append({"role": "user", "content": turn.question})
            history.append({"role": "assistant", "content": record.text})

            exact = normalized_exact_match(record.text, turn.expected_answer)
            judged: dict[str, float | None] = {}
            prompts = {
                "correctness": build_correctness_prompt(
                    turn.question, turn.expected_answer, record.text
                ),
                "answer_relevance": build_relevance_prompt(turn.question, record.text),
                "information_recall": build_recall_prompt(
                    turn.expected_answer, record.text
                ),
            }
            for name, prompt in prompts.items():
                try:
                    value = judge_score(judge_gateway, prompt, judge_config)
                except JudgeUnparseable:
                    unscored[name] += 1
                    judged[name] = None
                else:
                    metric_values[name].append(value)
                    judged[name] = value

            success = turn_success(
                exact, judged["correctness"], judged["answer_relevance"]
            )
            successes.append(success)
            if set(turn.tags) & MEMORY_TAGS:
                tagged_successes.append(success)
            if turn.expected_tools:
                called = set(record.tools)
                tool_hits.append(bool(called & set(turn.expected_tools)))
            per_turn.append(
                {
                    "conversation": conv_index,
                    "turn": turn_index,
                    "question": turn.question,
                    "answer": record.text,
                    "exact_match": exact,
                    "success": success,
                    "tags": list(turn.tags),
                    **judged,
                }
            )

    metrics: dict[str, float | None] = {
        name: (fmean(values) if values else None)
        for name, values in metric_values.items()
    }
    metrics["turn_success_rate"] = (
        fmean(1.0 if s else 0.0 for s in successes) if successes else None
    )
    metrics["context_carryover_accuracy"] = (
        fmean(1.0 if s else 0.0 for s in tagged_successes) if tagged_successes else None
    )
    metrics["tool_transition_accuracy"] = (
        fmean(1.0 if h else 0.0 for h in tool_hits) if tool_hits else None
    )
    return MetricReport(
        metrics=metrics,
        per_item=per_turn,
        unscored=unscored,
        metadata={
            "conversations": len(conversations),
            "turns": len(successes),
            "tagged_turns": len(tagged_successes),
            "tool_checked_turns": len(tool_hits),
            "answer_latency_s": answer_latency,
        },
    )
