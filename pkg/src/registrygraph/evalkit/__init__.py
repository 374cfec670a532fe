"""Four-tier evaluation kit and benchmark generation.

Tier 1 checks graph identity-resolution precision, tier 2 audits tool
routing from trajectory logs, tier 3 judges answer quality against a
benchmark, tier 4 scores multi-turn conversations.  The kit evaluates
any answerer exposing (question, history) -> answer.
"""

from registrygraph.evalkit.benchgen import (
    BenchmarkItem,
    EmptySeed,
    PartialDataset,
    generate_benchmark,
)
from registrygraph.evalkit.datasets import (
    read_benchmark,
    read_conversations,
    read_trajectories,
    write_benchmark,
    write_conversations,
    write_trajectories,
)
from registrygraph.evalkit.report import MetricReport
from registrygraph.evalkit.similarity import (
    levenshtein_similarity,
    normalize_answer,
    normalized_exact_match,
    token_set_key,
)
from registrygraph.evalkit.tier1 import (
    EmptySample,
    Tier1Result,
    Tier1Sample,
    collect_hub_samples,
    tier1_evaluate,
)
from registrygraph.evalkit.tier2 import (
    STRUCTURED_TOOLS,
    EmptyInput,
    Tier2Result,
    tier2_evaluate,
)
from registrygraph.evalkit.tier3 import (
    AnswerRecord,
    JUDGE_METRICS,
    build_correctness_prompt,
    build_faithfulness_prompt,
    build_recall_prompt,
    build_relevance_prompt,
    tier3_evaluate,
)
from registrygraph.evalkit.tier4 import (
    MEMORY_TAGS,
    ConversationSpec,
    ConversationTurn,
    tier4_evaluate,
    turn_success,
)

__all__ = [
    "AnswerRecord",
    "BenchmarkItem",
    "ConversationSpec",
    "ConversationTurn",
    "EmptyInput",
    "EmptySample",
    "EmptySeed",
    "JUDGE_METRICS",
    "MEMORY_TAGS",
    "MetricReport",
    "PartialDataset",
    "STRUCTURED_TOOLS",
    "Tier1Result",
    "Tier1Sample",
    "Tier2Result",
    "build_correctness_prompt",
    "build_faithfulness_prompt",
    "build_recall_prompt",
    "build_relevance_prompt",
    "collect_hub_samples",
    "generate_benchmark",
    "levenshtein_similarity",
    "normalize_answer",
    "normalized_exact_match",
    "read_benchmark",
    "read_conversations",
    "read_trajectories",
    "tier1_evaluate",
    "tier2_evaluate",
    "tier3_evaluate",
    "tier4_evaluate",
    "token_set_key",
    "turn_success",
    "write_benchmark",
    "write_conversations",
    "write_trajectories",
]
