"""Line-delimited dataset files for benchmark items, trajectories, and
conversations.

Each line is one JSON document; conversations serialize whole (goal
plus turns) per line.  Files are UTF-8 with sorted keys so diffs stay
readable.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable

from registrygraph.agent.turn import Trajectory
from registrygraph.evalkit.benchgen import BenchmarkItem
from registrygraph.evalkit.tier4 import ConversationSpec


def _write_lines(path: str | Path, documents: Iterable[dict]) -> int:
    lines = [
        json.dumps(doc, sort_keys=True, ensure_ascii=False) for doc in documents
    ]
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")
    return len(lines)


def _read_lines(path: str | Path) -> list[dict]:
    documents = []
    for line_no, line in enumerate(
        Path(path).read_text(encoding="utf-8").splitlines(), start=1
    ):
        if not line.strip():
            continue
        try:
            documents.append(json.loads(line))
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}:{line_no}: not valid JSON: {exc.msg}") from None
    return documents


def write_benchmark(path: str | Path, items: Iterable[BenchmarkItem]) -> int:
    return _write_lines(path, (item.to_dict() for item in items))


def read_benchmark(path: str | Path) -> list[BenchmarkItem]:
    return [BenchmarkItem.from_dict(doc) for doc in _read_lines(path)]


def write_trajectories(path: str | Path, trajectories: Iterable[Trajectory]) -> int:
    return _write_lines(path, (t.to_dict() for t in trajectories))


def read_trajectories(path: str | Path) -> list[Trajectory]:
    return [Trajectory.from_dict(doc) for doc in _read_lines(path)]


def write_conversations(path: str | Path, specs: Iterable[ConversationSpec]) -> int:
    return _write_lines(path, (spec.to_dict() for spec in specs))


def read_conversations(path: str | Path) -> list[ConversationSpec]:
    return [ConversationSpec.from_dict(doc) for doc in _read_lines(path)]
