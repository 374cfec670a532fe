"""Score report shared by the judged evaluation tiers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class MetricReport:
    """Aggregate metric values plus the per-item rows behind them.

    ``metrics`` maps metric name to the arithmetic mean of its scored
    items, or None where the metric is not applicable.  Items a judge
    failed to score are excluded from the mean and tallied in
    ``unscored`` per metric.
    """

    metrics: dict[str, float | None] = field(default_factory=dict)
    per_item: list[dict[str, Any]] = field(default_factory=list)
    unscored: dict[str, int] = field(default_factory=dict)
    metadata: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "metrics": dict(self.metrics),
            "per_item": [dict(row) for row in self.per_item],
            "unscored": dict(self.unscored),
            "metadata": dict(self.metadata),
        }

    def table(self) -> str:
        """Human-readable two-column summary of the aggregates."""
        width = max((len(name) for name in self.metrics), default=6)
        lines = [f"{'metric'.ljust(width)}  value", f"{'-' * width}  -----"]
        for name, value in self.metrics.items():
            shown = "n/a" if value is None else f"{value:.3f}"
            lines.append(f"{name.ljust(width)}  {shown}")
        for name, count in self.unscored.items():
            if count:
                lines.append(f"{name.ljust(width)}  ({count} unscored)")
        return "\n".join(lines)
