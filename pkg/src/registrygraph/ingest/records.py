"""Registry publication records and their line-delimited JSON files.

A record file holds one JSON object per line:

    {"record_id": "shab-2021-001", "rubric": "HR01", "sub_rubric": null,
     "date": "2021-03-05", "location": "Geneva", "language": "de",
     "structured": {"SUBJECT": [{"kind": "company", "name": "Acme AG",
                                 "registry_id": "CHE-100.000.001",
                                 "attrs": {"nominal_capital": 100000}}]},
     "free_text": "..."}

``structured`` maps a role name to a list of entity descriptors.  The
role decides which edge kind connects the entity to the record's event
node.  Unparseable lines are counted and skipped, never fatal.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable

logger = logging.getLogger(__name__)


@dataclass
class EntityRef:
    """A structured mention of a company or person inside a record."""

    kind: str  # "company" | "person"
    name: str
    registry_id: str | None = None
    attrs: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in ("company", "person"):
            raise ValueError(f"entity kind must be company or person, got {self.kind!r}")
        if not self.name or not self.name.strip():
            raise ValueError("entity name must be non-empty")

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "EntityRef":
        return cls(
            kind=data["kind"],
            name=data["name"],
            registry_id=data.get("registry_id"),
            attrs=dict(data.get("attrs", {})),
        )

    def to_dict(self) -> dict[str, Any]:
        payload: dict[str, Any] = {"kind": self.kind, "name": self.name}
        if self.registry_id is not None:
            payload["registry_id"] = self.registry_id
        if self.attrs:
            payload["attrs"] = self.attrs
        return payload


@dataclass
class RegistryRecord:
    """One gazette publication."""

    record_id: str
    rubric: str
    date: str
    location: str = ""
    language: str = ""
    sub_rubric: str | None = None
    structured: dict[str, list[EntityRef]] = field(default_factory=dict)
    free_text: str = ""

    def __post_init__(self) -> None:
        if not self.record_id:
            raise ValueError("record_id must be non-empty")
        if not self.rubric:
            raise ValueError("rubric must be non-empty")

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "RegistryRecord":
        structured = {}
        for role, refs in dict(data.get("structured", {})).items():
            if isinstance(refs, dict):
                refs = [refs]
            structured[str(role)] = [EntityRef.from_dict(r) for r in refs]
        return cls(
            record_id=data["record_id"],
            rubric=data["rubric"],
            date=data.get("date", ""),
            location=data.get("location", ""),
            language=data.get("language", ""),
            sub_rubric=data.get("sub_rubric"),
            structured=structured,
            free_text=data.get("free_text", ""),
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "record_id": self.record_id,
            "rubric": self.rubric,
            "sub_rubric": self.sub_rubric,
            "date": self.date,
            "location": self.location,
            "language": self.language,
            "structured": {
                role: [ref.to_dict() for ref in refs]
                for role, refs in self.structured.items()
            },
            "free_text": self.free_text,
        }

    def full_text(self) -> str:
        """Searchable text: sparse metadata columns plus the legal text."""
        header = " | ".join(
            part
            for part in (self.rubric, self.sub_rubric, self.date, self.location)
            if part
        )
        return f"{header}\n{self.free_text}" if self.free_text else header


def read_records(path: str | Path) -> tuple[list[RegistryRecord], int]:
    """Load a record file, skipping bad lines.

    Returns:
        (records, skipped): Parsed records and how many lines failed.
    """
    records: list[RegistryRecord] = []
    skipped = 0
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                records.append(RegistryRecord.from_dict(json.loads(line)))
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                skipped += 1
                logger.warning("skipping record at line %d: %s", line_no, exc)
    return records, skipped


def write_records(records: Iterable[RegistryRecord], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for record in records:
            handle.write(
                json.dumps(record.to_dict(), sort_keys=True, ensure_ascii=False) + "\n"
            )
