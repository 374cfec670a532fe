"""Keyed obfuscation of identifying fields.

Targeted string properties on Company, Person, and Event nodes are
replaced by their HMAC-SHA256 digest (lowercase hex) under a caller
secret.  Equal plaintexts map to equal digests, so graph structure and
join behavior survive.  A translation table (digest back to plaintext,
tagged with a key id) makes the mapping reversible for holders of the
table; name hubs are left untouched so resolution keeps working on the
obfuscated graph.
"""

from __future__ import annotations

import hashlib
import hmac
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

from registrygraph.graph.model import NodeLabel
from registrygraph.graph.store import PropertyGraph

logger = logging.getLogger(__name__)

#: Properties obfuscated when the caller does not narrow the set.
DEFAULT_FIELDS = frozenset({"name", "address", "location", "full_text"})

_OBFUSCATED_LABELS = (NodeLabel.COMPANY, NodeLabel.PERSON, NodeLabel.EVENT)

TABLE_HEADER = "table.v1"


class WeakKey(ValueError):
    """The obfuscation secret was empty."""


class NotInTable(KeyError):
    """A digest was not found in the translation table."""


def digest_value(secret: bytes, value: str | bytes) -> str:
    """HMAC-SHA256 of the value under the secret, as lowercase hex.

    String values are UTF-8 encoded; bytes pass through unchanged.
    """
    data = value.encode("utf-8") if isinstance(value, str) else value
    return hmac.new(secret, data, hashlib.sha256).hexdigest()


def key_id(secret: bytes) -> str:
    """Short identifier for a secret, safe to store next to digests."""
    return hashlib.sha256(secret).hexdigest()[:8]


@dataclass
class TranslationTable:
    """Reversible digest-to-plaintext mapping for one obfuscation run."""

    key_id: str
    entries: dict[str, str] = field(default_factory=dict)

    def plaintext(self, digest: str) -> str:
        """Resolve a digest back to its plaintext.

        Raises:
            NotInTable: If the digest is unknown.
        """
        try:
            return self.entries[digest]
        except KeyError:
            raise NotInTable(digest) from None

    def save(self, path: str | Path) -> None:
        lines = [f"{TABLE_HEADER} key-id={self.key_id}"]
        for digest in sorted(self.entries):
            lines.append(
                json.dumps(
                    {"d": digest, "v": self.entries[digest]},
                    sort_keys=True,
                    ensure_ascii=False,
                )
            )
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "TranslationTable":
        lines = Path(path).read_text(encoding="utf-8").splitlines()
        if not lines or not lines[0].startswith(TABLE_HEADER):
            raise ValueError(f"expected {TABLE_HEADER!r} header")
        _, _, tail = lines[0].partition("key-id=")
        table = cls(key_id=tail.strip())
        for line in lines[1:]:
            if not line.strip():
                continue
            record = json.loads(line)
            table.entries[record["d"]] = record["v"]
        return table


def obfuscate_graph(
    graph: PropertyGraph,
    secret: bytes,
    fields: frozenset[str] | set[str] = DEFAULT_FIELDS,
) -> TranslationTable:
    """Replace targeted string properties with keyed digests, in place.

    Non-string values and name hubs are left alone.  An empty field set
    is a no-op that returns an empty table with a warning.

    Raises:
        WeakKey: If the secret is empty.
    """
    if not secret:
        raise WeakKey("obfuscation secret must be non-empty")
    table = TranslationTable(key_id=key_id(secret))
    if not fields:
        logger.warning("obfuscation called with an empty field set; nothing to do")
        return table
    for label in _OBFUSCATED_LABELS:
        for node in graph.nodes(label=label):
            for prop in sorted(fields):
                value = node.props.get(prop)
                if not isinstance(value, str) or not value:
                    continue
                digest = digest_value(secret, value)
                node.props[prop] = digest
                table.entries[digest] = value
    return table


def restore_graph(graph: PropertyGraph, table: TranslationTable) -> int:
    """Undo an obfuscation pass using its translation table.

    Returns:
        Number of property values restored.
    """
    restored = 0
    for label in _OBFUSCATED_LABELS:
        for node in graph.nodes(label=label):
            for prop, value in list(node.props.items()):
                if isinstance(value, str) and value in table.entries:
                    node.props[prop] = table.entries[value]
                    restored += 1
    return restored
