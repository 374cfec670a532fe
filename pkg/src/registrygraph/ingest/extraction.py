"""Phase 2: free-text entity extraction through a language model.

Events are batched into one structured-output call: the prompt carries a
JSON object mapping small integer aliases (0..n-1) to publication texts,
each truncated to TRUNCATION_LIMIT characters.  A failed or unparseable
batch splits in half and each half retries; a failing batch of size one
is retried SINGLE_RETRIES more times and then recorded as failed, so the
recursion depth never exceeds ceil(log2(n)) + SINGLE_RETRIES.

Extracted entities are validated after the fact: stoplisted artifacts of
the source format are dropped, as are unsplit compound names and generic
authority names that lack their location suffix.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field

from registrygraph.graph.model import Uid
from registrygraph.graph.textindex import tokenize
from registrygraph.llm.gateway import GatewayError, LlmConfig, LlmGateway
from registrygraph.prompts import load_asset

logger = logging.getLogger(__name__)

#: Longest text slice sent per event; registry boilerplate front-loads
#: the informative part, so the tail is expendable.
TRUNCATION_LIMIT = 2000

#: Extra attempts granted to a failing batch of size one.
SINGLE_RETRIES = 2

#: Name tokens that betray an unsplit compound mention.
CONJUNCTION_TOKENS = frozenset({"and", "und", "et", "&", "+"})

#: Office names that are meaningless without a location suffix.
GENERIC_AUTHORITIES = frozenset(
    {
        "konkursamt",
        "betreibungsamt",
        "handelsregisteramt",
        "kantonsgericht",
        "bezirksgericht",
        "office des faillites",
        "office des poursuites",
    }
)


@dataclass
class ExtractionEntity:
    """One entity mention pulled out of an event text."""

    kind: str  # "company" | "person"
    name: str
    role: str


@dataclass
class ExtractionStats:
    events_attempted: int = 0
    events_failed: list[Uid] = field(default_factory=list)
    entities_extracted: int = 0
    entities_rejected: int = 0
    calls_made: int = 0
    max_depth: int = 0

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def load_stoplist(path: str | None = None) -> frozenset[str]:
    """Stoplist terms, lowercased; one per line, blanks ignored."""
    if path is None:
        text = load_asset("stoplist.txt")
    else:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    return frozenset(line.strip().lower() for line in text.splitlines() if line.strip())


def extract_batch(
    events: list[tuple[Uid, str]],
    gateway: LlmGateway,
    stoplist: frozenset[str] | None = None,
    config: LlmConfig | None = None,
) -> tuple[dict[Uid, list[ExtractionEntity]], ExtractionStats]:
    """Extract entities for a batch of (event uid, text) pairs.

    Returns:
        (per-event entity lists, stats).  Events whose extraction failed
        even at batch size one appear in ``stats.events_failed`` and are
        absent from the result map; the pipeline carries on.
    """
    stoplist = load_stoplist() if stoplist is None else stoplist
    config = config or LlmConfig(structured_output=True)
    if not config.structured_output:
        raise ValueError("extraction requires a structured-output config")
    stats = ExtractionStats(events_attempted=len(events))
    results: dict[Uid, list[ExtractionEntity]] = {}
    if events:
        _extract(list(events), gateway, config, results, stats, depth=0)
    _validate(results, stoplist, stats)
    return results, stats


def _extract(
    events: list[tuple[Uid, str]],
    gateway: LlmGateway,
    config: LlmConfig,
    results: dict[Uid, list[ExtractionEntity]],
    stats: ExtractionStats,
    depth: int,
) -> None:
    stats.max_depth = max(stats.max_depth, depth)
    attempts = 1 + (SINGLE_RETRIES if len(events) == 1 else 0)
    for _ in range(attempts):
        try:
            stats.calls_made += 1
            parsed = _call_once(events, gateway, config)
        except (GatewayError, ValueError) as exc:
            logger.warning("extraction batch of %d failed: %s", len(events), exc)
            continue
        for index, (uid, _text) in enumerate(events):
            results[uid] = parsed.get(index, [])
        return
    if len(events) == 1:
        stats.events_failed.append(events[0][0])
        return
    mid = len(events) // 2
    _extract(events[:mid], gateway, config, results, stats, depth + 1)
    _extract(events[mid:], gateway, config, results, stats, depth + 1)


def _call_once(
    events: list[tuple[Uid, str]], gateway: LlmGateway, config: LlmConfig
) -> dict[int, list[ExtractionEntity]]:
    payload = {
        str(alias): text[:TRUNCATION_LIMIT] for alias, (_uid, text) in enumerate(events)
    }
    messages = [
        {"role": "system", "content": load_asset("extraction_prompt.txt")},
        {"role": "user", "content": json.dumps(payload, sort_keys=True, ensure_ascii=False)},
    ]
    reply = gateway.chat(messages, config=config)
    if reply.text is None:
        raise ValueError("extraction reply carried no text")
    document = json.loads(reply.text)
    if not isinstance(document, dict):
        raise ValueError("extraction reply must be a JSON object")
    parsed: dict[int, list[ExtractionEntity]] = {}
    for raw_alias, raw_entities in document.items():
        try:
            alias = int(raw_alias)
        except (TypeError, ValueError):
            logger.warning("ignoring non-integer alias %r", raw_alias)
            continue
        if alias < 0 or alias >= len(events):
            logger.warning("ignoring out-of-range alias %d", alias)
            continue
        if not isinstance(raw_entities, list):
            raise ValueError(f"alias {alias}: entities must be a list")
        entities = []
        for item in raw_entities:
            if not isinstance(item, dict):
                raise ValueError(f"alias {alias}: entity must be an object")
            kind = str(item.get("kind", "")).strip().lower()
            name = str(item.get("name", "")).strip()
            role = str(item.get("role", "")).strip()
            if kind not in ("person", "company") or not name:
                raise ValueError(f"alias {alias}: malformed entity {item!r}")
            entities.append(ExtractionEntity(kind=kind, name=name, role=role or "Mentioned"))
        parsed[alias] = entities
    return parsed


def _validate(
    results: dict[Uid, list[ExtractionEntity]],
    stoplist: frozenset[str],
    stats: ExtractionStats,
) -> None:
    for uid, entities in results.items():
        kept = []
        for entity in entities:
            if _rejected(entity, stoplist):
                stats.entities_rejected += 1
            else:
                kept.append(entity)
        stats.entities_extracted += len(kept)
        results[uid] = kept


def _rejected(entity: ExtractionEntity, stoplist: frozenset[str]) -> bool:
    lowered = entity.name.strip().lower()
    if lowered in stoplist:
        return True
    tokens = entity.name.lower().split()
    if any(token.strip(".,;") in CONJUNCTION_TOKENS for token in tokens):
        return True
    if lowered in GENERIC_AUTHORITIES:
        # a bare office name names a form, not an actor
        return True
    if not tokenize(entity.name):
        return True
    return False


def max_recursion_depth(batch_size: int) -> int:
    """Upper bound on split depth for a batch of the given size."""
    if batch_size <= 1:
        return 0
    return math.ceil(math.log2(batch_size))
