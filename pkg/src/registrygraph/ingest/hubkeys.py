"""Order-insensitive name keys for entity resolution.

The hub key canonicalizes a display name so that token permutations and
punctuation collapse to the same string: lowercase the name, split it
into maximal alphanumeric runs, sort the tokens alphabetically, and
concatenate them.  "Doe, John" and "John Doe" both key to "doejohn";
"John A. Doe" keys to "adoejohn" and therefore stays separate.

Equality of hub keys is byte-exact; no fuzzy matching happens here.
"""

from __future__ import annotations

from registrygraph.graph.textindex import tokenize


class EmptyKey(ValueError):
    """The name contained no alphanumeric content."""


def generate_hub_key(name: str) -> str:
    """Canonical order-insensitive key for a display name.

    Raises:
        EmptyKey: If no tokens survive normalization.
    """
    tokens = tokenize(name)
    if not tokens:
        raise EmptyKey(f"name {name!r} has no alphanumeric tokens")
    return "".join(sorted(tokens))


def name_slug(name: str) -> str:
    """Order-preserving normalized form, used for deterministic uids.

    Unlike the hub key this keeps token order, so "Doe, John" and
    "John Doe" stay distinct nodes while still collapsing punctuation
    and case.

    Raises:
        EmptyKey: If no tokens survive normalization.
    """
    tokens = tokenize(name)
    if not tokens:
        raise EmptyKey(f"name {name!r} has no alphanumeric tokens")
    return "-".join(tokens)
