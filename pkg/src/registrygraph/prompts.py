"""Loader for versioned prompt and stoplist assets bundled with the package."""

from __future__ import annotations

from importlib import resources

_CACHE: dict[str, str] = {}


def load_asset(filename: str) -> str:
    """Read a text asset from the package's assets directory."""
    if filename not in _CACHE:
        ref = resources.files("registrygraph").joinpath("assets", filename)
        _CACHE[filename] = ref.read_text(encoding="utf-8")
    return _CACHE[filename]
