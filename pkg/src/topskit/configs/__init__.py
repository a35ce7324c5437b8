"""Bundled example systems, shipped as JSON files inside the package."""

from __future__ import annotations

import json
from importlib import resources

__all__ = ["bundled_names", "load_bundled"]


def bundled_names() -> list[str]:
    """Names of all bundled configurations (without the .json suffix)."""
    names = []
    for entry in resources.files(__name__).iterdir():
        if entry.name.endswith(".json"):
            names.append(entry.name[: -len(".json")])
    return sorted(names)


def load_bundled(name: str) -> dict:
    """The parsed JSON description of a bundled configuration.

    Accepts the bare name or the name with a .json suffix; raises
    ``KeyError`` for unknown names.
    """
    base = name if name.endswith(".json") else name + ".json"
    res = resources.files(__name__) / base
    if not res.is_file():
        raise KeyError(f"no bundled configuration named {name!r}")
    return json.loads(res.read_text(encoding="utf-8"))
