"""Bundled example machine files."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

FIXTURE_NAMES = ("leq.sm", "lw.sm", "lwwr.sm", "rot.sm")


def fixture_path(name: str) -> Path:
    """Filesystem path of a bundled machine file."""
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(FIXTURE_NAMES)}")
    return Path(str(resources.files(__package__) / name))


def fixture_text(name: str) -> str:
    return fixture_path(name).read_text(encoding="utf-8")
