"""Access to the proof corpus shipped inside the package."""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

_EXPECT = re.compile(r"^;\s*expect:\s*(\S+)(?:\s+(\S+))?", re.MULTILINE)
PREFIXES = ("corpus:", "examples/")


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    text: str
    expect: str  # accept | reject | parse-error | forged
    category: str | None


def _root():
    return resources.files("s02e") / "corpus"


def names() -> list[str]:
    return sorted(p.name for p in _root().iterdir() if p.name.endswith(".s02e"))


def entry(name: str) -> CorpusEntry:
    text = (_root() / name).read_text(encoding="utf-8")
    m = _EXPECT.search(text)
    if not m:
        raise ValueError(f"{name} has no '; expect:' header")
    return CorpusEntry(name, text, m.group(1), m.group(2))


def entries() -> list[CorpusEntry]:
    return [entry(n) for n in names()]


def read_source(path: str) -> str:
    """Text of ``path``; a missing ``examples/NAME`` or ``corpus:NAME``
    falls back to the bundled corpus."""
    p = Path(path)
    if p.is_file():
        return p.read_text(encoding="utf-8")
    for prefix in PREFIXES:
        if path.startswith(prefix):
            name = path[len(prefix):]
            if name in names():
                return entry(name).text
    raise FileNotFoundError(path)
