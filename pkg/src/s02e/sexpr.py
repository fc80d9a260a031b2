"""Minimal s-expression reader with source positions.

Atoms are bare tokens; there are no strings or quoting. ``;`` starts a
comment running to end of line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union


class ParseError(ValueError):
    """Raised for malformed input. ``pos`` is a (line, column) pair."""

    def __init__(self, message: str, pos: tuple[int, int] | None = None, category: str = "syntax"):
        self.pos = pos
        self.category = category
        where = f" at {pos[0]}:{pos[1]}" if pos else ""
        super().__init__(f"{message}{where}")
        self.message = message


@dataclass(frozen=True)
class Atom:
    text: str
    pos: tuple[int, int]


@dataclass(frozen=True)
class SList:
    items: tuple["SExpr", ...]
    pos: tuple[int, int]

    def __len__(self) -> int:
        return len(self.items)

    def __getitem__(self, i):
        return self.items[i]

    def head(self) -> str | None:
        if self.items and isinstance(self.items[0], Atom):
            return self.items[0].text
        return None


SExpr = Union[Atom, SList]

_TOKEN = re.compile(r"\s+|;[^\n]*|\(|\)|[^\s();]+")


def _tokens(text: str):
    line, col = 1, 1
    for m in _TOKEN.finditer(text):
        tok = m.group()
        pos = (line, col)
        newlines = tok.count("\n")
        if newlines:
            line += newlines
            col = len(tok) - tok.rfind("\n")
        else:
            col += len(tok)
        if tok[0].isspace() or tok[0] == ";":
            continue
        yield tok, pos


def read_all(text: str) -> list[SExpr]:
    """Read every top-level s-expression in ``text``."""
    stack: list[tuple[list, tuple[int, int]]] = []
    out: list[SExpr] = []
    for tok, pos in _tokens(text):
        if tok == "(":
            stack.append(([], pos))
        elif tok == ")":
            if not stack:
                raise ParseError("unbalanced ')'", pos)
            items, start = stack.pop()
            node = SList(tuple(items), start)
            (stack[-1][0] if stack else out).append(node)
        else:
            (stack[-1][0] if stack else out).append(Atom(tok, pos))
    if stack:
        raise ParseError("unclosed '('", stack[-1][1])
    return out


def read_one(text: str) -> SExpr:
    forms = read_all(text)
    if not forms:
        raise ParseError("empty input", (1, 1))
    if len(forms) > 1:
        extra = forms[1]
        raise ParseError("unexpected trailing input", extra.pos)
    return forms[0]
