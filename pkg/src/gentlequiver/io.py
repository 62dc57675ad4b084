"""Plain-text quiver files.

::

    quiver ex
    vertex 1
    vertex 2
    vertex 3
    arrow a: 1 -> 2
    arrow b: 2 -> 3
    relation a b      # the path "a then b" is zero

Blank lines and ``#`` comments are ignored.  ``serialize`` writes the
canonical (sorted) form, so ``serialize(parse(serialize(A)))`` is stable.
"""

from __future__ import annotations

import re
from pathlib import Path

from .quiver import Arrow, BoundQuiver, QuiverError, Relation

_NAME = r"[^\s:#]+"
_ARROW = re.compile(rf"^arrow\s+({_NAME})\s*:\s*({_NAME})\s*->\s*({_NAME})\s*$")


class ParseError(QuiverError):
    def __init__(self, message: str, line: int, column: int = 1, source: str = "<string>"):
        super().__init__(f"{source}:{line}:{column}: {message}")
        self.line = line
        self.column = column


def parse(text: str, source: str = "<string>") -> BoundQuiver:
    name = ""
    vertices: dict[str, int] = {}
    arrows: dict[str, tuple[Arrow, int]] = {}
    relations: list[tuple[Relation, int]] = []

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.lstrip()
        if not stripped:
            continue
        col = len(line) - len(stripped) + 1
        keyword = stripped.split(None, 1)[0]
        fields = stripped.split()
        if keyword == "quiver":
            if len(fields) != 2:
                raise ParseError("expected 'quiver <name>'", lineno, col, source)
            name = fields[1]
        elif keyword == "vertex":
            if len(fields) != 2:
                raise ParseError("expected 'vertex <name>'", lineno, col, source)
            if fields[1] in vertices:
                raise ParseError(f"duplicate vertex {fields[1]!r} "
                                 f"(first declared on line {vertices[fields[1]]})",
                                 lineno, col + len("vertex "), source)
            vertices[fields[1]] = lineno
        elif keyword == "arrow":
            m = _ARROW.match(stripped)
            if not m:
                raise ParseError("expected 'arrow <name>: <source> -> <target>'",
                                 lineno, col, source)
            a = Arrow(*m.groups())
            if a.name in arrows:
                raise ParseError(f"duplicate arrow {a.name!r} "
                                 f"(first declared on line {arrows[a.name][1]})",
                                 lineno, col + m.start(1), source)
            arrows[a.name] = (a, lineno)
        elif keyword == "relation":
            if len(fields) != 3:
                raise ParseError("expected 'relation <arrow1> <arrow2>'", lineno, col, source)
            relations.append((Relation(fields[1], fields[2]), lineno))
        else:
            raise ParseError(f"unknown keyword {keyword!r}", lineno, col, source)

    for a, lineno in arrows.values():
        for end in (a.source, a.target):
            if end not in vertices:
                raise ParseError(f"arrow {a.name!r} uses undeclared vertex {end!r}",
                                 lineno, 1, source)
    seen = {}
    for r, lineno in relations:
        for n in r:
            if n not in arrows:
                raise ParseError(f"relation uses unknown arrow {n!r}", lineno, 1, source)
        first, second = arrows[r.first][0], arrows[r.second][0]
        if first.target != second.source:
            raise ParseError(
                f"relation {r.first} {r.second} is not composable: {r.first} ends at "
                f"{first.target!r}, {r.second} starts at {second.source!r}",
                lineno, 1, source)
        if r in seen:
            raise ParseError(f"duplicate relation {r.first} {r.second} "
                             f"(first on line {seen[r]})", lineno, 1, source)
        seen[r] = lineno

    return BoundQuiver(tuple(vertices), tuple(a for a, _ in arrows.values()),
                       tuple(r for r, _ in relations), name)


def serialize(A: BoundQuiver) -> str:
    lines = []
    if A.name:
        lines.append(f"quiver {A.name}")
    lines += [f"vertex {v}" for v in A.vertices]
    lines += [f"arrow {a.name}: {a.source} -> {a.target}" for a in A.arrows]
    lines += [f"relation {r.first} {r.second}" for r in A.relations]
    return "\n".join(lines) + "\n"


def load(path) -> BoundQuiver:
    p = Path(path)
    A = parse(p.read_text(encoding="utf-8"), source=str(p))
    return A if A.name else A.with_name(p.stem)


def dump(A: BoundQuiver, path) -> None:
    Path(path).write_text(serialize(A), encoding="utf-8")
