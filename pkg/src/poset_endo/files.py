"""Poset files (versioned JSON) and DOT export.

The on-disk format is ``{"version": 1, "n": 4, "covers": [[0, 1], ...],
"names": [...]}`` with covers sorted lexicographically.  Writing is
byte-stable: fixed key order, two-space indentation, one cover per pair,
LF endings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .core import NotGraded, Poset, compute_grading, from_cover_list
from .errors import ParseError


@dataclass(frozen=True)
class PosetFile:
    """Parsed poset file: size, cover pairs, optional display names."""

    version: int
    n: int
    covers: tuple[tuple[int, int], ...]
    names: tuple[str, ...] | None = None

    @classmethod
    def from_poset(cls, p: Poset, names=None) -> "PosetFile":
        return cls(
            version=1,
            n=p.n,
            covers=p.covers(),
            names=tuple(names) if names is not None else None,
        )

    def to_poset(self) -> Poset:
        return from_cover_list(self.n, self.covers)

    def render(self) -> str:
        lines = ["{", '  "version": 1,', f'  "n": {self.n},']
        pairs = ", ".join(f"[{a}, {b}]" for a, b in sorted(self.covers))
        suffix = "," if self.names is not None else ""
        lines.append(f'  "covers": [{pairs}]{suffix}')
        if self.names is not None:
            lines.append(f'  "names": {json.dumps(list(self.names))}')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.render())

    @classmethod
    def parse(cls, text: str) -> "PosetFile":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(
                f"line {exc.lineno} column {exc.colno}: {exc.msg}"
            ) from exc
        if not isinstance(obj, dict):
            raise ParseError("poset file must be a JSON object")
        if obj.get("version") != 1:
            raise ParseError(f"unsupported version {obj.get('version')!r}")
        n = obj.get("n")
        if not isinstance(n, int) or n < 0:
            raise ParseError("'n' must be a nonnegative integer")
        covers = obj.get("covers")
        if not isinstance(covers, list) or not all(
            isinstance(c, list)
            and len(c) == 2
            and all(isinstance(x, int) for x in c)
            for c in covers
        ):
            raise ParseError("'covers' must be a list of [lower, upper] pairs")
        names = obj.get("names")
        if names is not None:
            if not isinstance(names, list) or not all(
                isinstance(s, str) for s in names
            ):
                raise ParseError("'names' must be a list of strings")
            if len(names) != n:
                raise ParseError(f"{len(names)} names for {n} elements")
        return cls(
            version=1,
            n=n,
            covers=tuple((a, b) for a, b in covers),
            names=tuple(names) if names is not None else None,
        )

    @classmethod
    def load(cls, path) -> "PosetFile":
        with open(path, encoding="utf-8") as fh:
            return cls.parse(fh.read())


def read_poset(path) -> Poset:
    """Load a poset file and materialize it, validating all invariants."""
    return PosetFile.load(path).to_poset()


def write_poset(p: Poset, path, names=None) -> None:
    """write then read is the identity on the parsed content."""
    PosetFile.from_poset(p, names=names).save(path)


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(p: Poset, names=None) -> str:
    """Render the Hasse diagram as a layered DOT digraph.

    Elements of equal rank share a DOT rank group when the poset is graded;
    node and edge order is deterministic.
    """
    labels = [
        names[i] if names is not None else str(i) for i in range(p.n)
    ]
    lines = ["digraph hasse {", "  rankdir=BT;"]
    for i in range(p.n):
        lines.append(f"  {i} [label={_dot_quote(labels[i])}];")
    g = compute_grading(p) if p.n else None
    if g is not None and not isinstance(g, NotGraded):
        for level in g.levels():
            if len(level) > 1:
                members = " ".join(f"{x};" for x in level)
                lines.append(f"  {{ rank=same; {members} }}")
    for u, v in p.covers():
        lines.append(f"  {u} -> {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
