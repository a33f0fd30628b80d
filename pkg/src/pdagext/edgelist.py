"""Plain-text edge-list format.

::

    # comment lines start with '#'
    5
    0 -> 1
    1 -- 2

The first non-comment line holds the vertex count. Each further line is an
arc ``u -> v`` or an undirected edge ``u -- v`` over 0-based ids.
"""

from __future__ import annotations

import re
from pathlib import Path

from .errors import ParseError, UsageError
from .graph import Dag, Pdag

_EDGE_RE = re.compile(r"^\s*(\d+)\s*(->|--)\s*(\d+)\s*$")


def parse_edgelist(text: str, cls=Pdag) -> Pdag:
    g = None
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if g is None:
            try:
                n = int(line)
            except ValueError:
                raise ParseError(f"expected vertex count, got {line!r}", lineno) from None
            if n < 0:
                raise ParseError(f"negative vertex count {n}", lineno)
            g = cls(n)
            continue
        m = _EDGE_RE.match(line)
        if m is None:
            raise ParseError(f"cannot parse edge {line!r}", lineno)
        u, op, v = int(m.group(1)), m.group(2), int(m.group(3))
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        if u >= g.n or v >= g.n:
            raise ParseError(f"vertex out of range [0, {g.n})", lineno)
        key = frozenset((u, v))
        if key in seen:
            raise ParseError(f"duplicate edge between {u} and {v}", lineno)
        seen.add(key)
        try:
            if op == "->":
                g.add_arc(u, v)
            else:
                g.add_edge(u, v)
        except UsageError as exc:
            raise ParseError(str(exc), lineno) from None
    if g is None:
        raise ParseError("missing vertex count line")
    return g


def format_edgelist(g: Pdag, header: str | None = None) -> str:
    """Canonical text form: edges sorted by ``(min, max)`` endpoint pair."""
    lines = []
    if header:
        lines.extend("# " + h for h in header.splitlines())
    lines.append(str(g.n))
    items = [((u, v), f"{u} -> {v}") for u, v in g.arcs()]
    items += [((u, v), f"{u} -- {v}") for u, v in g.undirected_edges()]
    items.sort(key=lambda it: (min(it[0]), max(it[0])))
    lines.extend(text for _, text in items)
    return "\n".join(lines) + "\n"


def read_edgelist(path, cls=Pdag) -> Pdag:
    return parse_edgelist(Path(path).read_text(), cls=cls)


def read_dag(path) -> Dag:
    g = read_edgelist(path)
    return Dag.from_pdag(g)


def write_edgelist(g: Pdag, path, header: str | None = None) -> None:
    Path(path).write_text(format_edgelist(g, header))
