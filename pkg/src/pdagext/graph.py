"""Partially directed acyclic graphs backed by hashed neighbour sets.

Every vertex keeps three sets (parents, children, siblings) plus their union,
so adjacency tests, edge deletion and orientation are expected O(1) and
iterating a neighbourhood costs its size. Vertices are dense integer ids
``0..n-1``; removal only clears a liveness flag so ids stay stable.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import UsageError


class EdgeKind(enum.Enum):
    """Relation between an ordered vertex pair ``(u, v)``."""

    NONE = "none"
    ARC_FORWARD = "->"
    ARC_BACKWARD = "<-"
    UNDIRECTED = "--"


class Edge(NamedTuple):
    tail: int
    head: int
    directed: bool


@dataclass(frozen=True)
class DirectedCycle:
    """Witness returned by :meth:`Pdag.validate` for a cyclic arc set."""

    cycle: tuple[int, ...]


@dataclass(frozen=True)
class BrokenInvariant:
    """Witness returned by :meth:`Pdag.validate` for corrupted neighbour sets."""

    message: str


class Pdag:
    """Mixed graph with arcs ``u -> v`` and undirected edges ``u -- v``.

    Parameters
    ----------
    n : int
        Number of vertices. Vertex ids are ``0..n-1``.

    Examples
    --------
    >>> g = Pdag(3)
    >>> g.add_arc(0, 1)
    >>> g.add_edge(1, 2)
    >>> g.adjacency(1, 0)
    <EdgeKind.ARC_BACKWARD: '<-'>
    >>> sorted(g.si[1])
    [2]
    """

    def __init__(self, n: int):
        if n < 0:
            raise UsageError(f"vertex count must be non-negative, got {n}")
        self.n = n
        self.pa: list[set[int]] = [set() for _ in range(n)]
        self.ch: list[set[int]] = [set() for _ in range(n)]
        self.si: list[set[int]] = [set() for _ in range(n)]
        self.ne: list[set[int]] = [set() for _ in range(n)]
        self.alive = [True] * n

    @classmethod
    def from_edges(cls, n: int, arcs: Iterable = (), edges: Iterable = ()):
        g = cls(n)
        for u, v in arcs:
            g.add_arc(u, v)
        for u, v in edges:
            g.add_edge(u, v)
        return g

    # -- construction -----------------------------------------------------

    def _check_vertex(self, v: int) -> None:
        if not (isinstance(v, int) and 0 <= v < self.n):
            raise UsageError(f"vertex {v!r} out of range [0, {self.n})")
        if not self.alive[v]:
            raise UsageError(f"vertex {v} has been removed")

    def _check_new_pair(self, u: int, v: int) -> None:
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            raise UsageError(f"self-loop at vertex {u}")
        if v in self.ne[u]:
            raise UsageError(f"vertices {u} and {v} are already adjacent")

    def add_arc(self, u: int, v: int) -> None:
        """Insert the arc ``u -> v``. Acyclicity is not checked here."""
        self._check_new_pair(u, v)
        self.ch[u].add(v)
        self.pa[v].add(u)
        self.ne[u].add(v)
        self.ne[v].add(u)

    def add_edge(self, u: int, v: int) -> None:
        """Insert the undirected edge ``u -- v``."""
        self._check_new_pair(u, v)
        self.si[u].add(v)
        self.si[v].add(u)
        self.ne[u].add(v)
        self.ne[v].add(u)

    def orient(self, u: int, v: int) -> None:
        """Replace the undirected edge ``u -- v`` by ``u -> v``."""
        if v not in self.si[u]:
            raise UsageError(f"{u} -- {v} is not an undirected edge")
        self.si[u].discard(v)
        self.si[v].discard(u)
        self.ch[u].add(v)
        self.pa[v].add(u)

    def copy(self, cls=None):
        """Deep copy; ``cls`` re-types the copy without any checks."""
        g = (cls or type(self)).__new__(cls or type(self))
        g.n = self.n
        g.pa = [set(s) for s in self.pa]
        g.ch = [set(s) for s in self.ch]
        g.si = [set(s) for s in self.si]
        g.ne = [set(s) for s in self.ne]
        g.alive = list(self.alive)
        return g

    # -- queries ----------------------------------------------------------

    def adjacency(self, u: int, v: int) -> EdgeKind:
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            raise UsageError(f"adjacency query on identical vertices {u}")
        if v in self.ch[u]:
            return EdgeKind.ARC_FORWARD
        if v in self.pa[u]:
            return EdgeKind.ARC_BACKWARD
        if v in self.si[u]:
            return EdgeKind.UNDIRECTED
        return EdgeKind.NONE

    def is_adjacent(self, u: int, v: int) -> bool:
        return v in self.ne[u]

    def neighborhood(self, v: int) -> tuple[set[int], set[int], set[int]]:
        """Return copies of ``(parents, children, siblings)`` of ``v``."""
        self._check_vertex(v)
        return set(self.pa[v]), set(self.ch[v]), set(self.si[v])

    def degree(self, v: int) -> int:
        return len(self.ne[v])

    def vertices(self) -> list[int]:
        return [v for v in range(self.n) if self.alive[v]]

    def arcs(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u in range(self.n) for v in self.ch[u])

    def undirected_edges(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u in range(self.n) for v in self.si[u] if u < v)

    def skeleton(self) -> set[frozenset]:
        return {frozenset((u, v)) for u in range(self.n) for v in self.ne[u]}

    def num_edges(self) -> int:
        return sum(len(s) for s in self.ne) // 2

    def is_potential_sink(self, v: int) -> bool:
        """True iff ``v`` has no children and each sibling is adjacent to
        every other neighbour of ``v``."""
        self._check_vertex(v)
        return potential_sink_tests(self, v)[0]

    def v_structures(self) -> set[tuple[int, int, int]]:
        """All ``(u, v, w)`` with ``u -> v <- w``, ``u`` not adjacent to ``w`` and ``u < w``."""
        found = set()
        for v in range(self.n):
            parents = sorted(self.pa[v])
            for i, u in enumerate(parents):
                nu = self.ne[u]
                for w in parents[i + 1:]:
                    if w not in nu:
                        found.add((u, v, w))
        return found

    # -- mutation ---------------------------------------------------------

    def remove_vertex(self, v: int) -> set[Edge]:
        """Delete ``v`` and its incident edges; return the deleted edges."""
        self._check_vertex(v)
        removed = {Edge(u, v, True) for u in self.pa[v]}
        removed.update(Edge(v, u, True) for u in self.ch[v])
        removed.update(Edge(min(u, v), max(u, v), False) for u in self.si[v])
        self.detach(v)
        return removed

    def detach(self, v: int) -> None:
        """Unchecked fast path of :meth:`remove_vertex`; returns nothing."""
        for u in self.pa[v]:
            self.ch[u].discard(v)
        for u in self.ch[v]:
            self.pa[u].discard(v)
        for u in self.si[v]:
            self.si[u].discard(v)
        for u in self.ne[v]:
            self.ne[u].discard(v)
        self.pa[v] = set()
        self.ch[v] = set()
        self.si[v] = set()
        self.ne[v] = set()
        self.alive[v] = False

    # -- validation -------------------------------------------------------

    def find_cycle(self) -> list[int] | None:
        """Return one directed cycle among the arcs, or ``None``."""
        white, grey, black = 0, 1, 2
        colour = [white] * self.n
        for root in range(self.n):
            if colour[root] != white:
                continue
            colour[root] = grey
            path = [root]
            stack = [iter(sorted(self.ch[root]))]
            while stack:
                nxt = next(stack[-1], None)
                if nxt is None:
                    colour[path.pop()] = black
                    stack.pop()
                elif colour[nxt] == grey:
                    cycle = path[path.index(nxt):]
                    k = cycle.index(min(cycle))
                    return cycle[k:] + cycle[:k]
                elif colour[nxt] == white:
                    colour[nxt] = grey
                    path.append(nxt)
                    stack.append(iter(sorted(self.ch[nxt])))
        return None

    def validate(self) -> DirectedCycle | BrokenInvariant | None:
        """Check symmetry, disjointness and arc acyclicity.

        Returns ``None`` when the graph is a valid PDAG, otherwise a witness
        describing the first violation found.
        """
        for v in range(self.n):
            pa, ch, si = self.pa[v], self.ch[v], self.si[v]
            if pa & ch or pa & si or ch & si:
                return BrokenInvariant(f"neighbour sets of {v} overlap")
            if v in self.ne[v]:
                return BrokenInvariant(f"self-loop at {v}")
            if self.ne[v] != pa | ch | si:
                return BrokenInvariant(f"neighbour union of {v} is stale")
            if not self.alive[v] and self.ne[v]:
                return BrokenInvariant(f"removed vertex {v} still has edges")
            for u in pa:
                if v not in self.ch[u]:
                    return BrokenInvariant(f"parent {u} of {v} lacks child entry")
            for u in ch:
                if v not in self.pa[u]:
                    return BrokenInvariant(f"child {u} of {v} lacks parent entry")
            for u in si:
                if v not in self.si[u]:
                    return BrokenInvariant(f"sibling relation {u}--{v} is one-sided")
        cycle = self.find_cycle()
        if cycle is not None:
            return DirectedCycle(tuple(cycle))
        return None

    def topological_order(self) -> list[int]:
        """Kahn order over alive vertices, smallest id first among ties."""
        import heapq

        indeg = [len(self.pa[v]) for v in range(self.n)]
        heap = [v for v in range(self.n) if self.alive[v] and indeg[v] == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            v = heapq.heappop(heap)
            order.append(v)
            for w in self.ch[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    heapq.heappush(heap, w)
        if len(order) != sum(self.alive):
            raise UsageError("arcs contain a directed cycle")
        return order

    # -- dunder -----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Pdag):
            return NotImplemented
        return (
            self.n == other.n
            and self.alive == other.alive
            and self.ch == other.ch
            and self.si == other.si
        )

    def __repr__(self):
        return (
            f"{type(self).__name__}(n={self.n}, arcs={self.arcs()}, "
            f"edges={self.undirected_edges()})"
        )


class Dag(Pdag):
    """A PDAG without undirected edges.

    ``order`` optionally caches a topological order; it is filled by the
    extension algorithms and by :meth:`topological_order`.
    """

    def __init__(self, n: int):
        super().__init__(n)
        self.order: list[int] | None = None

    def add_edge(self, u, v):
        raise UsageError("a Dag cannot hold undirected edges")

    def orient(self, u, v):
        raise UsageError("a Dag has no undirected edges to orient")

    def copy(self, cls=None):
        d = super().copy(cls)
        d.order = None if self.order is None else list(self.order)
        return d

    @classmethod
    def from_pdag(cls, g: Pdag) -> "Dag":
        if any(g.si[v] for v in range(g.n)):
            raise UsageError("graph still has undirected edges")
        d = cls.from_edges(g.n, arcs=g.arcs())
        if d.find_cycle() is not None:
            raise UsageError("arcs contain a directed cycle")
        return d

    def topological_order(self) -> list[int]:
        if self.order is None:
            self.order = super().topological_order()
        return list(self.order)


def potential_sink_tests(g: Pdag, v: int) -> tuple[bool, int]:
    """Potential-sink check returning ``(verdict, adjacency_tests)``.

    Each unordered pair made of a sibling and another neighbour is tested at
    most once; the scan stops at the first non-adjacent pair.
    """
    if g.ch[v]:
        return False, 0
    sibs = list(g.si[v])
    parents = g.pa[v]
    ne = g.ne
    tests = 0
    for i, y in enumerate(sibs):
        ny = ne[y]
        for j in range(i + 1, len(sibs)):
            tests += 1
            if sibs[j] not in ny:
                return False, tests
        for x in parents:
            tests += 1
            if x not in ny:
                return False, tests
    return True, tests
