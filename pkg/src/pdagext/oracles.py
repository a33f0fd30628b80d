"""Exhaustive reference implementations used to validate the fast algorithms.

These work from plain edge lists with their own adjacency bookkeeping and
share no code with the elimination or Meek-rule implementations. They
enumerate orientations of the undirected edges depth-first in a fixed order
(edge list sorted, ``u -> v`` before ``v -> u`` for ``u < v``), pruning a
branch as soon as it closes a directed cycle, creates a v-structure that is
not in the target set, or reverses an arc that a target v-structure needs.
Pruning never removes a valid completion, so the enumeration order of the
survivors is that of the full ``2**k`` product.
"""

from __future__ import annotations

from typing import Iterator

from .errors import InvalidInput, UsageError
from .graph import Dag, Pdag

MAX_FREE_EDGES = 20


def _vstructs(n, arcs, adj):
    parents = [[] for _ in range(n)]
    for u, v in arcs:
        parents[v].append(u)
    out = set()
    for v in range(n):
        ps = sorted(parents[v])
        for i, a in enumerate(ps):
            for b in ps[i + 1:]:
                if b not in adj[a]:
                    out.add((a, v, b))
    return out


def consistent_orientations(
    n: int, fixed_arcs, free_edges, target
) -> Iterator[list[tuple[int, int]]]:
    """Yield every acyclic orientation of ``free_edges`` whose v-structures,
    together with ``fixed_arcs``, are exactly ``target``."""
    free_edges = sorted((min(e), max(e)) for e in free_edges)
    if len(free_edges) > MAX_FREE_EDGES:
        raise UsageError(
            f"{len(free_edges)} undirected edges exceed the enumeration guard "
            f"of {MAX_FREE_EDGES}"
        )
    fixed_arcs = list(fixed_arcs)
    adj = [set() for _ in range(n)]
    for u, v in fixed_arcs + free_edges:
        adj[u].add(v)
        adj[v].add(u)
    required = set()
    for a, c, b in target:
        required.add((a, c))
        required.add((b, c))
    parents = [set() for _ in range(n)]
    children = [set() for _ in range(n)]
    for u, v in fixed_arcs:
        parents[v].add(u)
        children[u].add(v)

    def reaches(src, dst):
        stack, seen = [src], {src}
        while stack:
            x = stack.pop()
            if x == dst:
                return True
            for y in children[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return False

    def admissible(u, v):
        if (v, u) in required:
            return False
        if reaches(v, u):
            return False
        for w in parents[v]:
            if w not in adj[u] and (min(u, w), v, max(u, w)) not in target:
                return False
        return True

    chosen = []

    def walk(i):
        if i == len(free_edges):
            arcs = fixed_arcs + chosen
            if _vstructs(n, arcs, adj) == target:
                yield list(arcs)
            return
        a, b = free_edges[i]
        for u, v in ((a, b), (b, a)):
            if admissible(u, v):
                parents[v].add(u)
                children[u].add(v)
                chosen.append((u, v))
                yield from walk(i + 1)
                chosen.pop()
                parents[v].discard(u)
                children[u].discard(v)

    yield from walk(0)


def _pdag_parts(g: Pdag):
    arcs = g.arcs()
    edges = g.undirected_edges()
    adj = [set() for _ in range(g.n)]
    for u, v in arcs + edges:
        adj[u].add(v)
        adj[v].add(u)
    return arcs, edges, _vstructs(g.n, arcs, adj)


def all_consistent_extensions(g: Pdag) -> Iterator[list[tuple[int, int]]]:
    arcs, edges, target = _pdag_parts(g)
    return consistent_orientations(g.n, arcs, edges, target)


def brute_force_extend(g: Pdag, *, check_input: bool = True):
    """Return the first consistent extension in enumeration order."""
    from .extension import ExtensionOutcome

    for arcs in all_consistent_extensions(g):
        d = Dag.from_edges(g.n, arcs=arcs)
        d.order = d.topological_order()
        return ExtensionOutcome(d, d.order[::-1])
    return ExtensionOutcome(None, None)


def _common_orientation(n, skeleton, extensions) -> Pdag:
    seen = {e: set() for e in skeleton}
    count = 0
    for arcs in extensions:
        count += 1
        for u, v in arcs:
            seen[(min(u, v), max(u, v))].add((u, v))
    if count == 0:
        raise InvalidInput("graph has no consistent extension")
    out = Pdag(n)
    for e in sorted(skeleton):
        dirs = seen[e]
        if len(dirs) == 1:
            out.add_arc(*next(iter(dirs)))
        else:
            out.add_edge(*e)
    return out


def brute_force_mpdag(g: Pdag) -> Pdag:
    """Edge ``u -> v`` is directed iff it points that way in every extension."""
    arcs, edges, _ = _pdag_parts(g)
    skeleton = [(min(u, v), max(u, v)) for u, v in arcs] + edges
    return _common_orientation(g.n, skeleton, all_consistent_extensions(g))


def brute_force_cpdag(d: Pdag) -> Pdag:
    """Essential graph of ``d`` by enumerating its Markov equivalence class."""
    if any(d.si[v] for v in range(d.n)):
        raise UsageError("brute_force_cpdag expects a DAG")
    arcs = d.arcs()
    adj = [set() for _ in range(d.n)]
    for u, v in arcs:
        adj[u].add(v)
        adj[v].add(u)
    target = _vstructs(d.n, arcs, adj)
    skeleton = [(min(u, v), max(u, v)) for u, v in arcs]
    return _common_orientation(
        d.n, skeleton, consistent_orientations(d.n, [], skeleton, target)
    )
