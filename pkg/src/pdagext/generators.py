"""Seeded instance generators.

All randomness flows from ``numpy.random.Generator(PCG64(seed))``, so a
config (seed included) always reproduces the same graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import networkx as nx
import numpy as np

from .errors import UsageError
from .graph import Dag, Pdag

EDGE_RULES = ("3n", "5n", "nlogn", "nsqrtn")
STYLES = ("uniform", "scale_free", "chordal", "dth_worst_case")


@dataclass(frozen=True)
class GeneratorConfig:
    """Parameters of one generated instance.

    ``edges`` is one of ``EDGE_RULES`` or an explicit edge count. ``k`` is the
    mean subtree size for ``chordal`` (a number, ``"log2n"`` or ``"sqrtn"``)
    and the scale for ``dth_worst_case``.
    """

    n: int
    edges: str | int = "3n"
    style: str = "uniform"
    k: float | str | None = None
    seed: int = 0
    background_arcs: tuple[int, int] = (2, 5)

    def __post_init__(self):
        if self.style not in STYLES:
            raise UsageError(f"unknown style {self.style!r}")
        if self.n < 0:
            raise UsageError("n must be non-negative")
        lo, hi = self.background_arcs
        if not 0 <= lo <= hi:
            raise UsageError(f"bad background arc range {self.background_arcs}")

    def edge_count(self) -> int:
        n = self.n
        rule = self.edges
        if isinstance(rule, (int, np.integer)):
            m = int(rule)
        elif rule == "3n":
            m = 3 * n
        elif rule == "5n":
            m = 5 * n
        elif rule == "nlogn":
            m = n * math.ceil(math.log2(n)) if n > 1 else 0
        elif rule == "nsqrtn":
            m = n * math.ceil(math.sqrt(n))
        else:
            try:
                m = int(rule)
            except (TypeError, ValueError):
                raise UsageError(f"unknown edge rule {rule!r}") from None
        if not 0 <= m <= n * (n - 1) // 2:
            raise UsageError(f"edge count {m} impossible on {n} vertices")
        return m

    def mean_subtree_size(self) -> float:
        k = self.k
        if k is None:
            raise UsageError("chordal style needs k")
        if k == "log2n":
            k = math.log2(self.n) if self.n > 1 else 1.0
        elif k == "sqrtn":
            k = math.sqrt(self.n)
        k = float(k)
        if k < 1:
            raise UsageError(f"k must be >= 1, got {k}")
        return k

    def describe(self) -> str:
        return (
            f"n={self.n} edges={self.edges} style={self.style} k={self.k} "
            f"seed={self.seed} background_arcs={self.background_arcs[0]}..{self.background_arcs[1]}"
        )


def _pair(idx: np.ndarray) -> np.ndarray:
    """Decode linear indices into pairs ``(i, j)``, ``i < j``, ordered by ``j``."""
    j = np.floor((1 + np.sqrt(1 + 8 * idx.astype(np.float64))) / 2).astype(np.int64)
    j -= (j * (j - 1) // 2) > idx
    j += ((j + 1) * j // 2) <= idx
    i = idx - j * (j - 1) // 2
    return np.stack([i, j], axis=1)


def _uniform_edges(n: int, m: int, rng: np.random.Generator) -> list[tuple[int, int]]:
    total = n * (n - 1) // 2
    if m == 0:
        return []
    idx = rng.choice(total, size=m, replace=False)
    return [tuple(map(int, p)) for p in _pair(np.sort(idx))]


def _scale_free_edges(n: int, m: int, rng: np.random.Generator) -> list[tuple[int, int]]:
    if m == 0 or n < 2:
        return []
    attach = min(max(1, math.ceil(m / n)), n - 1)
    ba = nx.barabasi_albert_graph(n, attach, seed=int(rng.integers(2**32)))
    edges = sorted((min(u, v), max(u, v)) for u, v in ba.edges())
    if len(edges) > m:
        drop = set(rng.choice(len(edges), size=len(edges) - m, replace=False).tolist())
        edges = [e for i, e in enumerate(edges) if i not in drop]
    present = set(edges)
    while len(present) < m:
        u, v = (int(x) for x in rng.integers(n, size=2))
        if u != v:
            present.add((min(u, v), max(u, v)))
    return sorted(present)


def random_pdag_with_dag(cfg: GeneratorConfig) -> tuple[Pdag, Dag]:
    """Random extendable PDAG together with the DAG it was derived from.

    A random skeleton is oriented along a random vertex permutation, arcs not
    taking part in any v-structure are made undirected, then between
    ``background_arcs`` randomly chosen undirected edges are re-oriented as
    in the DAG.
    """
    if cfg.style not in ("uniform", "scale_free"):
        raise UsageError(f"random_pdag does not produce style {cfg.style!r}")
    n, m = cfg.n, cfg.edge_count()
    rng = np.random.default_rng(cfg.seed)
    if cfg.style == "uniform":
        skeleton = _uniform_edges(n, m, rng)
    else:
        skeleton = _scale_free_edges(n, m, rng)
    rank = np.empty(n, dtype=np.int64)
    rank[rng.permutation(n)] = np.arange(n)
    arcs = [(u, v) if rank[u] < rank[v] else (v, u) for u, v in skeleton]
    dag = Dag.from_edges(n, arcs=arcs)
    dag.order = [int(v) for v in np.argsort(rank, kind="stable")]

    keep = set()
    for v in range(n):
        pa = dag.pa[v]
        if len(pa) < 2:
            continue
        for u in pa:
            if len(pa & dag.ne[u]) < len(pa) - 1:
                keep.add((u, v))
    free = sorted(a for a in arcs if a not in keep)
    lo, hi = cfg.background_arcs
    count = min(int(rng.integers(lo, hi + 1)), len(free))
    if count:
        keep.update(free[i] for i in rng.choice(len(free), size=count, replace=False))
    g = Pdag(n)
    for u, v in sorted(arcs):
        if (u, v) in keep:
            g.add_arc(u, v)
        else:
            g.add_edge(u, v)
    return g, dag


def random_pdag(cfg: GeneratorConfig) -> Pdag:
    return random_pdag_with_dag(cfg)[0]


def _random_tree(n: int, rng: np.random.Generator) -> list[list[int]]:
    adj = [[] for _ in range(n)]
    if n == 2:
        adj[0].append(1)
        adj[1].append(0)
    elif n > 2:
        tree = nx.from_prufer_sequence(rng.integers(n, size=n - 2).tolist())
        for u, v in tree.edges():
            adj[u].append(v)
            adj[v].append(u)
    return [sorted(a) for a in adj]


def chordal_graph(cfg: GeneratorConfig) -> Pdag:
    """Undirected chordal graph from random subtree intersections.

    Each vertex owns a random subtree of a uniformly random tree; sizes are
    geometric with mean ``k`` clamped to ``[1, n]`` (``k >= n`` means every
    subtree is the whole tree). Vertices whose subtrees meet are adjacent.
    """
    n = cfg.n
    k = cfg.mean_subtree_size()
    rng = np.random.default_rng(cfg.seed)
    tree = _random_tree(n, rng)
    holders = [[] for _ in range(n)]
    for owner in range(n):
        size = n if k >= n else min(n, int(rng.geometric(1.0 / k)))
        root = int(rng.integers(n))
        members = {root}
        frontier = list(tree[root])
        while len(members) < size:
            i = int(rng.integers(len(frontier)))
            x = frontier[i]
            frontier[i] = frontier[-1]
            frontier.pop()
            members.add(x)
            frontier.extend(y for y in tree[x] if y not in members)
        for t in members:
            holders[t].append(owner)
    pairs = set()
    for hs in holders:
        for i, a in enumerate(hs):
            for b in hs[i + 1:]:
                pairs.add((a, b) if a < b else (b, a))
    return Pdag.from_edges(n, edges=sorted(pairs))


def dth_worst_case(k: int) -> Pdag:
    """Fully undirected family on ``5k + 2`` vertices that defeats the degree order.

    Ids: clique ``C_v`` is ``0..2k-1``, clique ``C_w`` is ``2k..4k-1``, clique
    ``C_vw`` is ``4k..5k-1``, then ``v = 5k`` and ``w = 5k + 1``. ``v`` is
    joined to ``C_v`` and ``C_vw``, ``w`` to ``C_w`` and ``C_vw``; ``v`` and
    ``w`` are not adjacent.
    """
    if k < 1:
        raise UsageError("k must be >= 1")
    cv = range(0, 2 * k)
    cw = range(2 * k, 4 * k)
    cvw = range(4 * k, 5 * k)
    v, w = 5 * k, 5 * k + 1
    edges = []
    for clique in (cv, cw, cvw):
        edges.extend((a, b) for a in clique for b in clique if a < b)
    edges.extend((x, v) for x in (*cv, *cvw))
    edges.extend((x, w) for x in (*cw, *cvw))
    return Pdag.from_edges(5 * k + 2, edges=edges)


def dth_worst_case_edge_count(k: int) -> int:
    return 2 * math.comb(2 * k, 2) + math.comb(k, 2) + 2 * (2 * k + k)


def is_chordal(g: Pdag) -> bool:
    """Maximum cardinality search followed by a perfect-elimination check.

    Only the skeleton is inspected.
    """
    verts = g.vertices()
    weight = {v: 0 for v in verts}
    visited = []
    index = {}
    while weight:
        v = max(weight, key=lambda x: (weight[x], -x))
        del weight[v]
        index[v] = len(visited)
        visited.append(v)
        for u in g.ne[v]:
            if u in weight:
                weight[u] += 1
    # earlier-visited neighbours of v, minus the latest of them, must all be
    # adjacent to that latest one
    for v in visited:
        earlier = [u for u in g.ne[v] if index[u] < index[v]]
        if len(earlier) < 2:
            continue
        p = max(earlier, key=index.__getitem__)
        np_ = g.ne[p]
        if any(u != p and u not in np_ for u in earlier):
            return False
    return True


def generate(cfg: GeneratorConfig) -> Pdag:
    """Dispatch on ``cfg.style``."""
    if cfg.style in ("uniform", "scale_free"):
        return random_pdag(cfg)
    if cfg.style == "chordal":
        return chordal_graph(cfg)
    if cfg.k is None:
        raise UsageError("dth_worst_case needs k")
    return dth_worst_case(int(cfg.k))
