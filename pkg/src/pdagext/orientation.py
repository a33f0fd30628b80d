"""Maximal orientation (MPDAG) of extendable PDAGs.

Rule patterns, with the oriented edge named ``a -> b`` except in R3 where it
is ``a -> c``:

R1  ``a -> b -- c``, ``a`` and ``c`` non-adjacent            gives ``b -> c``
R2  ``a -> b -> c``, ``a -- c``                              gives ``a -> c``
R3  ``a -- b -> c``, ``a -- d -> c``, ``a -- c``, ``b``, ``d`` non-adjacent
                                                           gives ``a -> c``
R4  ``d -> c -> b``, ``a -- b``, ``a -- c``, ``a -- d``, ``b``, ``d`` non-adjacent
                                                           gives ``a -> b``

Three ways of reaching the fixpoint are offered: :func:`direct_meek_naive`
rescans the whole graph rule by rule until nothing changes,
:func:`direct_meek` runs a worklist over candidate edges, and
:func:`maximal_orientation_ce` goes through a consistent extension and its
essential graph.
"""

from __future__ import annotations

import hashlib
import heapq
import time
from collections import deque
from dataclasses import dataclass, field

from .edgelist import format_edgelist
from .errors import InvalidInput, InvariantBreach, UsageError
from .extension import get_extender
from .graph import Dag, Pdag


@dataclass(frozen=True)
class RuleApplication:
    rule: int
    tail: int
    head: int
    witnesses: tuple[int, ...]

    def __str__(self):
        return f"R{self.rule} {self.tail}->{self.head} witnesses: " + ",".join(
            map(str, self.witnesses)
        )


@dataclass
class OrientationTrace:
    initial_hash: str
    applications: list[RuleApplication] = field(default_factory=list)
    final: Pdag | None = None

    def dump(self) -> str:
        return "".join(f"{a}\n" for a in self.applications)

    def replay(self, initial: Pdag) -> Pdag:
        """Re-apply the recorded orientations to a copy of ``initial``."""
        if graph_hash(initial) != self.initial_hash:
            raise UsageError("trace was recorded on a different graph")
        g = initial.copy()
        for app in self.applications:
            g.orient(app.tail, app.head)
        return g


@dataclass
class PhaseTimings:
    """Wall-clock split of the extension-based pipeline, in microseconds."""

    extension_us: float
    cpdag_us: float
    meek_us: float
    max_requeue: int = 0
    adj_tests: int = 0
    ps_checks: int = 0

    @property
    def total_us(self) -> float:
        return self.extension_us + self.cpdag_us + self.meek_us


def graph_hash(g: Pdag) -> str:
    return hashlib.sha256(format_edgelist(g).encode()).hexdigest()[:16]


# -- rule premises for a single candidate orientation u -> v -------------------


def _r1(g, u, v):
    nv = g.ne[v]
    for a in g.pa[u]:
        if a not in nv:
            return (a,)
    return None


def _r2(g, u, v):
    mid = g.ch[u] & g.pa[v]
    if mid:
        return (min(mid),)
    return None


def _r3(g, u, v):
    cand = sorted(g.si[u] & g.pa[v])
    for i, b in enumerate(cand):
        nb = g.ne[b]
        for d in cand[i + 1:]:
            if d not in nb:
                return (b, d)
    return None


def _r4(g, u, v):
    su, nv = g.si[u], g.ne[v]
    for c in sorted(g.pa[v] & su):
        for d in sorted(g.pa[c] & su):
            if d not in nv:
                return (c, d)
    return None


_RULES = ((1, _r1), (2, _r2), (3, _r3), (4, _r4))


def forced_orientation(g: Pdag, u: int, v: int):
    """First rule, in order R1..R4, that orients the undirected edge ``u -- v``.

    Returns ``(rule, tail, head, witnesses)`` or ``None``.
    """
    for k, rule in _RULES:
        w = rule(g, u, v)
        if w is not None:
            return k, u, v, w
        w = rule(g, v, u)
        if w is not None:
            return k, v, u, w
    return None


def applicable_rules(g: Pdag) -> list[RuleApplication]:
    """Every rule instance that would orient some undirected edge of ``g``."""
    found = []
    for u, v in g.undirected_edges():
        for tail, head in ((u, v), (v, u)):
            for k, rule in _RULES:
                w = rule(g, tail, head)
                if w is not None:
                    found.append(RuleApplication(k, tail, head, w))
    return found


def _affected(g: Pdag, x: int, y: int):
    """Undirected edges whose rule premises may have become true after ``x -> y``."""
    for z in g.si[x]:
        yield (x, z) if x < z else (z, x)
    for z in g.si[y]:
        yield (y, z) if y < z else (z, y)
    sy = g.si[y]
    for b in g.ch[y]:
        for a in g.si[b]:
            if a in sy:
                yield (a, b) if a < b else (b, a)


def _check_acyclic(g: Pdag) -> None:
    cycle = g.find_cycle()
    if cycle is not None:
        raise InvalidInput(f"orientation produced the directed cycle {cycle}; input is not extendable")


def _close(g: Pdag, seeds, trace: OrientationTrace, priority=None) -> int:
    """Run rules to fixpoint over a worklist of candidate edges.

    With ``priority`` (a per-vertex rank) edges are popped in ascending
    ``(max rank, min rank)`` order instead of FIFO. Returns the largest
    number of times any single edge was enqueued.
    """
    pushes: dict[tuple[int, int], int] = {}
    queued = set()
    if priority is None:
        work = deque()

        def push(e):
            if e not in queued:
                queued.add(e)
                pushes[e] = pushes.get(e, 0) + 1
                work.append(e)

        pop = work.popleft
    else:
        work = []

        def push(e):
            if e not in queued:
                queued.add(e)
                pushes[e] = pushes.get(e, 0) + 1
                a, b = priority[e[0]], priority[e[1]]
                heapq.heappush(work, ((a, b) if a > b else (b, a), e))

        def pop():
            return heapq.heappop(work)[1]

    for e in seeds:
        push(e)
    while work:
        e = pop()
        queued.discard(e)
        u, v = e
        if v not in g.si[u]:
            continue
        hit = forced_orientation(g, u, v)
        if hit is None:
            continue
        k, tail, head, w = hit
        for kk, rule in _RULES:
            if rule(g, head, tail) is not None:
                raise InvalidInput(
                    f"R{k} orients {tail}->{head} but R{kk} orients {head}->{tail}; "
                    "input is not extendable"
                )
        g.orient(tail, head)
        trace.applications.append(RuleApplication(k, tail, head, w))
        for f in _affected(g, tail, head):
            push(f)
    return max(pushes.values(), default=0)


def direct_meek(g: Pdag, *, trace: bool = True) -> tuple[Pdag, OrientationTrace]:
    """Meek closure driven by a worklist of undirected edges.

    The queue starts with every undirected edge touching an arc; orienting
    ``x -> y`` re-enqueues the edges whose premises that arc can complete.
    ``trace=False`` skips hashing the input (the applications are still kept).
    """
    out = g.copy()
    log = OrientationTrace(graph_hash(g) if trace else "")
    seeds = [
        (u, v)
        for u, v in g.undirected_edges()
        if g.pa[u] or g.ch[u] or g.pa[v] or g.ch[v]
    ]
    _close(out, seeds, log)
    _check_acyclic(out)
    log.final = out
    return out, log


def direct_meek_naive(g: Pdag, *, trace: bool = True) -> tuple[Pdag, OrientationTrace]:
    """Meek closure by full rescans: apply R1, R2, R3, R4 over the whole
    graph in turn, repeat until a complete round orients nothing."""
    out = g.copy()
    log = OrientationTrace(graph_hash(g) if trace else "")
    pa, ch, si, ne = out.pa, out.ch, out.si, out.ne
    apps = log.applications
    n = out.n
    changed = True
    while changed:
        changed = False
        # R1: a -> b -- c, a !~ c
        for b in range(n):
            for a in list(pa[b]):
                for c in list(si[b]):
                    if c not in ne[a]:
                        out.orient(b, c)
                        apps.append(RuleApplication(1, b, c, (a,)))
                        changed = True
        # R2: a -> b -> c, a -- c
        for b in range(n):
            for a in list(pa[b]):
                for c in list(ch[b]):
                    if c in si[a]:
                        out.orient(a, c)
                        apps.append(RuleApplication(2, a, c, (b,)))
                        changed = True
        # R3: a -- b -> c, a -- d -> c, b !~ d, a -- c
        for a in range(n):
            for c in list(si[a]):
                if c not in si[a]:
                    continue
                cand = sorted(si[a] & pa[c])
                hit = next(
                    ((b, d) for i, b in enumerate(cand) for d in cand[i + 1:] if d not in ne[b]),
                    None,
                )
                if hit is not None:
                    out.orient(a, c)
                    apps.append(RuleApplication(3, a, c, hit))
                    changed = True
        # R4: d -> c -> b, a -- b, a -- c, a -- d, b !~ d
        for a in range(n):
            for b in list(si[a]):
                if b not in si[a]:
                    continue
                hit = next(
                    (
                        (c, d)
                        for c in sorted(pa[b] & si[a])
                        for d in sorted(pa[c] & si[a])
                        if d not in ne[b]
                    ),
                    None,
                )
                if hit is not None:
                    out.orient(a, b)
                    apps.append(RuleApplication(4, a, b, hit))
                    changed = True
    _check_acyclic(out)
    log.final = out
    return out, log


def dag_to_cpdag(d: Pdag) -> Pdag:
    """Essential graph of ``d`` via compelled/reversible edge labelling.

    Vertices are visited in topological order and the arcs into each vertex
    from its latest parent down. The first arc processed for a vertex
    decides the labels of all still-unlabelled arcs into it.
    """
    if any(d.si[v] for v in range(d.n)):
        raise UsageError("dag_to_cpdag expects a DAG")
    out = Pdag.copy(d, Pdag)
    _unorient_reversible(out, d)
    return out


def _unorient_reversible(out: Pdag, d: Pdag) -> None:
    """Turn every reversible arc of DAG ``d`` into an undirected edge of ``out``."""
    if isinstance(d, Dag) and d.order is not None:
        order = d.order
    else:
        order = Pdag.topological_order(d)
    pos = [0] * d.n
    for i, v in enumerate(order):
        pos[v] = i
    compelled: dict[tuple[int, int], bool] = {}
    pa = d.pa
    for y in order:
        py = pa[y]
        if not py:
            continue
        for x in sorted(py, key=pos.__getitem__, reverse=True):
            if (x, y) in compelled:
                continue
            done = False
            for w in pa[x]:
                if not compelled[(w, x)]:
                    continue
                if w not in py:
                    for z in py:
                        compelled[(z, y)] = True
                    done = True
                    break
                compelled[(w, y)] = True
            if done:
                continue
            px = pa[x]
            label = any(z != x and z not in px for z in py)
            for z in py:
                if (z, y) not in compelled:
                    compelled[(z, y)] = label
    for (x, y), c in compelled.items():
        if not c:
            out.ch[x].discard(y)
            out.pa[y].discard(x)
            out.si[x].add(y)
            out.si[y].add(x)


def maximal_orientation_ce(
    g: Pdag, extender: str = "dtic", *, check: bool = False, check_input: bool = True
) -> tuple[Pdag, PhaseTimings]:
    """MPDAG through a consistent extension.

    Phases: (i) extend ``g`` to a DAG, (ii) take the essential graph of that
    DAG, (iii) put back the arcs of ``g`` the essential graph left undirected
    and close under the rules, popping edges in the extension's topological
    order. With ``check=True`` the result is compared against
    :func:`direct_meek`.
    """
    extend = get_extender(extender)
    t0 = time.perf_counter_ns()
    outcome = extend(g, check_input=check_input)
    t1 = time.perf_counter_ns()
    if not outcome:
        raise InvalidInput("graph has no consistent extension")
    dag = outcome.dag
    order = dag.order
    # the extension is private to this call, so it becomes the CPDAG in place
    _unorient_reversible(dag, dag)
    cp = dag
    cp.__class__ = Pdag
    del cp.order
    t2 = time.perf_counter_ns()
    rank = [0] * g.n
    for i, v in enumerate(order):
        rank[v] = i
    trace = OrientationTrace("")
    seeds = []
    gch = g.ch
    for u, v in cp.undirected_edges():
        if v in gch[u]:
            cp.orient(u, v)
        elif u in gch[v]:
            cp.orient(v, u)
        else:
            continue
        seeds.extend(_affected(cp, u, v) if v in cp.ch[u] else _affected(cp, v, u))
    requeue = _close(cp, seeds, trace, priority=rank)
    t3 = time.perf_counter_ns()
    timings = PhaseTimings(
        (t1 - t0) / 1000,
        (t2 - t1) / 1000,
        (t3 - t2) / 1000,
        requeue,
        outcome.adj_tests,
        outcome.ps_checks,
    )
    if check:
        expected, _ = direct_meek(g, trace=False)
        if cp != expected:
            raise InvariantBreach("extension-based orientation disagrees with direct closure")
    return cp, timings


METHODS = {
    "direct": direct_meek_naive,
    "direct-worklist": direct_meek,
}
