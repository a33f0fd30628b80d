"""Consistent DAG extension of PDAGs.

Three variants of the potential-sink elimination scheme are provided:

``extend_dt``
    Scan alive vertices by ascending id each round, stop at the first
    potential-sink.
``extend_dth``
    Same, but scan in ascending current degree (ties by id).
``extend_dtic``
    Degree-ordered scan that inspects each neighbourhood at most once and
    afterwards only maintains the set of violating neighbour pairs.

All three return an :class:`ExtensionOutcome`; a falsy outcome means the
input has no consistent extension.
"""

from __future__ import annotations

from bisect import bisect_left, insort
from dataclasses import dataclass, field
from typing import Callable

from .errors import UsageError
from .graph import Dag, Pdag, potential_sink_tests


@dataclass
class ExtensionOutcome:
    """Result of an extension call.

    ``dag`` and ``elimination_order`` are ``None`` when the input is not
    extendable. The elimination order lists potential-sinks in removal order,
    so its reverse is a topological order of ``dag``.
    """

    dag: Dag | None
    elimination_order: list[int] | None
    adj_tests: int = 0
    ps_checks: int = 0

    @property
    def extendable(self) -> bool:
        return self.dag is not None

    def __bool__(self):
        return self.extendable


class DegreeBuckets:
    """Alive vertices bucketed by current degree, each bucket sorted by id.

    Iteration yields vertices by ascending ``(degree, id)``. Mutating while
    an iterator is live is not supported; callers break out first.
    """

    def __init__(self, g: Pdag):
        self.degree = [len(g.ne[v]) for v in range(g.n)]
        top = max(self.degree, default=0)
        self.buckets: list[list[int]] = [[] for _ in range(top + 1)]
        for v in range(g.n):
            if g.alive[v]:
                self.buckets[self.degree[v]].append(v)
        self.lo = 0

    def decrement(self, v: int) -> None:
        d = self.degree[v]
        bucket = self.buckets[d]
        del bucket[bisect_left(bucket, v)]
        self.degree[v] = d - 1
        insort(self.buckets[d - 1], v)
        if d - 1 < self.lo:
            self.lo = d - 1

    def discard(self, v: int) -> None:
        bucket = self.buckets[self.degree[v]]
        del bucket[bisect_left(bucket, v)]

    def __iter__(self):
        buckets = self.buckets
        while self.lo < len(buckets) and not buckets[self.lo]:
            self.lo += 1
        for d in range(self.lo, len(buckets)):
            yield from buckets[d]


@dataclass
class DticState:
    """Bookkeeping of the cubic variant.

    ``violations[v]`` holds ordered pairs ``(u, u2)`` with ``u`` a sibling of
    ``v``, ``u2`` a sibling or parent, ``u != u2`` and ``u`` not adjacent to
    ``u2``. It is only meaningful once ``scanned[v]`` is set. ``mentions[x]``
    lists ``(owner, pair)`` for every stored pair containing ``x``.
    """

    violations: list[set | None]
    scanned: list[bool]
    mentions: list[list | None]

    @classmethod
    def empty(cls, n: int) -> "DticState":
        return cls([None] * n, [False] * n, [[] for _ in range(n)])

    @staticmethod
    def recompute(g: Pdag, v: int) -> set[tuple[int, int]]:
        nbr = g.si[v] | g.pa[v]
        return {
            (u, u2)
            for u in g.si[v]
            for u2 in nbr
            if u2 != u and u2 not in g.ne[u]
        }


def _require_valid(g: Pdag) -> None:
    problem = g.validate()
    if problem is not None:
        raise UsageError(f"input is not a valid PDAG: {problem}")


def _start(g: Pdag) -> tuple[Pdag, Dag]:
    work = g.copy()
    # arcs carry over unchanged; siblings are oriented as they are eliminated
    dag = g.copy(Dag)
    dag.order = None
    return work, dag


def _orient_into(dag: Dag, sibs, v: int) -> None:
    for u in sibs:
        dag.si[u].discard(v)
        dag.ch[u].add(v)
        dag.pa[v].add(u)
    dag.si[v] = set()


def _eliminate(work: Pdag, dag: Dag, v: int, buckets: DegreeBuckets | None = None) -> None:
    _orient_into(dag, work.si[v], v)
    if buckets is not None:
        buckets.discard(v)
        for u in work.ne[v]:
            buckets.decrement(u)
    work.detach(v)


def _finish(dag: Dag, order: list[int], tests: int, checks: int) -> ExtensionOutcome:
    dag.order = order[::-1]
    return ExtensionOutcome(dag, order, tests, checks)


def extend_dt(g: Pdag, *, check_input: bool = True) -> ExtensionOutcome:
    """Potential-sink elimination scanning vertices in id order."""
    if check_input:
        _require_valid(g)
    work, dag = _start(g)
    order = []
    tests = checks = 0
    alive = work.alive
    start = 0
    for _ in range(sum(alive)):
        while not alive[start]:
            start += 1
        found = None
        for v in range(start, g.n):
            if not alive[v]:
                continue
            checks += 1
            ok, t = potential_sink_tests(work, v)
            tests += t
            if ok:
                found = v
                break
        if found is None:
            return ExtensionOutcome(None, None, tests, checks)
        _eliminate(work, dag, found)
        order.append(found)
    return _finish(dag, order, tests, checks)


def extend_dth(g: Pdag, *, check_input: bool = True) -> ExtensionOutcome:
    """Potential-sink elimination scanning vertices by ascending degree."""
    if check_input:
        _require_valid(g)
    work, dag = _start(g)
    buckets = DegreeBuckets(work)
    order = []
    tests = checks = 0
    for _ in range(sum(work.alive)):
        found = None
        for v in buckets:
            checks += 1
            ok, t = potential_sink_tests(work, v)
            tests += t
            if ok:
                found = v
                break
        if found is None:
            return ExtensionOutcome(None, None, tests, checks)
        _eliminate(work, dag, found, buckets)
        order.append(found)
    return _finish(dag, order, tests, checks)


def extend_dtic(
    g: Pdag,
    *,
    check_input: bool = True,
    on_remove: Callable[[Pdag, DticState], None] | None = None,
) -> ExtensionOutcome:
    """Degree-ordered elimination with cached violating pairs, O(n^3) expected.

    Removal is logical: the input's neighbour sets are only read, filtered by
    a liveness flag, while current degrees and child counts are kept as
    integers. Every neighbourhood is scanned at most once, so the filtering
    costs O(m) overall.

    The degree buckets only hold vertices that can currently pass the test:
    childless and either not yet scanned or with no violating pair left.
    Every other vertex would be skipped by the scan anyway, so the first
    potential-sink found each round, and every neighbourhood scan performed,
    match the plain degree-ordered loop over all vertices.

    ``on_remove`` is called with the remaining graph and the state after
    every elimination; it exists for invariant checking and must not mutate
    either. Passing it makes the call maintain an explicit copy of the
    remaining graph.
    """
    if check_input:
        _require_valid(g)
    n = g.n
    dag = g.copy(Dag)
    dag.order = None
    shadow = g.copy() if on_remove is not None else None
    state = DticState.empty(n)
    bad, scanned, mentions = state.violations, state.scanned, state.mentions
    ne, si, pa = g.ne, g.si, g.pa
    alive = list(g.alive)
    kids = [len(s) for s in g.ch]
    deg = [len(s) for s in ne]

    buckets: list[list[int]] = [[] for _ in range(max(deg, default=0) + 1)]
    where = [-1] * n  # bucket index of a ready vertex, -1 otherwise
    for v in range(n):
        if alive[v] and not kids[v]:
            where[v] = deg[v]
            buckets[deg[v]].append(v)
    lo = 0

    order = []
    tests = checks = 0
    for _ in range(sum(alive)):
        found = None
        while lo < len(buckets) and not buckets[lo]:
            lo += 1
        d = lo
        while found is None and d < len(buckets):
            bucket = buckets[d]
            i = 0
            while i < len(bucket):
                v = bucket[i]
                checks += 1
                if not scanned[v]:
                    pairs = set()
                    sibs = [u for u in si[v] if alive[u]]
                    nbr = sibs + [u for u in pa[v] if alive[u]]
                    for u in sibs:
                        nu = ne[u]
                        for u2 in nbr:
                            if u2 == u:
                                continue
                            tests += 1
                            if u2 not in nu:
                                pair = (u, u2)
                                pairs.add(pair)
                                mentions[u].append((v, pair))
                                mentions[u2].append((v, pair))
                    bad[v] = pairs
                    scanned[v] = True
                if not bad[v]:
                    found = v
                    break
                del bucket[i]
                where[v] = -1
            d += 1
        if found is None:
            return ExtensionOutcome(None, None, tests, checks)

        v = found
        bucket = buckets[where[v]]
        del bucket[bisect_left(bucket, v)]
        where[v] = -1
        alive[v] = False
        order.append(v)
        _orient_into(dag, [u for u in si[v] if alive[u]], v)
        for u in ne[v]:
            if not alive[u]:
                continue
            deg[u] -= 1
            b = where[u]
            if b >= 0:
                bucket = buckets[b]
                del bucket[bisect_left(bucket, u)]
                insort(buckets[b - 1], u)
                where[u] = b - 1
                if b - 1 < lo:
                    lo = b - 1
        for u in pa[v]:
            if not alive[u]:
                continue
            kids[u] -= 1
            if not kids[u]:
                # u had children until now, so it was never scanned
                where[u] = deg[u]
                insort(buckets[deg[u]], u)
                if deg[u] < lo:
                    lo = deg[u]
        for owner, pair in mentions[v]:
            owned = bad[owner]
            if pair in owned:
                owned.discard(pair)
                if not owned and alive[owner]:
                    where[owner] = deg[owner]
                    insort(buckets[deg[owner]], owner)
                    if deg[owner] < lo:
                        lo = deg[owner]
        mentions[v] = None
        if shadow is not None:
            shadow.detach(v)
            on_remove(shadow, state)
    return _finish(dag, order, tests, checks)


def is_consistent_extension(g: Pdag, d: Pdag) -> bool:
    """Check that ``d`` is a DAG extending ``g`` without new v-structures."""
    if g.n != d.n:
        return False
    for v in range(g.n):
        if g.ne[v] != d.ne[v] or d.si[v]:
            return False
        if not g.ch[v] <= d.ch[v]:
            return False
    if d.find_cycle() is not None:
        return False
    return g.v_structures() == d.v_structures()


EXTENDERS = {
    "dt": extend_dt,
    "dth": extend_dth,
    "dtic": extend_dtic,
}


def get_extender(name: str):
    if name == "brute":
        from .oracles import brute_force_extend

        return brute_force_extend
    try:
        return EXTENDERS[name]
    except KeyError:
        raise UsageError(f"unknown extension algorithm {name!r}") from None
