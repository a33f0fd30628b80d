import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pdagext import BrokenInvariant, Dag, DirectedCycle, Edge, EdgeKind, Pdag, UsageError
from pdagext.edgelist import format_edgelist, parse_edgelist
from pdagext.errors import ParseError
from pdagext.graph import potential_sink_tests

from conftest import A, B, C, D, E
from strategies import pdags


def test_adjacency_kinds(toy_g):
    assert toy_g.adjacency(B, D) is EdgeKind.ARC_FORWARD
    assert toy_g.adjacency(D, B) is EdgeKind.ARC_BACKWARD
    assert toy_g.adjacency(A, D) is EdgeKind.UNDIRECTED
    assert Pdag(2).adjacency(0, 1) is EdgeKind.NONE


@pytest.mark.parametrize("u, v", [(0, 0), (0, 5), (-1, 1)])
def test_adjacency_rejects_bad_vertices(toy_g, u, v):
    with pytest.raises(UsageError):
        toy_g.adjacency(u, v)


def test_neighborhood(toy_g):
    assert toy_g.neighborhood(D) == ({B, C}, set(), {A, E})
    assert toy_g.neighborhood(E) == (set(), set(), {D})
    g = Pdag(1)
    assert g.neighborhood(0) == (set(), set(), set())
    pa, ch, si = toy_g.neighborhood(D)
    pa.add(E)
    assert E not in toy_g.pa[D]


def test_potential_sinks_toy(toy_g):
    assert [v for v in range(5) if toy_g.is_potential_sink(v)] == [E]


def test_potential_sinks_dense5(dense5_g):
    assert not dense5_g.is_potential_sink(A)
    assert dense5_g.is_potential_sink(E)


def test_potential_sink_short_circuits(dense5_g):
    assert potential_sink_tests(dense5_g, A) == (False, 5)
    assert potential_sink_tests(dense5_g, B) == (False, 5)
    assert potential_sink_tests(dense5_g, C) == (True, 3)
    assert potential_sink_tests(dense5_g, E) == (True, 1)


def test_remove_vertex(toy_g):
    removed = toy_g.remove_vertex(E)
    assert removed == {Edge(D, E, False)}
    assert toy_g.si[D] == {A}
    assert toy_g.degree(D) == 3
    with pytest.raises(UsageError):
        toy_g.adjacency(D, E)
    assert Pdag(1).remove_vertex(0) == set()


def test_remove_everything(toy_g):
    for v in (C, A, E, B, D):
        toy_g.remove_vertex(v)
    assert toy_g.vertices() == []
    assert toy_g.num_edges() == 0
    with pytest.raises(UsageError):
        toy_g.adjacency(A, B)


def test_validate():
    assert Pdag.from_edges(3, edges=[(0, 1), (1, 2), (2, 0)]).validate() is None
    cyc = Pdag.from_edges(3, arcs=[(0, 1), (1, 2), (2, 0)])
    assert cyc.validate() == DirectedCycle((0, 1, 2))
    broken = Pdag(2)
    broken.pa[1].add(0)
    assert isinstance(broken.validate(), BrokenInvariant)


def test_validate_toy(toy_g):
    assert toy_g.validate() is None


def test_v_structures(toy_g, toy_d):
    assert toy_g.v_structures() == {(B, D, C)}
    assert toy_d.v_structures() == {(B, D, C)}
    tri = Pdag.from_edges(3, arcs=[(0, 1), (0, 2), (1, 2)])
    assert tri.v_structures() == set()


def test_insertion_rejects_self_loop_and_duplicates():
    g = Pdag(3)
    g.add_arc(0, 1)
    with pytest.raises(UsageError):
        g.add_edge(1, 0)
    with pytest.raises(UsageError):
        g.add_arc(2, 2)


def test_dag_rejects_undirected():
    d = Dag(2)
    with pytest.raises(UsageError):
        d.add_edge(0, 1)


def test_dag_topological_order_cached(toy_d):
    order = toy_d.topological_order()
    pos = {v: i for i, v in enumerate(order)}
    assert all(pos[u] < pos[v] for u, v in toy_d.arcs())
    assert toy_d.order == order


def _orient_toward(g, v):
    h = g.copy()
    for u in list(h.si[v]):
        h.orient(u, v)
    return h


@settings(max_examples=300)
@given(pdags(max_n=7), st.data())
def test_potential_sink_iff_no_new_v_structure(g, data):
    v = data.draw(st.integers(0, g.n - 1))
    expected = not g.ch[v] and _orient_toward(g, v).v_structures() == g.v_structures()
    assert g.is_potential_sink(v) == expected


@given(pdags(max_n=8))
def test_mutations_keep_invariants(g):
    assert g.validate() is None
    for v in range(g.n):
        assert g.degree(v) == len(g.pa[v]) + len(g.ch[v]) + len(g.si[v])


@given(pdags(max_n=8), st.data())
def test_removal_preserves_other_adjacencies(g, data):
    v = data.draw(st.integers(0, g.n - 1))
    before = {(x, y): g.adjacency(x, y) for x in range(g.n) for y in range(g.n) if v not in (x, y) and x != y}
    degrees = {u: g.degree(u) for u in g.ne[v]}
    g.remove_vertex(v)
    assert g.validate() is None
    for (x, y), kind in before.items():
        assert g.adjacency(x, y) is kind
    for u, deg in degrees.items():
        assert g.degree(u) == deg - 1


@given(pdags(max_n=8), st.randoms())
def test_v_structures_independent_of_insertion_order(g, rnd):
    items = [(u, v, True) for u, v in g.arcs()] + [(u, v, False) for u, v in g.undirected_edges()]
    rnd.shuffle(items)
    h = Pdag(g.n)
    for u, v, directed in items:
        (h.add_arc if directed else h.add_edge)(u, v)
    assert h == g
    assert h.v_structures() == g.v_structures()


def test_edgelist_round_trip(toy_g):
    text = format_edgelist(toy_g, "toy")
    assert text.splitlines()[:2] == ["# toy", "5"]
    assert parse_edgelist(text) == toy_g


@pytest.mark.parametrize(
    "text, lineno",
    [
        ("3\n0 -> 1\n1 -- 0\n", 3),
        ("3\n# c\n2 -- 2\n", 3),
        ("2\n0 -> 4\n", 2),
        ("x\n", 1),
        ("2\n0 => 1\n", 2),
    ],
)
def test_edgelist_errors_carry_line_numbers(text, lineno):
    with pytest.raises(ParseError) as info:
        parse_edgelist(text)
    assert info.value.lineno == lineno
    assert str(info.value).startswith(f"line {lineno}:")
