import math

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pdagext import Pdag, UsageError, extend_dtic, format_edgelist, is_consistent_extension
from pdagext.extension import EXTENDERS
from pdagext.generators import (
    GeneratorConfig,
    chordal_graph,
    dth_worst_case,
    dth_worst_case_edge_count,
    generate,
    is_chordal,
    random_pdag,
    random_pdag_with_dag,
)
from pdagext.oracles import brute_force_extend


def _nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from((u, v) for u in range(g.n) for v in g.ne[u])
    return h


@pytest.mark.parametrize(
    "n, rule, m",
    [(100, "3n", 300), (100, "5n", 500), (100, "nlogn", 700), (100, "nsqrtn", 1000), (10, 7, 7)],
)
def test_edge_rules(n, rule, m):
    cfg = GeneratorConfig(n, rule)
    assert cfg.edge_count() == m
    assert random_pdag(cfg).num_edges() == m


def test_scale_free_hits_exact_edge_count():
    for seed in range(5):
        g = random_pdag(GeneratorConfig(200, "nlogn", "scale_free", seed=seed))
        assert g.num_edges() == 200 * 8


@pytest.mark.parametrize("kw", [dict(n=4, edges=7), dict(n=5, style="grid"), dict(n=5, edges="n2")])
def test_bad_configs(kw):
    with pytest.raises(UsageError):
        GeneratorConfig(**kw).edge_count()


@pytest.mark.parametrize("style", ["uniform", "scale_free"])
def test_deterministic(style):
    cfg = GeneratorConfig(80, "5n", style, seed=11)
    assert format_edgelist(generate(cfg)) == format_edgelist(generate(cfg))
    other = GeneratorConfig(80, "5n", style, seed=12)
    assert format_edgelist(generate(cfg)) != format_edgelist(generate(other))


def test_chordal_deterministic():
    cfg = GeneratorConfig(60, style="chordal", k=5, seed=3)
    assert chordal_graph(cfg) == chordal_graph(cfg)


def test_single_vertex():
    g = random_pdag(GeneratorConfig(1, 0))
    assert g.n == 1 and extend_dtic(g)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 40), st.floats(0, 1), st.integers(0, 2**32))
def test_random_pdag_is_extended_by_its_dag(n, density, seed):
    cfg = GeneratorConfig(n, int(density * n * (n - 1) // 2), seed=seed)
    g, d = random_pdag_with_dag(cfg)
    assert is_consistent_extension(g, d)
    assert g.v_structures() == d.v_structures()
    vs_arcs = {(u, v) for u, v, _ in d.v_structures()} | {(w, v) for _, v, w in d.v_structures()}
    assert vs_arcs <= set(g.arcs())
    extra = len(g.arcs()) - len(vs_arcs)
    assert extra <= 5
    assert extend_dtic(g)


def test_small_random_pdag_matches_oracle():
    for seed in range(20):
        g = random_pdag(GeneratorConfig(5, 6, seed=seed))
        out = brute_force_extend(g)
        assert out and out.dag.v_structures() == g.v_structures()


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 60), st.sampled_from([1, 3, 5, "log2n", "sqrtn"]), st.integers(0, 2**32))
def test_chordal_outputs(n, k, seed):
    g = chordal_graph(GeneratorConfig(n, style="chordal", k=k, seed=seed))
    assert not g.arcs()
    assert is_chordal(g)
    assert nx.is_chordal(_nx(g))
    for algo in EXTENDERS.values():
        assert algo(g)


def test_chordal_full_subtrees_give_complete_graph():
    g = chordal_graph(GeneratorConfig(3, style="chordal", k=3, seed=0))
    assert g.num_edges() == 3


def test_is_chordal_rejects_cycles():
    assert not is_chordal(Pdag.from_edges(4, edges=[(0, 1), (1, 2), (2, 3), (3, 0)]))
    assert is_chordal(Pdag.from_edges(4, edges=[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]))


@settings(max_examples=100)
@given(st.integers(4, 12), st.floats(0.1, 0.9), st.integers(0, 10_000))
def test_is_chordal_agrees_with_networkx(n, p, seed):
    h = nx.gnp_random_graph(n, p, seed=seed)
    g = Pdag.from_edges(n, edges=h.edges())
    assert is_chordal(g) == nx.is_chordal(h)


@pytest.mark.parametrize("k", range(1, 11))
def test_dth_worst_case_shape(k):
    g = dth_worst_case(k)
    assert g.n == 5 * k + 2
    assert g.num_edges() == dth_worst_case_edge_count(k)
    assert dth_worst_case_edge_count(k) == 2 * math.comb(2 * k, 2) + math.comb(k, 2) + 6 * k
    v, w = 5 * k, 5 * k + 1
    assert not g.is_adjacent(v, w)
    for x in range(4 * k, 5 * k):
        assert g.degree(x) == k + 1
        assert not g.is_potential_sink(x)
    assert extend_dtic(g)


def test_dth_worst_case_needs_k():
    with pytest.raises(UsageError):
        generate(GeneratorConfig(0, style="dth_worst_case"))
    assert generate(GeneratorConfig(0, style="dth_worst_case", k=2)).n == 12
