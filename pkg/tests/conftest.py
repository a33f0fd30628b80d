import pytest

from pdagext import Dag, Pdag

A, B, C, D, E = range(5)


@pytest.fixture
def toy_g():
    return Pdag.from_edges(5, arcs=[(B, D), (C, D)], edges=[(A, B), (A, C), (A, D), (D, E)])


@pytest.fixture
def toy_m():
    return Pdag.from_edges(5, arcs=[(B, D), (C, D), (A, D), (D, E)], edges=[(A, B), (A, C)])


@pytest.fixture
def toy_d():
    return Dag.from_edges(5, arcs=[(A, B), (A, C), (B, D), (C, D), (D, E), (A, D)])


@pytest.fixture
def dense5_g():
    return Pdag.from_edges(
        5, edges=[(A, B), (A, C), (A, D), (A, E), (B, C), (B, D), (B, E), (C, D)]
    )


@pytest.fixture
def c4():
    return Pdag.from_edges(4, edges=[(0, 1), (1, 2), (2, 3), (3, 0)])
