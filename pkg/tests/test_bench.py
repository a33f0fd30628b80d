import csv
import io

import pytest

from pdagext import UsageError
from pdagext.bench import (
    ALGORITHMS,
    CSV_HEADER,
    BenchAggregate,
    BenchRecord,
    bench,
    instance_seeds,
    parse_suite,
    write_csv,
)
from pdagext.errors import ParseError
from pdagext.generators import GeneratorConfig


def test_protocol_counts():
    items = list(bench([GeneratorConfig(128, "3n")], ["dt", "dth", "dtic"], reps=10))
    records = [x for x in items if isinstance(x, BenchRecord)]
    aggregates = [x for x in items if isinstance(x, BenchAggregate)]
    assert len(records) == 300
    assert len(aggregates) == 3
    assert {r.instance for r in records} == set(range(10))
    assert {r.rep for r in records} == set(range(10))
    assert all(r.phases is None and r.adj_tests is not None for r in records)
    assert all(a.runs == 100 for a in aggregates)


def test_ce_phases_within_wall():
    items = bench([GeneratorConfig(200, "3n", seed=4)], ["ce-meek", "ce-meek-dt"], reps=2, instances=3)
    for r in items:
        if isinstance(r, BenchRecord):
            assert r.phases is not None
            assert sum(r.phases) <= r.wall_us


def test_parallel_matches_serial_shape():
    cfg = [GeneratorConfig(40, "5n", seed=1)]
    a = [x for x in bench(cfg, ["dtic", "direct-meek"], 2, instances=3) if isinstance(x, BenchRecord)]
    b = [x for x in bench(cfg, ["dtic", "direct-meek"], 2, instances=3, jobs=2) if isinstance(x, BenchRecord)]
    key = lambda r: (r.algo, r.seed, r.instance, r.rep, r.m, r.adj_tests)
    assert [key(r) for r in a] == [key(r) for r in b]


def test_seeds_are_derived_and_distinct():
    s = instance_seeds(7, 10)
    assert s == instance_seeds(7, 10)
    assert len(set(s)) == 10
    assert s != instance_seeds(8, 10)


def test_unknown_algorithm():
    with pytest.raises(UsageError):
        list(bench([GeneratorConfig(10)], ["bogus"], 1))
    with pytest.raises(UsageError):
        list(bench([GeneratorConfig(10)], ["dt"], 0))


def test_csv_schema():
    buf = io.StringIO()
    rows = write_csv(bench([GeneratorConfig(30)], ["dt", "ce-meek"], 1, instances=2), buf)
    table = list(csv.reader(io.StringIO(buf.getvalue())))
    assert tuple(table[0]) == CSV_HEADER
    assert rows == len(table) - 1 == 4 + 4
    dt = [r for r in table[1:] if r[0] == "dt" and r[6] not in ("mean", "std")]
    assert all(r[8] == r[9] == r[10] == "" for r in dt)
    ce = [r for r in table[1:] if r[0] == "ce-meek" and r[6] == "mean"]
    assert ce and all(r[8] and r[9] and r[10] for r in ce)


def test_all_algorithms_run():
    items = list(bench([GeneratorConfig(30, seed=2)], list(ALGORITHMS), 1, instances=1))
    assert len(items) == 2 * len(ALGORITHMS)


def test_suite_expansion():
    text = """
# sparse
n=64,128
edges=3n,5n
seed=9

n=32
style=chordal
k=log2n,3
background_arcs=1..2
"""
    suite = parse_suite(text)
    assert len(suite) == 6
    assert suite[0] == GeneratorConfig(64, "3n", seed=9)
    assert suite[-1].k == 3.0 and suite[-1].background_arcs == (1, 2)


def test_suite_seed_override():
    assert parse_suite("n=8\n", seed=5)[0].seed == 5
    assert parse_suite("n=8\nseed=1\n", seed=5)[0].seed == 1


@pytest.mark.parametrize("text, lineno", [("n=8\nfoo=1\n", 2), ("n=x\n", 1), ("edges=3n\n", 1), ("n=3\nedges=10\n", 1)])
def test_suite_errors(text, lineno):
    with pytest.raises(ParseError) as info:
        parse_suite(text)
    assert info.value.lineno == lineno


def test_dtic_beats_dth_on_worst_case():
    suite = [GeneratorConfig(0, style="dth_worst_case", k=16)]
    aggs = {a.algo: a for a in bench(suite, ["dth", "dtic"], 2, instances=1) if isinstance(a, BenchAggregate)}
    assert aggs["dtic"].mean["wall_us"] < aggs["dth"].mean["wall_us"]
    assert aggs["dtic"].mean["adj_tests"] < aggs["dth"].mean["adj_tests"]
