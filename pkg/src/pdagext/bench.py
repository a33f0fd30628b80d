"""Benchmark harness.

For every generator config, ``instances`` graphs are generated from seeds
derived from the config seed, every algorithm runs once as a warm-up and then
``reps`` timed times per instance. Timing covers only the algorithm call, with
the garbage collector paused as :mod:`timeit` does.
"""

from __future__ import annotations

import csv
import gc
import itertools
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .errors import ParseError, UsageError
from .extension import EXTENDERS
from .generators import GeneratorConfig, generate
from .orientation import direct_meek, direct_meek_naive, maximal_orientation_ce

CSV_HEADER = (
    "algo", "n", "m", "style", "seed", "instance", "rep",
    "wall_us", "phase1_us", "phase2_us", "phase3_us", "adj_tests", "ps_checks",
)


@dataclass(frozen=True)
class BenchRecord:
    """One timed run. ``phases`` is set for the ce-meek family only."""

    algo: str
    n: int
    m: int
    style: str
    seed: int
    instance: int
    rep: int
    wall_us: float
    phases: tuple[float, float, float] | None = None
    adj_tests: int | None = None
    ps_checks: int | None = None

    def row(self) -> list:
        p = self.phases or ("", "", "")
        return [
            self.algo, self.n, self.m, self.style, self.seed, self.instance, self.rep,
            f"{self.wall_us:.3f}", *(x if x == "" else f"{x:.3f}" for x in p),
            "" if self.adj_tests is None else self.adj_tests,
            "" if self.ps_checks is None else self.ps_checks,
        ]


@dataclass(frozen=True)
class BenchAggregate:
    """Mean and standard deviation over all runs of one (config, algorithm)."""

    algo: str
    config: GeneratorConfig
    n: int
    m: float
    runs: int
    mean: dict
    std: dict

    def rows(self) -> list[list]:
        out = []
        for label, stats in (("mean", self.mean), ("std", self.std)):
            out.append([
                self.algo, self.n, f"{self.m:g}", self.config.style, self.config.seed, "all", label,
                *("" if stats.get(k) is None else f"{stats[k]:.3f}" for k in CSV_HEADER[7:]),
            ])
        return out


def _run_extender(name):
    extend = EXTENDERS[name]

    def run(g):
        out = extend(g, check_input=False)
        return None, out.adj_tests, out.ps_checks

    return run


def _run_direct(closure):
    def run(g):
        closure(g, trace=False)
        return None, None, None

    return run


def _run_ce(extender):
    def run(g):
        _, pt = maximal_orientation_ce(g, extender, check_input=False)
        return (pt.extension_us, pt.cpdag_us, pt.meek_us), pt.adj_tests, pt.ps_checks

    return run


ALGORITHMS = {
    "dt": _run_extender("dt"),
    "dth": _run_extender("dth"),
    "dtic": _run_extender("dtic"),
    "direct-meek": _run_direct(direct_meek_naive),
    "direct-meek-wl": _run_direct(direct_meek),
    "ce-meek": _run_ce("dtic"),
    "ce-meek-dt": _run_ce("dt"),
    "ce-meek-dth": _run_ce("dth"),
}


def instance_seeds(base: int, count: int) -> list[int]:
    """Independent 63-bit seeds derived from ``base``."""
    children = np.random.SeedSequence(base).spawn(count)
    return [int(c.generate_state(1, np.uint64)[0] >> np.uint64(1)) for c in children]


def timed(fn, *args):
    """Call ``fn(*args)`` with the collector paused; return ``(microseconds, result)``."""
    gc.collect()
    gc.disable()
    try:
        t = time.perf_counter_ns()
        out = fn(*args)
        return (time.perf_counter_ns() - t) / 1000, out
    finally:
        gc.enable()


def _cell(args) -> list[BenchRecord]:
    cfg, instance, seed, algos, reps = args
    g = generate(GeneratorConfig(
        cfg.n, cfg.edges, cfg.style, cfg.k, seed, cfg.background_arcs
    ))
    n, m = sum(g.alive), g.num_edges()
    out = []
    for algo in algos:
        run = ALGORITHMS[algo]
        timed(run, g)  # warm-up
        for rep in range(reps):
            wall, (phases, adj, ps) = timed(run, g)
            out.append(BenchRecord(algo, n, m, cfg.style, seed, instance, rep, wall, phases, adj, ps))
    return out


def _aggregate(cfg, algo, records) -> BenchAggregate:
    cols = {
        "wall_us": [r.wall_us for r in records],
        "adj_tests": [r.adj_tests for r in records],
        "ps_checks": [r.ps_checks for r in records],
    }
    for i, key in enumerate(("phase1_us", "phase2_us", "phase3_us")):
        cols[key] = [r.phases[i] if r.phases else None for r in records]
    mean, std = {}, {}
    for key, vals in cols.items():
        if any(v is None for v in vals):
            continue
        mean[key] = statistics.fmean(vals)
        std[key] = statistics.pstdev(vals)
    return BenchAggregate(
        algo, cfg, records[0].n, statistics.fmean(r.m for r in records), len(records), mean, std
    )


def bench(
    suite: Iterable[GeneratorConfig],
    algorithms: Iterable[str],
    reps: int = 10,
    *,
    instances: int = 10,
    jobs: int = 1,
) -> Iterator[BenchRecord | BenchAggregate]:
    """Yield the run records of each config followed by one aggregate per algorithm."""
    algos = list(algorithms)
    unknown = [a for a in algos if a not in ALGORITHMS]
    if unknown:
        raise UsageError(f"unknown algorithm id(s): {', '.join(unknown)}")
    if reps < 1 or instances < 1:
        raise UsageError("reps and instances must be at least 1")
    suite = list(suite)
    cells = [
        (cfg, i, seed, algos, reps)
        for cfg in suite
        for i, seed in enumerate(instance_seeds(cfg.seed, instances))
    ]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_cell, cells))
    else:
        results = map(_cell, cells)
    results = iter(results)
    for cfg in suite:
        records = list(itertools.chain.from_iterable(itertools.islice(results, instances)))
        yield from records
        for algo in algos:
            yield _aggregate(cfg, algo, [r for r in records if r.algo == algo])


def write_csv(items: Iterable[BenchRecord | BenchAggregate], fh) -> int:
    """Write the CSV to ``fh``; return the number of data rows written."""
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_HEADER)
    count = 0
    for item in items:
        rows = item.rows() if isinstance(item, BenchAggregate) else [item.row()]
        w.writerows(rows)
        count += len(rows)
    return count


_SUITE_KEYS = {"n", "edges", "style", "k", "seed", "background_arcs"}


def _suite_value(key, text, lineno):
    try:
        if key in ("n", "seed"):
            return int(text)
        if key == "background_arcs":
            lo, _, hi = text.partition("..")
            return (int(lo), int(hi or lo))
        if key == "k":
            return text if text in ("log2n", "sqrtn") else float(text)
        return int(text) if text.isdigit() else text
    except ValueError:
        raise ParseError(f"bad value {text!r} for {key}", lineno) from None


def parse_suite(text: str, *, seed: int | None = None) -> list[GeneratorConfig]:
    """Parse a suite file.

    Blocks of ``key=value`` lines separated by blank lines; ``#`` starts a
    comment. Comma-separated values expand to the product of all lists.
    ``seed`` overrides the per-block default of 0.
    """
    blocks, cur = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            if cur:
                blocks.append(cur)
                cur = []
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or key not in _SUITE_KEYS:
            raise ParseError(f"expected key=value with key in {sorted(_SUITE_KEYS)}", lineno)
        values = [_suite_value(key, v.strip(), lineno) for v in value.split(",")]
        cur.append((key, values, lineno))
    if cur:
        blocks.append(cur)
    suite = []
    for block in blocks:
        keys = [k for k, _, _ in block]
        if "n" not in keys and not any(
            k == "style" and vals == ["dth_worst_case"] for k, vals, _ in block
        ):
            raise ParseError("block has no n", block[0][2])
        for combo in itertools.product(*(vals for _, vals, _ in block)):
            kw = dict(zip(keys, combo))
            kw.setdefault("n", 0)
            if seed is not None and "seed" not in kw:
                kw["seed"] = seed
            try:
                cfg = GeneratorConfig(**kw)
                if cfg.style in ("uniform", "scale_free"):
                    cfg.edge_count()
                elif cfg.style == "chordal":
                    cfg.mean_subtree_size()
                suite.append(cfg)
            except UsageError as exc:
                raise ParseError(str(exc), block[0][2]) from None
    return suite
