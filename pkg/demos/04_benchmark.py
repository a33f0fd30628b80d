"""A small benchmark run and its CSV, mirroring ``pdagext bench``.

Run with ``python3 demos/04_benchmark.py``.
"""

import io

from pdagext.bench import BenchAggregate, bench, parse_suite, write_csv

suite = parse_suite(
    """
n=256,512
edges=3n,nsqrtn
"""
)
items = list(bench(suite, ["dtic", "direct-meek", "direct-meek-wl", "ce-meek"], reps=3, instances=3))

print(f"{'config':28s} {'algorithm':15s} {'mean ms':>8s} {'std ms':>7s}  ce phase split")
for agg in items:
    if not isinstance(agg, BenchAggregate):
        continue
    split = ""
    if "phase1_us" in agg.mean:
        total = sum(agg.mean[k] for k in ("phase1_us", "phase2_us", "phase3_us"))
        split = " / ".join(f"{agg.mean[k] / total:.0%}" for k in ("phase1_us", "phase2_us", "phase3_us"))
    cfg = agg.config
    print(
        f"n={cfg.n:<5d} edges={cfg.edges!s:<8s} m={agg.m:<7g} {agg.algo:15s} "
        f"{agg.mean['wall_us'] / 1e3:8.2f} {agg.std['wall_us'] / 1e3:7.2f}  {split}"
    )

buf = io.StringIO()
rows = write_csv(items, buf)
print(f"\n{rows} CSV rows; first lines:")
print("\n".join(buf.getvalue().splitlines()[:4]))
