"""Instance families used by the benchmarks.

Run with ``python3 demos/03_generators.py``.
"""

import collections

import numpy as np

from pdagext import extend_dth, extend_dtic
from pdagext.generators import (
    GeneratorConfig,
    chordal_graph,
    dth_worst_case,
    is_chordal,
    random_pdag_with_dag,
)

# random PDAGs: v-structure arcs plus two to five background arcs
for rule in ("3n", "5n", "nlogn", "nsqrtn"):
    cfg = GeneratorConfig(256, rule, seed=1)
    g, hidden = random_pdag_with_dag(cfg)
    print(
        f"{rule:7s} m={g.num_edges():6d} arcs={len(g.arcs()):6d} "
        f"undirected={len(g.undirected_edges()):5d} v-structures={len(g.v_structures())}"
    )

# scale-free skeletons have a heavy degree tail
g, _ = random_pdag_with_dag(GeneratorConfig(2000, "3n", "scale_free", seed=1))
degrees = np.array([g.degree(v) for v in range(g.n)])
print("\nscale-free degree quantiles 50/90/99/max:", np.percentile(degrees, [50, 90, 99, 100]))

# chordal graphs: density grows with the mean subtree size k
for k in (3, 5, "log2n", "sqrtn"):
    g = chordal_graph(GeneratorConfig(512, style="chordal", k=k, seed=2))
    print(f"chordal k={k!s:6s} m={g.num_edges():6d} chordal={is_chordal(g)}")

# the degree-order heuristic's bad case: many cheap-looking vertices fail
print()
for k in (4, 8, 16, 32):
    g = dth_worst_case(k)
    h, i = extend_dth(g), extend_dtic(g)
    print(f"k={k:2d} n={g.n:3d}  dth adj_tests={h.adj_tests:8d}  dtic adj_tests={i.adj_tests:7d}")

hist = collections.Counter(dth_worst_case(3).degree(v) for v in range(17))
print("degree histogram for k=3:", dict(sorted(hist.items())))
