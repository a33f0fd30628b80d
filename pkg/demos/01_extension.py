"""Walk through consistent extension on a five-vertex PDAG.

Run with ``python3 demos/01_extension.py``.
"""

from pdagext import Pdag, extend_dt, extend_dth, extend_dtic, format_edgelist, is_consistent_extension
from pdagext.graph import potential_sink_tests
from pdagext.oracles import all_consistent_extensions

names = "abcde"
a, b, c, d, e = range(5)

# b -> d <- c is a v-structure; everything else is undirected
g = Pdag.from_edges(5, arcs=[(b, d), (c, d)], edges=[(a, b), (a, c), (a, d), (d, e)])
print(format_edgelist(g, "input PDAG, vertices a..e = 0..4"))

# only e qualifies as a potential-sink: d has sibling e, which is not adjacent to b
for v in range(5):
    ok, tests = potential_sink_tests(g, v)
    print(f"ps({names[v]}) = {ok}  after {tests} adjacency test(s)")

# the three elimination schemes agree on the verdict; orders may differ
for algo in (extend_dt, extend_dth, extend_dtic):
    out = algo(g)
    order = " ".join(names[v] for v in out.elimination_order)
    print(f"{algo.__name__:12s} removes {order}   adj_tests={out.adj_tests}  ps_checks={out.ps_checks}")
    assert is_consistent_extension(g, out.dag)

# how many DAGs share the skeleton, keep the arcs and add no v-structure?
exts = list(all_consistent_extensions(g))
print(f"\n{len(exts)} consistent extensions in total")
for arcs in exts:
    print("  ", ", ".join(f"{names[u]}->{names[v]}" for u, v in sorted(arcs)))

# an undirected 4-cycle has none: every acyclic orientation creates a v-structure
c4 = Pdag.from_edges(4, edges=[(0, 1), (1, 2), (2, 3), (3, 0)])
print("\nC4 extendable:", bool(extend_dtic(c4)))
