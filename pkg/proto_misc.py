"""Scratch timing for acceptance criteria 2, 6, 10."""
import itertools
import random
import time

import networkx as nx

import sys
sys.path.insert(0, "tests")
from helpers import random_graph, seeded, to_nx

from sgtk.graphs import Graph, build_named
from sgtk.treedecomp import exact_treewidth
from sgtk.chordal import chordal_completion_exact
from sgtk.colnum import col_r_exact
from sgtk.planar_routing import route_grid

# -- criterion 2 timing
t0 = time.time()
for n in range(2, 11):
    tw, td = exact_treewidth(build_named("path", n))
    assert tw == 1
rng = random.Random(1)
for _ in range(20):
    n = rng.randrange(2, 17)
    g = Graph(n, [(i, rng.randrange(i)) for i in range(1, n)])
    assert exact_treewidth(g)[0] == 1
print("trees", time.time() - t0)
t0 = time.time()
for n in range(1, 9):
    assert exact_treewidth(build_named("complete", n))[0] == n - 1
print("cliques", time.time() - t0)
t0 = time.time()
for k in (2, 3, 4):
    tk = time.time()
    assert exact_treewidth(build_named("grid", k, k))[0] == k
    print("  grid", k, time.time() - tk)
print("grids", time.time() - t0)
t0 = time.time()
probes = [build_named("complete", n) for n in range(2, 9)]
probes += [build_named("grid", 2, 2), build_named("grid", 3, 3)]
rng = random.Random(2)
for _ in range(15):
    n = rng.randrange(2, 10)
    probes.append(random_graph(rng, n, rng.choice((0.3, 0.5, 0.7))))
for g in probes:
    tw = exact_treewidth(g)[0]
    assert chordal_completion_exact(g, tw) is not None
    if tw >= 1:
        assert chordal_completion_exact(g, tw - 1) is None
print("completion cross-check", time.time() - t0)

# -- criterion 6 timing
def degeneracy(g):
    if g.n == 0:
        return 0
    core = nx.core_number(to_nx(g))
    return max(core.values(), default=0)

t0 = time.time()
count = 0
for n in range(1, 7):
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        g = Graph(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])
        assert col_r_exact(g, 1).value == degeneracy(g) + 1
        count += 1
print("exhaustive col_1", count, time.time() - t0)
t0 = time.time()
rng = seeded("acceptance-col-random")
for _ in range(300):
    n = rng.randrange(1, 10)
    g = random_graph(rng, n, rng.choice((0.2, 0.4, 0.6)))
    assert col_r_exact(g, 1).value == degeneracy(g) + 1
print("random col_1", time.time() - t0)
t0 = time.time()
rng = seeded("acceptance-col-tw")
for _ in range(100):
    n = rng.randrange(1, 10)
    g = random_graph(rng, n, rng.choice((0.2, 0.4, 0.6)))
    tw = exact_treewidth(g)[0]
    for r in (1, 2, 3):
        assert col_r_exact(g, r).value <= tw + 1
print("col_r vs tw", time.time() - t0)

# -- criterion 10 routing volume
t0 = time.time()
rng = seeded("acceptance-routing")
for k in range(1, 6):
    l = 2 * k + 1
    cache = {}
    for _ in range(100):
        m = rng.randrange(max(k, 2), 13)
        a = sorted(rng.sample(range(m), k))
        b = sorted(rng.sample(range(m), k))
        paths = route_grid(l, m, a, b)
        if m not in cache:
            cache[m] = build_named("grid", m, l)
        gg = cache[m]
        assert len(paths) == k
        used = set()
        for i, path in enumerate(paths):
            assert path[0] == a[i] * l and path[-1] == b[i] * l + l - 1
            for u, v in zip(path, path[1:]):
                assert gg.has_edge(u, v)
            assert not (set(path) & used)
            used |= set(path)
print("routing 500", time.time() - t0)
