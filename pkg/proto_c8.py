"""Scratch prototype for the balanced-separation acceptance run."""
import math
import random
import time

from sgtk.graphs import Graph, build_named
from sgtk.products import product
from sgtk.universal import TruncationParams, tk_trunc
from sgtk.treedecomp import TreeDecomposition, balanced_separation, validate

t0 = time.time()
base, tree = tk_trunc(6, TruncationParams(3, 1))
print("base n =", base.n, "time", time.time() - t0)

# natural decomposition of the truncation: bags = closed in-neighbourhoods
index = {}
orient_bags = []
# reconstruct orientation bags from adjacency + tree depth: in-nbrs of v are
# the neighbours that are ancestors (appear on the root path).  tk_trunc's
# graph comes from g_of, whose orientation is ancestor -> descendant.
addr_of = sorted(tree.colour, key=lambda a: (len(a), a))
index = {a: i for i, a in enumerate(addr_of)}
depth_of = {index[a]: len(a) for a in addr_of}
bags = []
for a in addr_of:
    v = index[a]
    anc = [u for u in base.neighbors(v) if depth_of[u] < len(a)]
    bags.append(sorted(anc) + [v])
edges = []
for a in addr_of:
    if a:
        edges.append((index[a[:-1]], index[a]))
td6 = TreeDecomposition(dict(enumerate(bags)), edges, root=index[()])
print("trunc td width", td6.width(), "validate:", validate(td6, base))

rng = random.Random(0xC8)
worst_bag = 0
t0 = time.time()
prod_cache = {}
for trial in range(50):
    m = rng.randrange(6, 13)
    if m not in prod_cache:
        prod_cache[m] = product("strong", base, build_named("path", m))
    big = prod_cache[m]
    n = rng.randrange(120, 401)
    chosen = sorted(rng.sample(range(big.n), n))
    relabel = {v: i for i, v in enumerate(chosen)}
    sub_edges = [
        (relabel[u], relabel[v])
        for u, v in big.edges()
        if u in relabel and v in relabel and rng.random() < 0.9
    ]
    sub = Graph(n, sub_edges)
    # fiber bags: truncation bag x all path layers, restricted to the sample
    fib_bags = {
        x: sorted(
            relabel[v * m + i]
            for v in td6.bags[x]
            for i in range(m)
            if v * m + i in relabel
        )
        for x in td6.nodes
    }
    td = TreeDecomposition(fib_bags, edges, root=index[()])
    assert validate(td, sub) is None, validate(td, sub)
    s, a, b = balanced_separation(sub, td)
    worst_bag = max(worst_bag, len(s))
    bound = 2 * math.sqrt(7 * n)
    assert len(s) <= bound, (len(s), bound, n)
    assert 3 * len(a) <= 2 * n and 3 * len(b) <= 2 * n
    # separation property: no edge between A\S and B\S
    sa, sb = set(a) - s, set(b) - s
    for u, v in sub.edges():
        assert not (u in sa and v in sb) and not (u in sb and v in sa)
print("50 trials ok, worst |S| =", worst_bag, "time", time.time() - t0)
