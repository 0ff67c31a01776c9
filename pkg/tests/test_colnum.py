from itertools import combinations, permutations

import pytest

from sgtk.graphs import Graph, build_named, degeneracy
from sgtk.colnum import (
    COL_EXACT_CAP,
    col_r_exact,
    col_r_of_order,
    nabla_upper,
    product_order,
    s_r_set,
)
from sgtk.treedecomp import exact_treewidth

from helpers import seeded, random_graph


def brute_s_r(g, order, v, r):
    """Oracle: enumerate all simple paths from v of length <= r directly."""
    pos = {u: i for i, u in enumerate(order)}
    out = {v}

    def extend(path):
        u = path[-1]
        if len(path) > 1 and pos[u] < pos[v]:
            out.add(u)
        if len(path) > r:
            return
        for w in g.neighbors(u):
            if w in path:
                continue
            if pos[w] > pos[v]:
                extend(path + [w])
            elif len(path) <= r:
                if pos[w] < pos[v]:
                    out.add(w)

    extend([v])
    return out


def test_s_r_examples():
    p3 = build_named("path", 3)  # 0-1-2 standing in for a-b-c
    # v last in the order: no admissible internal vertices, so only the
    # direct earlier neighbour is reached
    assert s_r_set(p3, [0, 1, 2], 2, 2) == {2, 1}
    # 2-step reach through a later internal vertex: order c<a<b, v=a
    assert s_r_set(p3, [2, 0, 1], 0, 2) == {0, 2}

    iso = Graph(3, [(0, 1)])
    assert s_r_set(iso, [0, 1, 2], 2, 3) == {2}

    rng = seeded("sr")
    for _ in range(300):
        n = rng.randrange(1, 9)
        g = random_graph(rng, n, rng.random())
        order = list(g.vertices())
        rng.shuffle(order)
        v = rng.randrange(n)
        r = rng.randrange(1, 5)
        assert s_r_set(g, order, v, r) == brute_s_r(g, order, v, r)
        pos = {u: i for i, u in enumerate(order)}
        assert s_r_set(g, order, v, 1) == {v} | {
            w for w in g.neighbors(v) if pos[w] < pos[v]
        }

    with pytest.raises(ValueError):
        s_r_set(p3, [0, 1, 2], 0, 0)


def exhaustive_col_r(g, r):
    best = None
    for order in permutations(g.vertices()):
        best = min(best or g.n + 1, col_r_of_order(g, order, r).value)
    return best


def test_col_r_exact_examples():
    assert col_r_exact(build_named("cycle", 5), 2).value == 3

    for n in (1, 2, 3, 4, 5):
        kn = build_named("complete", n)
        for r in (1, 2, 3):
            assert col_r_exact(kn, r).value == n

    with pytest.raises(ValueError):
        col_r_exact(build_named("path", COL_EXACT_CAP + 1), 1)


def test_col_r_exact_matches_brute_force():
    rng = seeded("colexact")
    for _ in range(40):
        n = rng.randrange(1, 6)
        g = random_graph(rng, n, rng.random())
        r = rng.randrange(1, 4)
        res = col_r_exact(g, r)
        assert res.value == exhaustive_col_r(g, r)
        assert res.value == max(res.per_vertex, default=0)
        assert col_r_of_order(g, res.order, r).value == res.value


def test_col_1_is_degeneracy_plus_one():
    # exhaustive over all labelled graphs on up to 4 vertices
    for n in (1, 2, 3, 4):
        pairs = list(combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            g = Graph(n, [e for i, e in enumerate(pairs) if mask >> i & 1])
            assert col_r_exact(g, 1).value == degeneracy(g)[0] + 1

    rng = seeded("col1")
    for _ in range(300):
        g = random_graph(rng, rng.randrange(1, 10), rng.random())
        d, peel = degeneracy(g)
        assert col_r_exact(g, 1).value == d + 1
        assert col_r_of_order(g, peel[::-1], 1).value == d + 1


def test_col_r_at_most_treewidth_plus_one():
    rng = seeded("coltw")
    for _ in range(100):
        g = random_graph(rng, rng.randrange(1, 10), rng.random() * 0.6)
        tw, _ = exact_treewidth(g)
        for r in (1, 2, 3):
            assert col_r_exact(g, r).value <= tw + 1


def test_monotone_in_r_for_fixed_order():
    rng = seeded("colmono")
    for _ in range(100):
        g = random_graph(rng, rng.randrange(1, 10), rng.random())
        order = list(g.vertices())
        rng.shuffle(order)
        vals = [col_r_of_order(g, order, r).value for r in (1, 2, 3, 4)]
        assert vals == sorted(vals)
        for v in g.vertices():
            prev = {v}
            for r in (1, 2, 3, 4):
                cur = s_r_set(g, order, v, r)
                assert prev <= cur
                prev = cur


def test_clique_prepend_cost():
    rng = seeded("colclique")
    for _ in range(60):
        n = rng.randrange(2, 9)
        g = random_graph(rng, n, 0.5)
        order = list(g.vertices())
        rng.shuffle(order)
        # glue a fresh clique of size c in front, joined to everything
        c = rng.randrange(1, 4)
        edges = list(g.edges())
        edges += [(u, v) for u, v in combinations(range(n, n + c), 2)]
        edges += [(u, v) for u in range(n) for v in range(n, n + c)]
        big = Graph(n + c, edges)
        new_order = list(range(n, n + c)) + order
        r = rng.randrange(1, 4)
        old = col_r_of_order(g, order, r).value
        new = col_r_of_order(big, new_order, r).value
        assert new <= old + c


def test_product_order_examples():
    k1 = build_named("complete", 1)
    from sgtk.treedecomp import TreeDecomposition

    td1 = TreeDecomposition({0: {0}}, [], root=0)
    po = product_order(k1, td1, 10, 0, check_r=(2,))
    assert col_r_of_order(po.graph, po.order, 2).value <= 5

    p4 = build_named("path", 4)
    _, td = exact_treewidth(p4)
    po = product_order(p4, td, 8, 0, check_r=(1,))
    assert col_r_of_order(po.graph, po.order, 1).value <= 6

    po_apex = product_order(p4, td, 8, 2, check_r=(1,))
    got = col_r_of_order(po_apex.graph, po_apex.order, 1).value
    assert got <= 6 + 2
    assert po_apex.order[:2] == (p4.n * 8, p4.n * 8 + 1)


def test_product_order_random_bound():
    rng = seeded("colprod")
    for _ in range(15):
        n = rng.randrange(1, 7)
        h = random_graph(rng, n, 0.4)
        _, td = exact_treewidth(h)
        m = rng.randrange(1, 6)
        a = rng.randrange(0, 3)
        product_order(h, td, m, a, check_r=(1, 2))  # raises on violation


def test_nabla_upper():
    assert nabla_upper(build_named("complete", 4), 1) == (8, True)

    tree = build_named("path", 7)
    nb = nabla_upper(tree, 1)
    assert nb.exact and nb.value <= 4

    nb = nabla_upper(build_named("grid", 3, 3), 1)
    assert nb.exact
    assert nb.value == 2 * col_r_exact(build_named("grid", 3, 3), 5).value

    big = build_named("grid", 4, 5)
    nb = nabla_upper(big, 1)
    assert not nb.exact and nb.value >= 2
