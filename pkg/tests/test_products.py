from itertools import combinations

import pytest

from sgtk.graphs import Graph, Layering, bfs_layering, build_named
from sgtk.products import (
    LayeredPartition,
    ProductVertex,
    embedding_to_partition,
    join,
    partition_to_embedding,
    product,
    pv_id,
    quotient,
    strong_path_clique,
)

from helpers import seeded, random_connected_graph


def test_product_examples():
    k2 = build_named("complete", 2)
    assert product("strong", k2, k2).edge_set() == build_named("complete", 4).edge_set()

    p3 = build_named("path", 3)
    assert product("cartesian", p3, p3).edge_set() == build_named("grid", 3, 3).edge_set()

    d = product("direct", k2, k2)
    assert d.edge_set() == {(0, 3), (1, 2)}

    with pytest.raises(ValueError):
        product("tensorish", k2, k2)


def test_strong_is_union_of_cartesian_and_direct():
    # exhaustive over all labelled pairs on <= 3 vertices, then random 4/5-vertex pairs
    small = []
    for n in (1, 2, 3):
        pairs = list(combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            small.append(Graph(n, [e for i, e in enumerate(pairs) if mask >> i & 1]))
    for a in small:
        for b in small:
            got = product("strong", a, b).edge_set()
            want = product("cartesian", a, b).edge_set() | product("direct", a, b).edge_set()
            assert got == want

    rng = seeded("strongprod")
    for _ in range(60):
        na, nb = rng.randrange(1, 6), rng.randrange(1, 6)
        a = Graph(na, [e for e in combinations(range(na), 2) if rng.random() < 0.5])
        b = Graph(nb, [e for e in combinations(range(nb), 2) if rng.random() < 0.5])
        got = product("strong", a, b).edge_set()
        assert got == product("cartesian", a, b).edge_set() | product("direct", a, b).edge_set()


def test_join_examples():
    wheel = join(build_named("complete", 1), build_named("cycle", 4))
    assert wheel.n == 5
    assert wheel.degree(0) == 4
    assert sorted(wheel.degree(v) for v in range(1, 5)) == [3, 3, 3, 3]

    assert join(Graph(2, []), Graph(2, [])).edge_set() == build_named(
        "complete_bipartite", 2, 2
    ).edge_set()
    assert join(build_named("complete", 2), build_named("complete", 3)).edge_set() == build_named(
        "complete", 5
    ).edge_set()


def test_quotient_examples():
    g = build_named("grid", 3, 3)
    assert quotient(g, [[v] for v in g.vertices()]).edge_set() == g.edge_set()

    p4 = build_named("path", 4)
    assert quotient(p4, [[0, 1], [2, 3]]).edge_set() == {(0, 1)}

    rows = [[i * 3 + j for j in range(3)] for i in range(3)]
    assert quotient(g, rows).edge_set() == build_named("path", 3).edge_set()

    with pytest.raises(ValueError):
        quotient(p4, [[0, 1], [1, 2, 3]])
    with pytest.raises(ValueError):
        quotient(p4, [[0, 1], [2]])


def test_partition_to_embedding_examples():
    p5 = build_named("path", 5)
    lp = LayeredPartition(p5, [[v] for v in p5.vertices()], bfs_layering(p5, [0]))
    assert lp.width == 1
    mapping = partition_to_embedding(p5, lp)
    assert all(pv.q == 0 for pv in mapping.values())

    k4 = build_named("complete", 4)
    lp = LayeredPartition(k4, [list(k4.vertices())], Layering([set(k4.vertices())]))
    assert lp.width == 4
    mapping = partition_to_embedding(k4, lp)
    assert sorted(pv.q for pv in mapping.values()) == [0, 1, 2, 3]

    g = build_named("grid", 4, 5)
    rows = [[i * 5 + j for j in range(5)] for i in range(4)]
    lp = LayeredPartition(g, rows, Layering([set(r) for r in rows]))
    assert lp.width == 5
    partition_to_embedding(g, lp)  # verified internally


def test_round_trip():
    rng = seeded("roundtrip")
    for _ in range(100):
        n = rng.randrange(2, 21)
        g = random_connected_graph(rng, n, 0.2)
        layering = bfs_layering(g, [0])
        # random grouping that respects nothing in particular
        labels = [rng.randrange(1 + n // 2) for _ in range(n)]
        parts = {}
        for v, lab in enumerate(labels):
            parts.setdefault(lab, []).append(v)
        lp = LayeredPartition(g, list(parts.values()), layering)
        mapping = partition_to_embedding(g, lp)
        back = embedding_to_partition(
            quotient(g, lp.parts), len(layering.layers), lp.width, g, mapping
        )
        assert back.parts == lp.parts
        assert back.width == lp.width
        assert [set(l) for l in back.layering.layers] == [set(l) for l in layering.layers]


def test_embedding_to_partition_edge_cases():
    single = Graph(1, [])
    lp = embedding_to_partition(Graph(1, []), 1, 1, single, {0: ProductVertex(0, 0, 0)})
    assert lp.parts == [(0,)] and lp.width == 1

    h = build_named("path", 2)
    m, l = 2, 2
    host = strong_path_clique(h, m, l)
    identity = {}
    for hh in range(h.n):
        for p in range(m):
            for q in range(l):
                pv = ProductVertex(hh, p, q)
                identity[pv_id(pv, m, l)] = pv
    lp = embedding_to_partition(h, m, l, host, identity)
    assert lp.width == l

    # a non-embedding is rejected
    p3 = build_named("path", 3)
    bad = {0: ProductVertex(0, 0, 0), 1: ProductVertex(0, 1, 0), 2: ProductVertex(0, 3, 0)}
    with pytest.raises(ValueError):
        embedding_to_partition(build_named("complete", 1), 4, 1, p3, bad)


def test_direct_product_colour_pullback():
    rng = seeded("chi")
    k4 = build_named("complete", 4)
    for _ in range(50):
        n = rng.randrange(1, 12)
        g = Graph(n, [e for e in combinations(range(n), 2) if rng.random() < 0.5])
        prod = product("direct", g, k4)
        colour = {v: v % 4 for v in prod.vertices()}  # pull back K_4's colouring
        for u, v in prod.edges():
            assert colour[u] != colour[v]
