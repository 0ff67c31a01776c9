import json

import networkx as nx
import pytest

from sgtk.graphs import Graph, build_named
from sgtk.io import (
    FORMATS,
    read_edgelist,
    read_graph,
    read_graph6,
    read_json_graph,
    write_dot,
    write_edgelist,
    write_graph,
    write_graph6,
    write_json_graph,
)

from helpers import random_graph, seeded


def test_edgelist_examples():
    g = read_edgelist("0 1\n1 2")
    assert g.n == 3
    assert sorted(g.edges()) == [(0, 1), (1, 2)]

    # header pins the vertex count, so isolated vertices survive
    g = read_edgelist("# n 5\n0 1\n")
    assert g.n == 5
    assert sorted(g.edges()) == [(0, 1)]

    assert read_edgelist("").n == 0
    assert read_edgelist("# n 3\n").n == 3


def test_edgelist_errors_name_the_line():
    with pytest.raises(ValueError, match="line 2"):
        read_edgelist("0 1\n1 2 3")
    with pytest.raises(ValueError, match="line 1"):
        read_edgelist("0 -1")
    with pytest.raises(ValueError, match="line 3"):
        read_edgelist("# n 2\n0 1\n1 2")


def test_edgelist_round_trip():
    rng = seeded("el-round")
    for _ in range(50):
        g = random_graph(rng, rng.randrange(0, 15), rng.random())
        h = read_edgelist(write_edgelist(g))
        assert h.n == g.n and sorted(h.edges()) == sorted(g.edges())


def test_graph6_against_networkx():
    rng = seeded("g6-oracle")
    for _ in range(100):
        n = rng.randrange(0, 21)
        g = random_graph(rng, n, rng.random())
        mine = write_graph6(g).strip()
        G = nx.Graph()
        G.add_nodes_from(range(n))
        G.add_edges_from(g.edges())
        assert mine == nx.to_graph6_bytes(G, header=False).decode().strip()
        h = read_graph6(mine)
        assert h.n == g.n and sorted(h.edges()) == sorted(g.edges())


def test_graph6_header_and_errors():
    assert read_graph6(">>graph6<<Bg").n == 3
    with pytest.raises(ValueError):
        read_graph6("")
    with pytest.raises(ValueError, match="byte"):
        read_graph6("B" + chr(30))  # payload character below the base offset
    with pytest.raises(ValueError):
        write_graph6(Graph(63, []))  # single-byte size limit


def test_json_graph_round_trip_and_errors():
    g = build_named("cylinder", 4, 3)
    h = read_json_graph(write_json_graph(g))
    assert h.n == g.n and sorted(h.edges()) == sorted(g.edges())
    with pytest.raises(ValueError, match="byte"):
        read_json_graph('{"n": 2,')
    with pytest.raises(ValueError):
        read_json_graph('{"n": 2}')  # missing edges


def test_dot_emit_only():
    text = write_dot(build_named("complete", 3))
    assert text.count(";") == 6  # 3 nodes + 3 edges
    assert text.count("--") == 3
    with pytest.raises(ValueError, match="emit-only"):
        read_graph(text, "dot")


def test_dispatch_round_trip_all_readable_formats():
    g = build_named("grid", 3, 4)
    for fmt in FORMATS:
        text = write_graph(g, fmt)
        if fmt == "dot":
            continue
        h = read_graph(text, fmt)
        assert h.n == g.n and sorted(h.edges()) == sorted(g.edges())
    with pytest.raises(ValueError):
        write_graph(g, "adjacency")
