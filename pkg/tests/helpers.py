"""Shared test helpers: seeded random graphs and networkx conversion (networkx
is used in tests only, as an oracle independent of src/)."""

import random

import networkx as nx

from sgtk.graphs import Graph
from sgtk.planar_routing import TriangulatedWindow


def random_graph(rng, n, p):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(n, edges)


def random_connected_graph(rng, n, p):
    """Random graph plus a random spanning tree to force connectivity."""
    edges = set()
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        j = rng.randrange(i)
        u, v = order[i], order[j]
        edges.add((min(u, v), max(u, v)))
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.add((u, v))
    return Graph(n, edges)


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def stacked_triangulation(rng, n):
    """Planar triangulation grown by repeatedly placing a new vertex inside a
    random face of a triangle.  Always K5-minor-free (it stays planar)."""
    assert n >= 3
    edges = {(0, 1), (0, 2), (1, 2)}
    faces = [(0, 1, 2)]
    for v in range(3, n):
        i = rng.randrange(len(faces))
        a, b, c = faces[i]
        edges |= {(a, v), (b, v), (c, v)}
        faces[i] = (a, b, v)
        faces.append((a, c, v))
        faces.append((b, c, v))
    return Graph(n, edges)


def triangulated_grid(rng, rows, cols):
    """Grid with one random diagonal per cell: planar, treewidth about
    min(rows, cols)."""
    def vid(i, j):
        return i * cols + j

    edges = []
    for i in range(rows):
        for j in range(cols):
            if j + 1 < cols:
                edges.append((vid(i, j), vid(i, j + 1)))
            if i + 1 < rows:
                edges.append((vid(i, j), vid(i + 1, j)))
            if i + 1 < rows and j + 1 < cols:
                if rng.random() < 0.5:
                    edges.append((vid(i, j), vid(i + 1, j + 1)))
                else:
                    edges.append((vid(i, j + 1), vid(i + 1, j)))
    return Graph(rows * cols, edges)


def random_window(rng, rows, cols):
    """Triangulated window with one random diagonal bit per cell."""
    bits = [rng.randrange(2) for _ in range((rows - 1) * (cols - 1))]
    return TriangulatedWindow(rows, cols, bits)


def seeded(name):
    """One deterministic RNG per test, keyed by name."""
    return random.Random(f"sgtk-{name}")
