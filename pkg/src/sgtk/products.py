"""Graph products, joins, quotients, and layered partitions.

The two conversion routines turn a partition with small layered width
into a verified embedding of the graph into quotient x path x clique
(strong product), and back again.  Part indexing is canonical: parts are
sorted by their minimal contained vertex, so round trips are comparable
without bookkeeping.
"""

from typing import Dict, List, NamedTuple, Sequence, Tuple

from .graphs import Graph, Layering, build_named
from .universal import verify_embedding

__all__ = [
    "LayeredPartition",
    "ProductVertex",
    "embedding_to_partition",
    "join",
    "partition_to_embedding",
    "product",
    "pv_id",
    "quotient",
    "strong_path_clique",
]


class ProductVertex(NamedTuple):
    """Coordinates in host x path x clique."""

    h: int
    p: int
    q: int


def product(kind: str, a: Graph, b: Graph) -> Graph:
    """Cartesian, direct, or strong product; vertex (i, j) becomes i*b.n + j."""
    if kind not in ("cartesian", "direct", "strong"):
        raise ValueError(f"unknown product kind {kind!r}")

    def edges():
        for i in a.vertices():
            for j in b.vertices():
                base = i * b.n + j
                if kind in ("cartesian", "strong"):
                    for j2 in b.neighbors(j):
                        if j2 > j:
                            yield base, i * b.n + j2
                    for i2 in a.neighbors(i):
                        if i2 > i:
                            yield base, i2 * b.n + j
                if kind in ("direct", "strong"):
                    for i2 in a.neighbors(i):
                        for j2 in b.neighbors(j):
                            if i2 > i:
                                yield base, i2 * b.n + j2

    return Graph(a.n * b.n, list(edges()))


def join(a: Graph, b: Graph) -> Graph:
    """Disjoint union plus every edge between the two sides; b is shifted by a.n."""
    edges = list(a.edges())
    edges += [(u + a.n, v + a.n) for u, v in b.edges()]
    edges += [(u, v + a.n) for u in a.vertices() for v in b.vertices()]
    return Graph(a.n + b.n, edges)


def _canonical_parts(g: Graph, partition: Sequence[Sequence[int]]) -> List[Tuple[int, ...]]:
    parts = [tuple(sorted(part)) for part in partition]
    if any(not part for part in parts):
        raise ValueError("empty part")
    seen = [v for part in parts for v in part]
    if len(seen) != g.n or set(seen) != set(g.vertices()):
        raise ValueError("partition does not partition the vertex set")
    return sorted(parts, key=lambda part: part[0])


def quotient(g: Graph, partition: Sequence[Sequence[int]]) -> Graph:
    """Contract each part to a single vertex; parts are adjacent iff some edge crosses."""
    parts = _canonical_parts(g, partition)
    part_of = {v: i for i, part in enumerate(parts) for v in part}
    edges = {
        (min(part_of[u], part_of[v]), max(part_of[u], part_of[v]))
        for u, v in g.edges()
        if part_of[u] != part_of[v]
    }
    return Graph(len(parts), sorted(edges))


class LayeredPartition:
    """A vertex partition together with a layering; width is computed, not declared."""

    __slots__ = ("parts", "layering", "width")

    def __init__(self, g: Graph, partition: Sequence[Sequence[int]], layering: Layering):
        self.parts = _canonical_parts(g, partition)
        if not layering.validate(g):
            raise ValueError("layering does not fit the graph")
        self.layering = layering
        width = 0
        for part in self.parts:
            by_layer: Dict[int, int] = {}
            for v in part:
                by_layer[layering.pos[v]] = by_layer.get(layering.pos[v], 0) + 1
            width = max(width, max(by_layer.values()))
        self.width = width


def strong_path_clique(h: Graph, m: int, l: int) -> Graph:
    """The host graph h x P_m x K_l under the strong product."""
    return product("strong", product("strong", h, build_named("path", m)), build_named("complete", l))


def pv_id(pv: ProductVertex, m: int, l: int) -> int:
    """Integer vertex id of a ProductVertex inside strong_path_clique(h, m, l)."""
    return (pv.h * m + pv.p) * l + pv.q


def partition_to_embedding(g: Graph, lp: LayeredPartition) -> Dict[int, ProductVertex]:
    """Place each vertex at (part index, layer index, index within part-and-layer).

    The returned map is checked to be a genuine subgraph embedding into
    quotient x P_m x K_width before it is handed back.
    """
    part_of = {v: i for i, part in enumerate(lp.parts) for v in part}
    counters: Dict[Tuple[int, int], int] = {}
    mapping = {}
    for part in lp.parts:
        for v in part:  # parts are sorted, so q indices follow vertex order
            key = (part_of[v], lp.layering.pos[v])
            q = counters.get(key, 0)
            counters[key] = q + 1
            mapping[v] = ProductVertex(part_of[v], lp.layering.pos[v], q)

    m = len(lp.layering.layers)
    host = strong_path_clique(quotient(g, lp.parts), m, lp.width)
    flat = {v: pv_id(pv, m, lp.width) for v, pv in mapping.items()}
    assert verify_embedding(g, host, flat)
    return mapping


def embedding_to_partition(
    h: Graph, m: int, l: int, g: Graph, mapping: Dict[int, ProductVertex]
) -> LayeredPartition:
    """Read a partition back off an embedding of g into h x P_m x K_l.

    Parts are the nonempty preimages of h-vertices, layers the preimages
    of path indices; the map is re-verified first and rejected if it is
    not an embedding.
    """
    for v, pv in mapping.items():
        if not (0 <= pv.h < h.n and 0 <= pv.p < m and 0 <= pv.q < l):
            raise ValueError(f"coordinate out of range for vertex {v}")
    flat = {v: pv_id(pv, m, l) for v, pv in mapping.items()}
    if not verify_embedding(g, strong_path_clique(h, m, l), flat):
        raise ValueError("map is not an embedding into host x path x clique")

    by_h: Dict[int, List[int]] = {}
    max_p = 0
    for v, pv in mapping.items():
        by_h.setdefault(pv.h, []).append(v)
        max_p = max(max_p, pv.p)
    parts = [sorted(vs) for _, vs in sorted(by_h.items())]
    layers = [set() for _ in range(max_p + 1)]
    for v, pv in mapping.items():
        layers[pv.p].add(v)
    lp = LayeredPartition(g, parts, Layering(layers))
    assert lp.width <= l

    quot = quotient(g, lp.parts)
    to_h = [mapping[part[0]].h for part in lp.parts]
    for i, j in quot.edges():
        assert h.has_edge(to_h[i], to_h[j])
    return lp
