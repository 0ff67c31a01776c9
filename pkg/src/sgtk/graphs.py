"""Finite simple graphs with dense integer vertex ids, plus the small-instance
oracles (isomorphism, degeneracy, minimal separators) shared by every other
module.  Vertices are always 0..n-1; anything with external names keeps its own
side table and translates at the boundary.
"""

from collections import deque
from itertools import combinations


class Graph:
    """Immutable undirected simple graph.

    Build with Graph(n, edges).  Loops are rejected, parallel edges collapse.
    """

    __slots__ = ("n", "_adj", "_sets")

    def __init__(self, n, edges=()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        sets = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            sets[u].add(v)
            sets[v].add(u)
        self.n = n
        self._sets = [frozenset(s) for s in sets]
        self._adj = [tuple(sorted(s)) for s in sets]

    # -- basic queries -------------------------------------------------

    def neighbors(self, v):
        return self._adj[v]

    def degree(self, v):
        return len(self._adj[v])

    def has_edge(self, u, v):
        return v in self._sets[u]

    def nbr_set(self, v):
        return self._sets[v]

    def vertices(self):
        return range(self.n)

    def edges(self):
        """All edges as (u, v) with u < v, lexicographic."""
        return [(u, v) for u in range(self.n) for v in self._adj[u] if u < v]

    @property
    def m(self):
        return sum(len(a) for a in self._adj) // 2

    def edge_set(self):
        return frozenset((u, v) for u in range(self.n) for v in self._adj[u] if u < v)

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    # -- derived graphs ------------------------------------------------

    def with_edges(self, extra):
        """New graph with the extra edges added (same vertex set)."""
        return Graph(self.n, list(self.edges()) + list(extra))

    def subgraph(self, vs):
        """Induced subgraph on vs.  Returns (graph, mapping) where
        mapping[new_id] = old_id, in increasing old-id order."""
        mapping = sorted(set(vs))
        inv = {old: new for new, old in enumerate(mapping)}
        edges = [(inv[u], inv[v]) for u, v in self.edges() if u in inv and v in inv]
        return Graph(len(mapping), edges), mapping

    # -- traversal -----------------------------------------------------

    def bfs_dist(self, sources, allowed=None):
        """Distance from the nearest source; unreachable vertices get -1.
        allowed, if given, restricts the search to that vertex set
        (sources outside it are ignored)."""
        if isinstance(sources, int):
            sources = [sources]
        dist = [-1] * self.n
        q = deque()
        for s in sources:
            if allowed is not None and s not in allowed:
                continue
            if dist[s] == -1:
                dist[s] = 0
                q.append(s)
        while q:
            u = q.popleft()
            for w in self._adj[u]:
                if dist[w] == -1 and (allowed is None or w in allowed):
                    dist[w] = dist[u] + 1
                    q.append(w)
        return dist

    def components(self, within=None):
        """Connected components (sorted vertex lists), ordered by min vertex."""
        if within is None:
            pool = set(range(self.n))
        else:
            pool = set(within)
        comps = []
        while pool:
            root = min(pool)
            dist = self.bfs_dist([root], allowed=pool)
            comp = sorted(v for v in pool if dist[v] >= 0)
            comps.append(comp)
            pool -= set(comp)
        return comps

    def is_connected(self):
        if self.n == 0:
            return True
        return len(self.components()) == 1

    def shortest_path(self, u, v, allowed=None):
        """One shortest u-v path as a vertex list, or None.  BFS parent trace,
        smallest-id tie break."""
        if allowed is not None and (u not in allowed or v not in allowed):
            return None
        parent = {u: None}
        q = deque([u])
        while q:
            x = q.popleft()
            if x == v:
                path = []
                while x is not None:
                    path.append(x)
                    x = parent[x]
                return path[::-1]
            for w in self._adj[x]:
                if w not in parent and (allowed is None or w in allowed):
                    parent[w] = x
                    q.append(w)
        return None


class Orientation:
    """A direction for every edge of a base graph."""

    def __init__(self, base, directed_edges):
        seen = set()
        out = [[] for _ in range(base.n)]
        inn = [[] for _ in range(base.n)]
        for u, v in directed_edges:
            if not base.has_edge(u, v):
                raise ValueError(f"({u},{v}) is not an edge of the base graph")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"edge {key} directed twice")
            seen.add(key)
            out[u].append(v)
            inn[v].append(u)
        if len(seen) != base.m:
            raise ValueError("orientation must cover every edge exactly once")
        self.base = base
        self.out = [tuple(sorted(x)) for x in out]
        self.inn = [tuple(sorted(x)) for x in inn]

    def out_nbrs(self, v):
        return self.out[v]

    def in_nbrs(self, v):
        return self.inn[v]

    def out_degree(self, v):
        return len(self.out[v])

    def in_degree(self, v):
        return len(self.inn[v])

    def max_out_degree(self):
        return max((len(x) for x in self.out), default=0)

    def is_acyclic(self):
        indeg = [len(x) for x in self.inn]
        q = deque(v for v in range(self.base.n) if indeg[v] == 0)
        seen = 0
        while q:
            v = q.popleft()
            seen += 1
            for w in self.out[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    q.append(w)
        return seen == self.base.n


class Layering:
    """Ordered partition of the vertices such that every edge joins the same
    or consecutive classes."""

    def __init__(self, layers):
        self.layers = [tuple(sorted(layer)) for layer in layers]
        self.pos = {}
        for i, layer in enumerate(self.layers):
            for v in layer:
                if v in self.pos:
                    raise ValueError(f"vertex {v} in two layers")
                self.pos[v] = i

    def __len__(self):
        return len(self.layers)

    def index_of(self, v):
        return self.pos[v]

    def validate(self, g):
        """Check the partition covers V(g) and edges stay within one step."""
        if sorted(self.pos) != list(range(g.n)):
            return False
        return all(abs(self.pos[u] - self.pos[v]) <= 1 for u, v in g.edges())


# -- named families ----------------------------------------------------


def build_named(family, *params):
    """Construct a named graph family.

    Families and canonical numbering:
      complete n            K_n, vertices 0..n-1
      complete_bipartite m n  left part 0..m-1, right part m..m+n-1
      path m                P_m with m vertices 0-1-...-(m-1)
      cycle l               C_l, 0-1-...-(l-1)-0; needs l >= 3
      grid l m              P_l x P_m grid, l rows, m columns, (i,j) -> i*m+j
      cylinder l m          C_l x P_m, cycle position i, path position j -> i*m+j
      triapex k             three mutually nonadjacent apexes 0,1,2 each joined
                            to every vertex of a k-clique {3,...,k+2}
    """
    if any(p <= 0 for p in params):
        raise ValueError(f"{family}: parameters must be positive, got {params}")
    if family == "complete":
        (n,) = params
        return Graph(n, combinations(range(n), 2))
    if family == "complete_bipartite":
        m, n = params
        return Graph(m + n, [(i, m + j) for i in range(m) for j in range(n)])
    if family == "path":
        (m,) = params
        return Graph(m, [(i, i + 1) for i in range(m - 1)])
    if family == "cycle":
        (l,) = params
        if l < 3:
            raise ValueError("cycle needs length >= 3")
        return Graph(l, [(i, (i + 1) % l) for i in range(l)])
    if family == "grid":
        l, m = params
        edges = []
        for i in range(l):
            for j in range(m):
                if j + 1 < m:
                    edges.append((i * m + j, i * m + j + 1))
                if i + 1 < l:
                    edges.append((i * m + j, (i + 1) * m + j))
        return Graph(l * m, edges)
    if family == "cylinder":
        l, m = params
        if l < 3:
            raise ValueError("cylinder needs cycle length >= 3")
        edges = []
        for i in range(l):
            for j in range(m):
                if j + 1 < m:
                    edges.append((i * m + j, i * m + j + 1))
                edges.append((i * m + j, ((i + 1) % l) * m + j))
        return Graph(l * m, edges)
    if family == "triapex":
        (k,) = params
        xs = range(3, 3 + k)
        edges = list(combinations(xs, 2))
        edges += [(a, x) for a in (0, 1, 2) for x in xs]
        return Graph(k + 3, edges)
    raise ValueError(f"unknown family {family!r}")


# -- small-instance oracles --------------------------------------------

ISO_CAP = 10


def is_isomorphic_small(a, b):
    """Exact isomorphism test by backtracking, capped at ISO_CAP vertices."""
    if a.n > ISO_CAP or b.n > ISO_CAP:
        raise ValueError(f"isomorphism oracle capped at {ISO_CAP} vertices")
    if a.n != b.n or a.m != b.m:
        return False
    if sorted(a.degree(v) for v in a.vertices()) != sorted(
        b.degree(v) for v in b.vertices()
    ):
        return False

    image = [-1] * a.n
    used = [False] * b.n

    def extend(v):
        if v == a.n:
            return True
        for w in range(b.n):
            if used[w] or a.degree(v) != b.degree(w):
                continue
            ok = True
            for u in range(v):
                if a.has_edge(v, u) != b.has_edge(w, image[u]):
                    ok = False
                    break
            if ok:
                image[v] = w
                used[w] = True
                if extend(v + 1):
                    return True
                image[v] = -1
                used[w] = False
        return False

    return extend(0)


def degeneracy(g):
    """(d, order): repeatedly remove a minimum-degree vertex (smallest id on
    ties); d is the largest degree seen at removal time."""
    deg = [g.degree(v) for v in g.vertices()]
    alive = set(g.vertices())
    order = []
    best = 0
    while alive:
        v = min(alive, key=lambda x: (deg[x], x))
        best = max(best, deg[v])
        order.append(v)
        alive.discard(v)
        for w in g.neighbors(v):
            if w in alive:
                deg[w] -= 1
    return best, order


def bfs_layering(g, roots):
    """Layering by BFS distance from roots.  Components not touching any root
    are layered from their own smallest vertex and the layer lists are
    concatenated component by component."""
    roots = set(roots)
    if not roots:
        raise ValueError("roots must be nonempty")
    layers = []
    for comp in g.components():
        comp_roots = roots & set(comp)
        if not comp_roots:
            comp_roots = {comp[0]}
        dist = g.bfs_dist(comp_roots, allowed=set(comp))
        by_d = {}
        for v in comp:
            by_d.setdefault(dist[v], []).append(v)
        layers.extend(by_d[d] for d in sorted(by_d))
    return Layering(layers)


SEPARATOR_CAP = 14


def minimal_ab_separators_small(g, a, b):
    """All inclusion-minimal a-b separators, by exhaustive subset check."""
    if g.n > SEPARATOR_CAP:
        raise ValueError(f"separator oracle capped at {SEPARATOR_CAP} vertices")
    if g.has_edge(a, b):
        raise ValueError("a and b are adjacent, no separator exists")

    rest = [v for v in g.vertices() if v not in (a, b)]

    def separates(block):
        dist = g.bfs_dist([a], allowed=set(g.vertices()) - set(block))
        return dist[b] == -1

    found = []
    for r in range(len(rest) + 1):
        for sub in combinations(rest, r):
            if not separates(sub):
                continue
            # minimal iff dropping any single vertex reconnects a to b
            if all(not separates(sub[:i] + sub[i + 1 :]) for i in range(len(sub))):
                found.append(frozenset(sub))
    return sorted(found, key=lambda s: (len(s), sorted(s)))
