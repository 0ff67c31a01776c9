"""Chordal graphs: recognition with a perfect-elimination or chordless-cycle
witness, simplicial k-orientations, clique trees, the minimal-separators-are-
cliques test, and exact chordal completion under clique / wheel-like subgraph
constraints.
"""

from itertools import combinations

from .graphs import Graph, Orientation
from .treedecomp import TreeDecomposition


class Peo:
    """Perfect elimination order.  order[0] is eliminated first; for every v
    the neighbours of v that occur later in the order form a clique (that is
    the reverse of the maximum-cardinality-search visit order)."""

    def __init__(self, order, simplicial_witness):
        self.order = list(order)
        self.simplicial_witness = list(simplicial_witness)

    def __repr__(self):
        return f"Peo({self.order})"


def _mcs_order(g):
    """Maximum cardinality search visit order, lowest vertex id on ties."""
    weight = [0] * g.n
    visited = []
    left = set(g.vertices())
    while left:
        v = min(left, key=lambda x: (-weight[x], x))
        visited.append(v)
        left.discard(v)
        for w in g.neighbors(v):
            if w in left:
                weight[w] += 1
    return visited


def recognize_chordal(g):
    """A Peo if g is chordal, otherwise a chordless cycle (vertex list,
    length >= 4)."""
    visit = _mcs_order(g)
    visit_pos = {v: i for i, v in enumerate(visit)}
    ok = True
    for i, v in enumerate(visit):
        earlier = [w for w in g.neighbors(v) if visit_pos[w] < i]
        for a, b in combinations(earlier, 2):
            if not g.has_edge(a, b):
                ok = False
                break
        if not ok:
            break
    if ok:
        order = visit[::-1]
        pos = {v: i for i, v in enumerate(order)}
        witness = []
        for v in order:
            later = [w for w in g.neighbors(v) if pos[w] > pos[v]]
            witness.append(all(g.has_edge(a, b) for a, b in combinations(later, 2)))
        assert all(witness)
        return Peo(order, witness)
    return _chordless_cycle(g)


def _chordless_cycle(g):
    """Some chordless cycle of length >= 4.  Scans triples (v, x, y) with x,y
    nonadjacent neighbours of v and closes them through G - (N[v] \\ {x,y});
    any chordless cycle shows up this way at each of its vertices."""
    best = None
    for v in g.vertices():
        nb = g.neighbors(v)
        for x, y in combinations(nb, 2):
            if g.has_edge(x, y):
                continue
            allowed = (set(g.vertices()) - set(nb) - {v}) | {x, y}
            path = g.shortest_path(x, y, allowed=allowed)
            if path is None:
                continue
            cycle = [v] + path
            if best is None or len(cycle) < len(best):
                best = cycle
    return best


def is_chordal(g):
    return isinstance(recognize_chordal(g), Peo)


def simplicial_k_orientation(g, k):
    """Acyclic orientation whose in-neighbourhoods are cliques of size <= k,
    or None.  None happens exactly when g is not chordal or contains a
    K_{k+2} subgraph."""
    res = recognize_chordal(g)
    if not isinstance(res, Peo):
        return None
    # direct each edge from the earlier-visited endpoint (later eliminated)
    pos = {v: i for i, v in enumerate(res.order)}
    directed = []
    indeg = [0] * g.n
    for u, v in g.edges():
        if pos[u] > pos[v]:
            directed.append((u, v))
            indeg[v] += 1
        else:
            directed.append((v, u))
            indeg[u] += 1
    if max(indeg, default=0) > k:
        return None
    o = Orientation(g, directed)
    assert o.is_acyclic()
    return o


def max_clique_size(g, stop_at=None):
    """Exact clique number by branch and bound; stops early once a clique of
    size stop_at is found."""
    best = 0
    vs = sorted(g.vertices(), key=g.degree, reverse=True)

    def grow(clique, cands):
        nonlocal best
        if len(clique) > best:
            best = len(clique)
        if stop_at is not None and best >= stop_at:
            return
        if len(clique) + len(cands) <= best:
            return
        for i, v in enumerate(cands):
            grow(clique + [v], [w for w in cands[i + 1 :] if g.has_edge(v, w)])
            if stop_at is not None and best >= stop_at:
                return

    grow([], vs)
    return best


def has_clique(g, size):
    if size <= 0:
        return True
    return max_clique_size(g, stop_at=size) >= size


def clique_tree(g):
    """Tree-decomposition of a chordal graph whose bags are exactly the
    maximal cliques (junction tree by maximum-weight spanning tree on
    intersection sizes)."""
    res = recognize_chordal(g)
    if not isinstance(res, Peo):
        raise ValueError("graph is not chordal")
    pos = {v: i for i, v in enumerate(res.order)}
    cliques = []
    for v in res.order:
        c = frozenset({v} | {w for w in g.neighbors(v) if pos[w] > pos[v]})
        cliques.append(c)
    maximal = [c for c in cliques if not any(c < d for d in cliques)]
    maximal = sorted(set(maximal), key=sorted)
    bags = dict(enumerate(maximal))
    if len(maximal) <= 1:
        return TreeDecomposition(bags, [], root=0 if maximal else None)
    # max-weight spanning forest over shared-vertex counts, then join any
    # leftover components (disconnected chordal graphs) with empty adhesions
    pairs = sorted(
        ((i, j) for i in bags for j in bags if i < j),
        key=lambda p: (-len(bags[p[0]] & bags[p[1]]), p),
    )
    rep = list(range(len(maximal)))

    def find(a):
        while rep[a] != a:
            rep[a] = rep[rep[a]]
            a = rep[a]
        return a

    edges = []
    for i, j in pairs:
        ri, rj = find(i), find(j)
        if ri != rj:
            rep[ri] = rj
            edges.append((i, j))
    return TreeDecomposition(bags, edges, root=0)


def minimal_separators_are_cliques(g):
    """True iff every minimal a-b separator (over all nonadjacent pairs) is a
    clique.  Exhaustive; agrees with chordality."""
    from .graphs import minimal_ab_separators_small

    for a, b in combinations(g.vertices(), 2):
        if g.has_edge(a, b):
            continue
        for sep in minimal_ab_separators_small(g, a, b):
            if any(not g.has_edge(u, v) for u, v in combinations(sorted(sep), 2)):
                return False
    return True


def contains_triapex(g, k):
    """True iff g contains (as a subgraph) a k-clique with three common
    neighbours outside it."""
    if k == 0:
        return g.n >= 3
    for clique in _cliques_of_size(g, k):
        common = set(g.vertices()) - set(clique)
        for v in clique:
            common &= g.nbr_set(v)
        if len(common) >= 3:
            return True
    return False


def _cliques_of_size(g, k):
    vs = list(g.vertices())

    def grow(clique, start):
        if len(clique) == k:
            yield tuple(clique)
            return
        for i in range(start, g.n):
            v = vs[i]
            if all(g.has_edge(v, u) for u in clique):
                clique.append(v)
                yield from grow(clique, i + 1)
                clique.pop()

    yield from grow([], 0)


COMPLETION_CAP = 12


def chordal_completion_exact(g, k, forbid_wk=False):
    """A chordal supergraph of g with no K_{k+2} subgraph (and, if forbid_wk,
    no k-clique with three common outside neighbours), or None.  Exact search
    branching on the chords of a shortest chordless cycle, memoized on the
    edge set.  Feasibility coincides with treewidth <= k (forbid_wk=False)
    and with simple treewidth <= k (forbid_wk=True)."""
    if g.n > COMPLETION_CAP:
        raise ValueError(f"completion search capped at {COMPLETION_CAP} vertices")
    seen = set()

    def admissible(h):
        if has_clique(h, k + 2):
            return False
        if forbid_wk and contains_triapex(h, k):
            return False
        return True

    def search(h):
        key = h.edge_set()
        if key in seen:
            return None
        seen.add(key)
        if not admissible(h):
            return None
        res = recognize_chordal(h)
        if isinstance(res, Peo):
            return h
        cycle = res
        # any chordal supergraph adds at least one chord of this cycle
        for i in range(len(cycle)):
            for j in range(i + 2, len(cycle)):
                if i == 0 and j == len(cycle) - 1:
                    continue
                out = search(h.with_edges([(cycle[i], cycle[j])]))
                if out is not None:
                    return out
        return None

    return search(g)
