"""Generalized colouring numbers.

S_r(g, order, v) collects v itself plus every vertex w no later than v
reachable from v by a path of length at most r whose internal vertices
all come strictly after v.  col_r of an order is the largest such set;
col_r of a graph minimizes over orders.

The exact solver runs a subset dynamic programme over suffixes: the
reach count of v depends only on the SET of vertices placed after it,
so optimizing over orders is optimizing over chains of suffix sets.
"""

from typing import Dict, List, NamedTuple, Sequence, Set, Tuple

from .graphs import Graph, build_named, degeneracy
from .treedecomp import TreeDecomposition, normalize, validate
from .products import join, product

__all__ = [
    "COL_EXACT_CAP",
    "ColResult",
    "NablaBound",
    "ProductOrder",
    "col_r_exact",
    "col_r_of_order",
    "nabla_upper",
    "product_order",
    "s_r_set",
]

COL_EXACT_CAP = 9


class ColResult(NamedTuple):
    r: int
    value: int
    order: Tuple[int, ...]
    per_vertex: Tuple[int, ...]  # |S_r| per vertex, in vertex id order


def _reach(g: Graph, v: int, after: Set[int], r: int) -> Set[int]:
    """Vertices outside after+{v} reachable from v within r steps whose
    internal vertices all lie in after; v is always included."""
    dist = {v: 0}
    frontier = [v]
    found = {v}
    for d in range(r):
        nxt = []
        for u in frontier:
            for w in g.neighbors(u):
                if w in dist:
                    continue
                if w in after:
                    dist[w] = d + 1
                    if d + 1 < r:
                        nxt.append(w)
                else:
                    found.add(w)
        frontier = nxt
    return found


def s_r_set(g: Graph, order: Sequence[int], v: int, r: int) -> Set[int]:
    """Exact S_r set of v under the given total order."""
    if r < 1:
        raise ValueError("r must be at least 1")
    pos = {u: i for i, u in enumerate(order)}
    after = {u for u in g.vertices() if pos[u] > pos[v]}
    return _reach(g, v, after, r) - after


def col_r_of_order(g: Graph, order: Sequence[int], r: int) -> ColResult:
    """Evaluate the given order; upper-bounds the optimum."""
    per = [0] * g.n
    for v in g.vertices():
        per[v] = len(s_r_set(g, order, v, r))
    return ColResult(r, max(per, default=0), tuple(order), tuple(per))


def col_r_exact(g: Graph, r: int) -> ColResult:
    """Optimal col_r over all vertex orders, for graphs of at most
    COL_EXACT_CAP vertices."""
    if g.n > COL_EXACT_CAP:
        raise ValueError(f"n = {g.n} exceeds exact cap {COL_EXACT_CAP}")
    if g.n == 0:
        return ColResult(r, 0, (), ())
    verts = list(g.vertices())
    cost: Dict[Tuple[int, int], int] = {}

    def f(v: int, suffix: int) -> int:
        key = (v, suffix)
        if key not in cost:
            after = {verts[i] for i in range(g.n) if suffix >> i & 1}
            cost[key] = len(_reach(g, v, after, r) - after)
        return cost[key]

    full = (1 << g.n) - 1
    dp = [0] * (1 << g.n)
    choice = [0] * (1 << g.n)
    for s in range(1, full + 1):
        best, pick = None, -1
        for i in range(g.n):
            if not s >> i & 1:
                continue
            rest = s & ~(1 << i)
            val = max(dp[rest], f(verts[i], rest))
            if best is None or val < best:
                best, pick = val, i
        dp[s] = best
        choice[s] = pick
    order = []
    s = full
    while s:
        i = choice[s]
        order.append(verts[i])  # first vertex of the suffix s
        s &= ~(1 << i)
    res = col_r_of_order(g, order, r)
    assert res.value == dp[full]
    return res


class ProductOrder(NamedTuple):
    graph: Graph  # (h x P_m under strong product) joined with K_a
    order: Tuple[int, ...]
    bound: int  # (width(td_h)+1)(2r+1)+a is checked for each requested r


def product_order(
    h: Graph, td_h: TreeDecomposition, m: int, a: int, check_r: Sequence[int] = ()
) -> ProductOrder:
    """Order the strong product of h and a path, plus a joined apex clique.

    Apexes come first; product vertices follow sorted by (elimination
    rank of the h coordinate, path index).  The elimination rank is the
    introduction depth in the normalized decomposition, so every later
    path out of a product vertex can only exit through the vertex's own
    introduction bag.  For each r in check_r the realized value is
    compared against (width+1)(2r+1)+a and a violation raises.
    """
    err = validate(td_h, h)
    if err is not None:
        raise ValueError(err)
    if m < 1:
        raise ValueError("path length must be positive")
    nd = normalize(td_h, h)
    depth: Dict[int, int] = {nd.root: 0}
    for x in nd.depth_order():
        if x != nd.root:
            depth[x] = depth[nd.parent[x]] + 1
    rank = sorted(h.vertices(), key=lambda v: (depth[nd.vertex_to_node[v]], v))
    rank_of = {v: i for i, v in enumerate(rank)}

    base = product("strong", h, build_named("path", m))
    graph = join(base, build_named("complete", a)) if a else base
    order = [base.n + i for i in range(a)]
    order += sorted(range(base.n), key=lambda x: (rank_of[x // m], x % m))

    width = td_h.width()
    for r in check_r:
        got = col_r_of_order(graph, order, r).value
        bound = (width + 1) * (2 * r + 1) + a
        if got > bound:
            raise ValueError(
                f"order realizes col_{r} = {got}, above the bound {bound}"
            )
    return ProductOrder(graph, tuple(order), (width + 1) * (2 * max(check_r, default=1) + 1) + a)


class NablaBound(NamedTuple):
    value: int  # 2 * col_{4r+1}
    exact: bool  # True when col was computed by exhaustive search


def nabla_upper(g: Graph, r: int) -> NablaBound:
    """Upper bound on the density of r-shallow minors: twice col_{4r+1}.

    Exact when the graph is small enough for the exact solver, otherwise
    evaluated on the degeneracy order.
    """
    rr = 4 * r + 1
    if g.n <= COL_EXACT_CAP:
        return NablaBound(2 * col_r_exact(g, rr).value, True)
    _, peel = degeneracy(g)
    # peeled vertices keep few LATER neighbours, so reverse to keep few earlier
    return NablaBound(2 * col_r_of_order(g, peel[::-1], rr).value, False)
