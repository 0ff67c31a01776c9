"""Chordal partitions of graphs without a large complete minor.

The pipeline grows a rooted tree of finished parts.  Each step picks the
smallest-id vertex not yet in a finished part, connects it to the
attachment vertices of the ancestor parts by a union of geodesics (a
connector), makes that union a new finished part, and turns the leftover
components into fresh leaves.  Every finished part carries distance
coordinates measured from the roots of its ancestors' regions, a
geodesic path per ancestor neighbour, and a bandwidth witness order.

If the input has a complete minor on t parts the loop runs into either
a quotient clique of size t or a leaf whose neighbour parts exhaust all
t-1 colours; both surface as KtMinorFound carrying verified branch sets.
"""

import json
from itertools import permutations
from typing import Dict, FrozenSet, List, NamedTuple, Optional, Sequence, Set, Tuple

from .graphs import Graph
from .chordal import is_chordal, max_clique_size
from .colnum import ColResult, col_r_of_order
from .universal import ColouredTree, g_of

__all__ = [
    "ChordalPartitionCert",
    "Connector",
    "ConnectorError",
    "KtMinorFound",
    "MINOR_ORACLE_CAP",
    "cert_from_json",
    "cert_to_json",
    "chordal_partition_kt",
    "is_kt_minor_free_small",
    "partition_order_colr",
    "s_connector",
    "verify_cert",
    "verify_connector",
]

MINOR_ORACLE_CAP = 12
_PERM_CAP = 8  # widest level for which witness permutations are searched


class ConnectorError(ValueError):
    """Raised when no verified connector was found; names the failed check."""


class KtMinorFound(Exception):
    """Structured refutation: t disjoint connected pairwise-adjacent vertex sets."""

    def __init__(self, t: int, branch_sets: List[Tuple[int, ...]]):
        self.t = t
        self.branch_sets = branch_sets
        super().__init__(f"found a complete minor on {t} branch sets")


class Connector(NamedTuple):
    root: int
    paths: Tuple[Tuple[int, ...], ...]  # geodesics from root, one per target
    vertices: FrozenSet[int]
    witness: Tuple[int, ...]  # bandwidth witness order on the union


# -- bandwidth witness --------------------------------------------------


def _levels_by_distance(vertices: Set[int], dist: Dict[int, int]) -> List[List[int]]:
    depth = max(dist[v] for v in vertices)
    levels: List[List[int]] = [[] for _ in range(depth + 1)]
    for v in sorted(vertices):
        levels[dist[v]].append(v)
    return levels


def _blocked_order(g: Graph, vertices: Set[int], dist: Dict[int, int]) -> Tuple[Tuple[int, ...], int]:
    """Best order that keeps distance levels contiguous: DP over per-level
    permutations.  Returns (order, its bandwidth on g[vertices])."""
    levels = _levels_by_distance(vertices, dist)
    if max(len(lv) for lv in levels) > _PERM_CAP:
        order = [v for lv in levels for v in lv]
        return tuple(order), _bandwidth_of(g, vertices, order)
    offsets = [0]
    for lv in levels:
        offsets.append(offsets[-1] + len(lv))

    def within(perm, off):
        worst = 0
        pos = {v: off + i for i, v in enumerate(perm)}
        for i, v in enumerate(perm):
            for w in g.neighbors(v):
                if w in pos:
                    worst = max(worst, abs(pos[v] - pos[w]))
        return worst

    def between(prev, perm, off_prev, off):
        worst = 0
        pos = {v: off_prev + i for i, v in enumerate(prev)}
        for i, v in enumerate(perm):
            for w in g.neighbors(v):
                if w in pos:
                    worst = max(worst, abs(off + i - pos[w]))
        return worst

    state: Dict[Tuple[int, ...], Tuple[int, Tuple[Tuple[int, ...], ...]]] = {}
    for perm in permutations(levels[0]):
        state[perm] = (within(perm, 0), (perm,))
    for d in range(1, len(levels)):
        nxt: Dict[Tuple[int, ...], Tuple[int, Tuple[Tuple[int, ...], ...]]] = {}
        for perm in permutations(levels[d]):
            w_cost = within(perm, offsets[d])
            best = None
            for prev, (cost, trail) in state.items():
                cand = max(cost, w_cost, between(prev, perm, offsets[d - 1], offsets[d]))
                if best is None or cand < best[0]:
                    best = (cand, trail + (perm,))
            nxt[perm] = best
        state = nxt
    cost, trail = min(state.values())
    return tuple(v for perm in trail for v in perm), cost


def _bandwidth_of(g: Graph, vertices: Set[int], order: Sequence[int]) -> int:
    pos = {v: i for i, v in enumerate(order)}
    worst = 0
    for v in vertices:
        for w in g.neighbors(v):
            if w in pos and v < w:
                worst = max(worst, abs(pos[v] - pos[w]))
    return worst


# -- connectors ---------------------------------------------------------


def _bfs_tree(g: Graph, root: int, region: Optional[Set[int]] = None):
    """(dist, parent) over the region by BFS; the lowest-id vertex at each
    distance is dequeued first, so parents are deterministic."""
    allowed = region if region is not None else set(g.vertices())
    dist = {root: 0}
    parent = {root: root}
    frontier = [root]
    while frontier:
        nxt = []
        for u in frontier:
            for w in g.neighbors(u):
                if w in allowed and w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    nxt.append(w)
        frontier = sorted(nxt)
    return dist, parent


def _tree_path(parent: Dict[int, int], root: int, target: int) -> Tuple[int, ...]:
    path = [target]
    while path[-1] != root:
        path.append(parent[path[-1]])
    return tuple(reversed(path))


def verify_connector(g: Graph, conn: Connector, k: int, region: Optional[Set[int]] = None) -> Optional[str]:
    """None when conn satisfies all connector properties for parameter k
    inside g restricted to region (default: all of g); else the violated
    property."""
    allowed = region if region is not None else set(g.vertices())
    X = conn.vertices
    if not X <= allowed:
        return "containment: connector leaves its region"
    dist, _ = _bfs_tree(g, conn.root, allowed)
    for path in conn.paths:
        if path[0] != conn.root:
            return "geodesic: path does not start at the root"
        for i, v in enumerate(path):
            if v not in dist or dist[v] != i:
                return "geodesic: path is not a shortest path"
            if i and not g.has_edge(path[i - 1], v):
                return "geodesic: consecutive vertices not adjacent"
    union = {v for path in conn.paths for v in path} | {conn.root}
    if union != X:
        return "union: vertex set is not the union of the paths"
    if sorted(conn.witness) != sorted(X):
        return "bandwidth: witness order is not a permutation of the set"
    if _bandwidth_of(g, X, conn.witness) > k - 1:
        return f"bandwidth: witness exceeds {k - 1}"
    for v in allowed - X:
        if sum(1 for w in g.neighbors(v) if w in X) > 2 * k - 2:
            return f"outside-degree: vertex {v} has more than {2 * k - 2} neighbours inside"
    return None


def _all_geodesics(g: Graph, dist: Dict[int, int], target: int, region: Set[int], cap: int) -> List[Tuple[int, ...]]:
    """Every shortest path from the BFS source to target, up to cap."""
    out: List[Tuple[int, ...]] = []

    def back(chain):
        if len(out) >= cap:
            return
        v = chain[-1]
        if dist[v] == 0:
            out.append(tuple(reversed(chain)))
            return
        for w in sorted(g.neighbors(v)):
            if w in region and dist.get(w) == dist[v] - 1:
                back(chain + [w])

    back([target])
    return out


def _connector_in(g: Graph, region: Set[int], targets: Sequence[int], root: int, k: int) -> Connector:
    """Connector on root+targets inside g[region]; BFS-tree geodesics first,
    exhaustive geodesic tuples as fallback for small regions."""
    dist, parent = _bfs_tree(g, root, region)
    for v in targets:
        if v not in dist:
            raise ConnectorError("region: target not reachable from the root")
    paths = tuple(_tree_path(parent, root, v) for v in targets)
    X = {v for p in paths for v in p} | {root}
    witness, _ = _blocked_order(g, X, dist)
    conn = Connector(root, paths, frozenset(X), witness)
    err = verify_connector(g, conn, k, region)
    if err is None:
        return conn

    if len(region) <= MINOR_ORACLE_CAP:
        distinct = sorted(set(targets) - {root})
        choices = [_all_geodesics(g, dist, v, region, cap=64) for v in distinct]
        budget = 5000

        def assemble(i, chosen):
            nonlocal budget
            if budget <= 0:
                return None
            if i == len(distinct):
                budget -= 1
                by_target = dict(zip(distinct, chosen))
                cand_paths = tuple(
                    by_target[v] if v != root else (root,) for v in targets
                )
                Xc = {v for p in cand_paths for v in p} | {root}
                wit, _ = _blocked_order(g, Xc, dist)
                cand = Connector(root, cand_paths, frozenset(Xc), wit)
                if verify_connector(g, cand, k, region) is None:
                    return cand
                return None
            for path in choices[i]:
                got = assemble(i + 1, chosen + [path])
                if got is not None:
                    return got
            return None

        got = assemble(0, [])
        if got is not None:
            return got
    raise ConnectorError(err)


def s_connector(g: Graph, s: Set[int], r: int) -> Connector:
    """A verified S-connector rooted at r in connected g."""
    s = set(s)
    if len(s) < 2:
        raise ValueError("need at least two vertices to connect")
    if r not in s:
        raise ValueError("root must belong to the set")
    if not g.is_connected():
        raise ValueError("graph must be connected")
    targets = sorted(s - {r})
    return _connector_in(g, set(g.vertices()), targets, r, len(s))


# -- the partition pipeline --------------------------------------------


class _Part(NamedTuple):
    vertices: Tuple[int, ...]
    parent: int  # index of the parent part, -1 for the root part
    colour: int
    root: int
    paths: Tuple[Tuple[int, ...], ...]
    coords: Dict[int, Tuple[int, ...]]  # v -> (v_0..v_m, v_star)
    witness: Tuple[int, ...]


class ChordalPartitionCert:
    """Finished parts in creation order plus the tree, colours and labels."""

    def __init__(self, t: int, parts: List[_Part]):
        self.t = t
        self.parts = parts
        self.part_of = {v: i for i, p in enumerate(parts) for v in p.vertices}

    def depth(self, i: int) -> int:
        d = 0
        while self.parts[i].parent >= 0:
            i = self.parts[i].parent
            d += 1
        return d

    def ancestors(self, i: int) -> List[int]:
        """Indices from the root part down to i itself."""
        chain = [i]
        while self.parts[chain[-1]].parent >= 0:
            chain.append(self.parts[chain[-1]].parent)
        return chain[::-1]

    def quotient_edges(self, g: Graph) -> List[Tuple[int, int]]:
        seen = set()
        for u, v in g.edges():
            a, b = self.part_of[u], self.part_of[v]
            if a != b:
                seen.add((min(a, b), max(a, b)))
        return sorted(seen)

    def labels(self, g: Graph) -> Dict[int, Tuple[int, int]]:
        """part -> (m, a): depth plus the index of the part's
        coordinate-labelled shape in a run-local registry."""
        reg_h: Dict[Tuple[int, str], int] = {}
        part_label = {}
        for i, part in enumerate(self.parts):
            m = self.depth(i)
            key = (m, _part_canon(part, g))
            reg_h.setdefault(key, sum(1 for mm, _ in reg_h if mm == m) + 1)
            part_label[i] = (m, reg_h[key])
        return part_label


def _part_canon(part: _Part, g: Graph) -> str:
    verts = sorted(part.coords.values())
    edges = sorted(
        sorted([list(part.coords[u]), list(part.coords[v])])
        for u in part.vertices
        for v in part.vertices
        if u < v and g.has_edge(u, v)
    )
    return json.dumps([verts, edges], separators=(",", ":"))


def _regions(g: Graph, cert: ChordalPartitionCert) -> List[Set[int]]:
    """Region of each part: the component containing it after removing all
    strict-ancestor parts."""
    out = []
    for i in range(len(cert.parts)):
        chain = cert.ancestors(i)
        removed = set()
        for j in chain[:-1]:
            removed.update(cert.parts[j].vertices)
        allowed = set(g.vertices()) - removed
        seed = cert.parts[i].vertices[0]
        dist = g.bfs_dist({seed}, allowed=allowed)
        out.append({v for v in allowed if dist[v] >= 0})
    return out


def chordal_partition_kt(g: Graph, t: int) -> ChordalPartitionCert:
    """Run the partition loop; returns a verified certificate or raises
    KtMinorFound with verified branch sets."""
    if t < 3:
        raise ValueError("t must be at least 3")
    if g.n == 0 or not g.is_connected():
        raise ValueError("graph must be nonempty and connected")

    parts: List[_Part] = []
    regions: List[Set[int]] = []
    dist_cache: List[Dict[int, int]] = []

    def refute(sets: List[Set[int]]):
        sets = sets[:t]
        assert len(sets) == t
        for a in range(t):
            assert _is_connected_subset(g, sets[a])
            for b in range(a + 1, t):
                assert not (sets[a] & sets[b])
                assert any(g.has_edge(u, w) for u in sets[a] for w in sets[b])
        raise KtMinorFound(t, [tuple(sorted(x)) for x in sets])

    # the first part is the singleton {0}; its leftover components are leaves
    parts.append(_Part((0,), -1, 0, 0, (), {0: (0, 1)}, (0,)))
    regions.append(set(g.vertices()))
    dist_cache.append(_bfs_tree(g, 0, regions[0])[0])

    leaves: List[Tuple[FrozenSet[int], int, int]] = []  # (vertices, parent part, colour)

    def add_leaf(comp: FrozenSet[int], nbr_parts: List[int]):
        used = {parts[i].colour for i in nbr_parts}
        free = [c for c in range(t - 1) if c not in used]
        if not free:
            # one neighbour part per colour plus comp: t pairwise-adjacent sets
            rep: Dict[int, int] = {}
            for i in nbr_parts:
                rep.setdefault(parts[i].colour, i)
            refute([set(comp)] + [set(parts[i].vertices) for i in rep.values()])
        parent = max(nbr_parts, key=lambda i: len(cert_chain(i)))
        leaves.append((comp, parent, free[0]))

    def cert_chain(i: int) -> List[int]:
        chain = [i]
        while parts[chain[-1]].parent >= 0:
            chain.append(parts[chain[-1]].parent)
        return chain[::-1]

    part_of_finished: Dict[int, int] = {0: 0}

    for comp_verts in _components_within(g, set(g.vertices()) - {0}):
        nbrs = sorted({part_of_finished[w] for v in comp_verts for w in g.neighbors(v) if w in part_of_finished})
        add_leaf(comp_verts, nbrs)

    while leaves:
        uj = min(min(comp) for comp, _, _ in leaves)
        pick = next(idx for idx, (comp, _, _) in enumerate(leaves) if uj in comp)
        A, parent_hint, colour_A = leaves.pop(pick)

        nbr_parts = sorted(
            {part_of_finished[w] for v in A for w in g.neighbors(v) if w in part_of_finished},
            key=lambda i: len(cert_chain(i)),
        )
        if len(nbr_parts) + 1 > t - 1:
            refute([set(A)] + [set(parts[i].vertices) for i in nbr_parts])
        for a in range(len(nbr_parts)):
            for b in range(a + 1, len(nbr_parts)):
                pa, pb = parts[nbr_parts[a]], parts[nbr_parts[b]]
                assert any(
                    g.has_edge(u, w) for u in pa.vertices for w in pb.vertices
                ), "ancestor neighbours of a leaf stopped being a clique"
        parent = nbr_parts[-1]
        assert parent == parent_hint

        attach = [
            min(v for v in A if any(w in parts[i].vertices for w in g.neighbors(v)))
            for i in nbr_parts
        ]
        s = len(attach)
        region_A = set(A)
        conn = _connector_in(g, region_A, attach, uj, t - 1) if attach else Connector(
            uj, (), frozenset({uj}), (uj,)
        )

        chain = cert_chain(parent)
        coords: Dict[int, Tuple[int, ...]] = {}
        own_dist = _bfs_tree(g, uj, region_A)[0]
        for v in sorted(conn.vertices):
            cs = [dist_cache[x][v] for x in chain]
            cs.append(own_dist[v])
            star = 1
            for p, path in enumerate(conn.paths, start=1):
                if v in path:
                    star = p
                    break
            coords[v] = tuple(cs) + (star,)

        index = len(parts)
        parts.append(_Part(tuple(sorted(conn.vertices)), parent, colour_A, uj, conn.paths, coords, conn.witness))
        regions.append(region_A)
        dist_cache.append(own_dist)
        for v in conn.vertices:
            part_of_finished[v] = index

        for comp_verts in _components_within(g, region_A - conn.vertices):
            nbrs = sorted({part_of_finished[w] for v in comp_verts for w in g.neighbors(v) if w in part_of_finished})
            add_leaf(comp_verts, nbrs)

    cert = ChordalPartitionCert(t, parts)
    err = verify_cert(g, cert, t)
    assert err is None, err
    return cert


def _components_within(g: Graph, allowed: Set[int]) -> List[FrozenSet[int]]:
    out = []
    left = set(allowed)
    while left:
        seed = min(left)
        dist = g.bfs_dist({seed}, allowed=left)
        comp = frozenset(v for v in left if dist[v] >= 0)
        out.append(comp)
        left -= comp
    return sorted(out, key=min)


def _is_connected_subset(g: Graph, vs: Set[int]) -> bool:
    if not vs:
        return False
    dist = g.bfs_dist({min(vs)}, allowed=set(vs))
    return all(dist[v] >= 0 for v in vs)


# -- certificate verification -------------------------------------------


def verify_cert(g: Graph, cert: ChordalPartitionCert, t: int) -> Optional[str]:
    """None when the certificate satisfies every membership rule, else a
    string naming the violated rule and its location."""
    parts = cert.parts
    seen: Set[int] = set()
    for i, p in enumerate(parts):
        if set(p.vertices) & seen:
            return f"partition: part {i} overlaps another part"
        seen.update(p.vertices)
        if not _is_connected_subset(g, set(p.vertices)):
            return f"connectivity: part {i} is not connected"
    if seen != set(g.vertices()):
        return "partition: parts do not cover the graph"

    for i, p in enumerate(parts):
        if i == 0:
            if p.parent != -1:
                return "tree: part 0 must be the root"
        elif not (0 <= p.parent < i):
            return f"tree: part {i} needs an earlier parent"
        if not (0 <= p.colour <= t - 2):
            return f"colouring: part {i} colour out of range"

    qedges = cert.quotient_edges(g)
    quot = Graph(len(parts), qedges)

    # quotient must be a subgraph of the tree-colouring operator graph
    addr: Dict[int, Tuple[int, ...]] = {0: ()}
    kids: Dict[int, int] = {}
    for i, p in enumerate(parts):
        if i == 0:
            continue
        slot = kids.get(p.parent, 0)
        kids[p.parent] = slot + 1
        addr[i] = addr[p.parent] + (slot,)
    tree = ColouredTree({addr[i]: parts[i].colour for i in range(len(parts))})
    op_graph, _, addrs = g_of(tree)
    op_index = {a: i for i, a in enumerate(addrs)}
    allowed_edges = {
        (min(u, v), max(u, v))
        for u, v in op_graph.edges()
    }
    for a, b in qedges:
        pa, pb = op_index[addr[a]], op_index[addr[b]]
        if (min(pa, pb), max(pa, pb)) not in allowed_edges:
            return f"quotient: edge {a}-{b} not justified by the coloured tree"

    if not is_chordal(quot):
        return "quotient: not chordal"
    if max_clique_size(quot, stop_at=t) >= t:
        return f"quotient: clique of size {t}"

    regions = _regions(g, cert)
    roots = [p.root for p in parts]

    for i, p in enumerate(parts):
        m = cert.depth(i)
        region = regions[i]
        if not set(p.vertices) <= region:
            return f"region: part {i} escapes its region"
        dist, _ = _bfs_tree(g, p.root, region)

        for v in p.vertices:
            c = p.coords.get(v)
            if c is None or len(c) != m + 2:
                return f"coordinates: part {i} vertex {v} has wrong arity"
            if not 1 <= c[-1] <= t - 2:
                return f"coordinates: part {i} vertex {v} star index out of range"
        rooted = [v for v in p.vertices if p.coords[v][-2] == 0]
        if rooted != [p.root]:
            return f"root: part {i} must have exactly one vertex at distance zero"
        pairs = {(p.coords[v][-2], p.coords[v][-1]) for v in p.vertices}
        if len(pairs) != len(p.vertices):
            return f"injectivity: part {i} repeats a (distance, path) pair"

        chain = cert.ancestors(i)
        for li, anc in enumerate(chain):
            adist, _ = _bfs_tree(g, roots[anc], regions[anc])
            for v in p.vertices:
                if adist.get(v) != p.coords[v][li]:
                    return f"coordinates: part {i} vertex {v} wrong at level {li}"

        for v in p.vertices:
            for w in g.neighbors(v):
                if w in p.coords and v < w:
                    for li in range(m + 1):
                        if abs(p.coords[v][li] - p.coords[w][li]) > 1:
                            return f"lipschitz: edge {v}-{w} inside part {i} at level {li}"

        for pp, path in enumerate(p.paths, start=1):
            if path[0] != p.root:
                return f"geodesic: part {i} path {pp} does not start at the root"
            for step, v in enumerate(path):
                if dist.get(v) != step:
                    return f"geodesic: part {i} path {pp} is not shortest in the region"
                if step and not g.has_edge(path[step - 1], v):
                    return f"geodesic: part {i} path {pp} breaks adjacency"
        union = {v for path in p.paths for v in path} | {p.root}
        if union != set(p.vertices):
            return f"union: part {i} is not the union of its paths"
        for v in p.vertices:
            star = p.coords[v][-1]
            if p.paths and (star > len(p.paths) or v not in p.paths[star - 1]):
                return f"star-class: part {i} vertex {v} not on its declared path"

        if sorted(p.witness) != sorted(p.vertices):
            return f"bandwidth: part {i} witness is not a permutation"
        if _bandwidth_of(g, set(p.vertices), p.witness) > t - 2:
            return f"bandwidth: part {i} exceeds {t - 2}"

        for v in region - set(p.vertices):
            if sum(1 for w in g.neighbors(v) if w in p.coords) > 2 * t - 4:
                return f"outside-degree: vertex {v} against part {i}"

    for a, b in qedges:
        if cert.depth(a) > cert.depth(b):
            a, b = b, a
        pa, pb = parts[a], parts[b]
        m = cert.depth(a)
        if a not in cert.ancestors(b)[:-1]:
            return f"tree: quotient edge {a}-{b} joins unrelated parts"
        for w in pb.vertices:
            hits = [v for v in g.neighbors(w) if v in pa.coords]
            if len(hits) > 2 * t - 4:
                return f"cross-degree: vertex {w} has too many neighbours in part {a}"
            for v in hits:
                for li in range(m + 1):
                    if abs(pa.coords[v][li] - pb.coords[w][li]) > 1:
                        return f"lipschitz: cross edge {v}-{w} at level {li}"
    return None


# -- colouring-number order ---------------------------------------------


def partition_order_colr(g: Graph, cert: ChordalPartitionCert, r: int) -> ColResult:
    """Evaluate col_r on the ancestors-first part order, vertices within a
    part by (distance from part root, path index)."""
    err = verify_cert(g, cert, cert.t)
    if err is not None:
        raise ValueError(err)
    children: Dict[int, List[int]] = {}
    for i, p in enumerate(cert.parts):
        if p.parent >= 0:
            children.setdefault(p.parent, []).append(i)
    order: List[int] = []
    stack = [0]
    while stack:
        i = stack.pop()
        p = cert.parts[i]
        order.extend(sorted(p.vertices, key=lambda v: (p.coords[v][-2], p.coords[v][-1])))
        stack.extend(reversed(children.get(i, [])))
    res = col_r_of_order(g, order, r)
    t = cert.t
    assert res.value <= (t - 2) * (t - 1) * (2 * r + 1)
    return res


# -- exhaustive minor oracle --------------------------------------------


def is_kt_minor_free_small(g: Graph, t: int) -> bool:
    """Exhaustive branch-set search for a complete minor on t sets."""
    if g.n > MINOR_ORACLE_CAP:
        raise ValueError(f"n = {g.n} exceeds oracle cap {MINOR_ORACLE_CAP}")
    if t <= 1:
        return g.n < t
    n = g.n
    assign = [-1] * n  # -1 unused, otherwise branch-set index

    def feasible(v: int, used: int) -> bool:
        # each set must end up connected and adjacent to every other set;
        # quick check: a set split into pieces needs unassigned vertices
        # adjacent to each piece
        for s in range(used):
            members = [u for u in range(n) if assign[u] == s]
            pieces = _pieces(g, members)
            if len(pieces) > 1:
                for piece in pieces:
                    if not any(
                        assign[w] == -1 and w >= v
                        for u in piece
                        for w in g.neighbors(u)
                    ):
                        return False
        return True

    def done(used: int) -> bool:
        if used < t:
            return False
        sets = [[u for u in range(n) if assign[u] == s] for s in range(t)]
        for s in range(t):
            if len(_pieces(g, sets[s])) != 1:
                return False
        for a in range(t):
            for b in range(a + 1, t):
                if not any(g.has_edge(u, w) for u in sets[a] for w in sets[b]):
                    return False
        return True

    def rec(v: int, used: int) -> bool:
        if done(used):
            return True
        if v == n or used + (n - v) < t:
            return False
        for s in range(min(used + 1, t)):
            assign[v] = s
            if feasible(v + 1, max(used, s + 1)) and rec(v + 1, max(used, s + 1)):
                return True
        assign[v] = -1
        return rec(v + 1, used)

    return not rec(0, 0)


def _pieces(g: Graph, members: List[int]) -> List[Set[int]]:
    left = set(members)
    out = []
    while left:
        seed = min(left)
        dist = g.bfs_dist({seed}, allowed=set(members))
        comp = {v for v in left if dist[v] >= 0}
        out.append(comp)
        left -= comp
    return out


# -- serialization ------------------------------------------------------


def cert_to_json(cert: ChordalPartitionCert, g: Graph) -> str:
    part_label = cert.labels(g)
    edge_reg: Dict[str, int] = {}
    edge_label = {}
    for a, b in cert.quotient_edges(g):
        if cert.depth(a) > cert.depth(b):
            a, b = b, a
        cross = sorted(
            [list(cert.parts[a].coords[u]), list(cert.parts[b].coords[v])]
            for u in cert.parts[a].vertices
            for v in cert.parts[b].vertices
            if g.has_edge(u, v)
        )
        canon = json.dumps(
            [_part_canon(cert.parts[a], g), _part_canon(cert.parts[b], g), cross],
            separators=(",", ":"),
        )
        edge_reg.setdefault(canon, len(edge_reg) + 1)
        edge_label[f"{a},{b}"] = edge_reg[canon]
    obj = {
        "version": 1,
        "t": cert.t,
        "parts": [
            {
                "vertices": list(p.vertices),
                "parent": p.parent,
                "colour": p.colour,
                "root": p.root,
                "paths": [list(path) for path in p.paths],
                "coords": {str(v): list(c) for v, c in sorted(p.coords.items())},
                "witness": list(p.witness),
                "label": list(part_label[i]),
            }
            for i, p in enumerate(cert.parts)
        ],
        "edge_labels": edge_label,
    }
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def cert_from_json(text: str) -> ChordalPartitionCert:
    obj = json.loads(text)
    if obj.get("version") != 1:
        raise ValueError("unknown certificate version")
    parts = [
        _Part(
            tuple(rec["vertices"]),
            rec["parent"],
            rec["colour"],
            rec["root"],
            tuple(tuple(path) for path in rec["paths"]),
            {int(v): tuple(c) for v, c in rec["coords"].items()},
            tuple(rec["witness"]),
        )
        for rec in obj["parts"]
    ]
    return ChordalPartitionCert(obj["t"], parts)
