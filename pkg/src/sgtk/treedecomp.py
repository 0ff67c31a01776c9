"""Tree-decompositions: data model, validation, exact treewidth by subset
dynamic programming, normalization to a tree on V(G) with a greedy bag
colouring, torsos, balanced separations, and gluing copies of a base graph
along a spine tree.
"""

import json
from collections import deque

from .graphs import Graph


class TreeDecomposition:
    """Tree over node ids with one bag per node.

    The underlying tree must be connected and acyclic; the per-graph
    invariants (vertex coverage, bag subtrees, edge coverage) are checked by
    validate() because they need the graph.
    """

    def __init__(self, bags, edges, root=None):
        self.bags = {x: frozenset(b) for x, b in bags.items()}
        self.nodes = sorted(self.bags)
        self.edges = [(min(x, y), max(x, y)) for x, y in edges]
        self.root = root
        if root is not None and root not in self.bags:
            raise ValueError(f"root {root} is not a node")
        nbrs = {x: [] for x in self.nodes}
        for x, y in self.edges:
            if x not in nbrs or y not in nbrs:
                raise ValueError(f"tree edge ({x},{y}) uses unknown node")
            nbrs[x].append(y)
            nbrs[y].append(x)
        self._nbrs = nbrs
        if self.nodes:
            if len(self.edges) != len(self.nodes) - 1:
                raise ValueError("node/edge count does not form a tree")
            seen = {self.nodes[0]}
            q = deque(seen)
            while q:
                for y in nbrs[q.popleft()]:
                    if y not in seen:
                        seen.add(y)
                        q.append(y)
            if len(seen) != len(self.nodes):
                raise ValueError("tree is disconnected")

    def node_neighbors(self, x):
        return self._nbrs[x]

    def width(self):
        return max((len(b) for b in self.bags.values()), default=0) - 1

    def adhesion(self):
        return max((len(self.bags[x] & self.bags[y]) for x, y in self.edges), default=0)

    def bags_containing(self, v):
        return [x for x in self.nodes if v in self.bags[x]]

    # -- JSON schema: {"nodes":[{"id":..,"bag":[..]}],"edges":[[..]],"root":..}

    def to_json_obj(self):
        return {
            "nodes": [{"id": x, "bag": sorted(self.bags[x])} for x in self.nodes],
            "edges": sorted([list(e) for e in self.edges]),
            "root": self.root,
        }

    def to_json(self):
        return json.dumps(self.to_json_obj(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj):
        bags = {node["id"]: node["bag"] for node in obj["nodes"]}
        return cls(bags, [tuple(e) for e in obj["edges"]], obj.get("root"))

    @classmethod
    def from_json(cls, text):
        return cls.from_json_obj(json.loads(text))

    def __repr__(self):
        return f"TreeDecomposition(nodes={len(self.nodes)}, width={self.width()})"


def validate(td, g):
    """None if td is a valid tree-decomposition of g, else a message naming
    the first violation found."""
    covered = set()
    for b in td.bags.values():
        covered |= b
        for v in b:
            if not 0 <= v < g.n:
                return f"bag vertex {v} outside graph"
    for v in g.vertices():
        if v not in covered:
            return f"vertex {v} in no bag"
    for u, v in g.edges():
        if not any(u in b and v in b for b in td.bags.values()):
            return f"edge {u}-{v} not covered by any bag"
    for v in g.vertices():
        holding = [x for x in td.nodes if v in td.bags[x]]
        seen = {holding[0]}
        q = deque(seen)
        while q:
            for y in td.node_neighbors(q.popleft()):
                if y not in seen and v in td.bags[y]:
                    seen.add(y)
                    q.append(y)
        if len(seen) != len(holding):
            return f"vertex {v} bag set disconnected"
    return None


TW_CAP = 16  # the 4x4 grid needs all 16 vertices and still finishes fast


def exact_treewidth(g):
    """(treewidth, witness decomposition), exact, by elimination-order subset
    DP.  State = set of already-eliminated vertices; eliminating v after T
    costs the number of vertices outside T+v seen from v through T."""
    n = g.n
    if n > TW_CAP:
        raise ValueError(f"exact treewidth capped at {TW_CAP} vertices")
    if n == 0:
        return -1, TreeDecomposition({}, [])
    nbr = [0] * n
    for u, v in g.edges():
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u

    full = (1 << n) - 1
    # orN[S] = union of neighbourhoods over the vertices of S
    orN = [0] * (full + 1)
    for s in range(1, full + 1):
        low = s & -s
        orN[s] = orN[s ^ low] | nbr[low.bit_length() - 1]

    def cost(t_mask, v):
        allowed = t_mask | (1 << v)
        x = 1 << v
        while True:
            nx = (x | orN[x]) & allowed
            if nx == x:
                break
            x = nx
        return bin(orN[x] & ~allowed).count("1")

    INF = n + 1
    dp = [INF] * (full + 1)
    choice = [-1] * (full + 1)
    dp[0] = -1
    for s in range(1, full + 1):
        rest = s
        while rest:
            low = rest & -rest
            rest ^= low
            v = low.bit_length() - 1
            prev = s ^ low
            if dp[prev] >= dp[s]:
                continue
            c = max(dp[prev], cost(prev, v))
            if c < dp[s]:
                dp[s] = c
                choice[s] = v

    order_rev = []
    s = full
    while s:
        v = choice[s]
        order_rev.append(v)
        s ^= 1 << v
    order = order_rev[::-1]
    td = decomposition_from_order(g, order)
    assert td.width() == dp[full]
    return dp[full], td


def decomposition_from_order(g, order):
    """Tree-decomposition realized by an elimination order: bag of v is v plus
    its later neighbours in the fill-in; v's node hangs below the bag of its
    earliest later fill-neighbour."""
    pos = {v: i for i, v in enumerate(order)}
    fill = {v: set(g.neighbors(v)) for v in g.vertices()}
    bags = {}
    parent = {}
    for v in order:
        later = {w for w in fill[v] if pos[w] > pos[v]}
        bags[v] = later | {v}
        for a in later:
            fill[a] |= later - {a}
        if later:
            parent[v] = min(later, key=lambda w: pos[w])
    root = order[-1]
    edges = [(v, parent[v]) for v in parent]
    # vertices in other components than root's: chain their roots up arbitrarily
    comp_roots = [v for v in order if v not in parent and v != root]
    edges += [(v, root) for v in comp_roots]
    return TreeDecomposition(bags, edges, root=root)


class NormalizedDecomposition:
    """Tree on the vertex set itself: each node introduces exactly the vertex
    it is named after, the root bag is a singleton, every graph edge joins an
    ancestor/descendant pair, and the greedy colouring is distinct inside
    every bag."""

    def __init__(self, g, parent, root, bags, colouring):
        self.g = g
        self.parent = parent  # vertex -> parent vertex (root absent)
        self.root = root
        self.bags = {v: frozenset(b) for v, b in bags.items()}
        self.colouring = dict(colouring)
        self.vertex_to_node = {v: v for v in g.vertices()}

    def as_tree_decomposition(self):
        edges = [(v, p) for v, p in self.parent.items()]
        return TreeDecomposition(self.bags, edges, root=self.root)

    def depth_order(self):
        """Vertices in root-first BFS order of the tree."""
        children = {}
        for v, p in self.parent.items():
            children.setdefault(p, []).append(v)
        order = [self.root]
        q = deque([self.root])
        while q:
            x = q.popleft()
            for y in sorted(children.get(x, ())):
                order.append(y)
                q.append(y)
        return order

    def ancestors(self, v):
        """Strict ancestors, nearest first."""
        out = []
        while v != self.root:
            v = self.parent[v]
            out.append(v)
        return out

    def is_ancestor(self, u, v):
        """True if u is a strict ancestor of v."""
        while v != self.root:
            v = self.parent[v]
            if v == u:
                return True
        return False

    def width(self):
        return max(len(b) for b in self.bags.values()) - 1

    def check(self):
        """None if all invariants hold, else a message."""
        g = self.g
        if len(self.bags.get(self.root, ())) != 1 or self.root not in self.bags[self.root]:
            return "root bag is not the root singleton"
        for v in g.vertices():
            if v == self.root:
                continue
            if v not in self.parent:
                return f"vertex {v} missing from tree"
            diff = self.bags[v] - self.bags[self.parent[v]]
            if diff != {v}:
                return f"node {v} introduces {sorted(diff)} instead of itself"
        td = self.as_tree_decomposition()
        msg = validate(td, g)
        if msg:
            return msg
        for u, v in g.edges():
            if not (self.is_ancestor(u, v) or self.is_ancestor(v, u)):
                return f"edge {u}-{v} joins incomparable nodes"
        for b in self.bags.values():
            if len({self.colouring[v] for v in b}) != len(b):
                return f"colour clash inside bag {sorted(b)}"
        return None


def normalize(td, g):
    """Normalized decomposition per the standard construction: contract empty
    introductions, subdivide multi-vertex introductions, grow a chain above
    the root so it introduces a single vertex, then greedy-colour root-down."""
    msg = validate(td, g)
    if msg:
        raise ValueError(f"invalid decomposition: {msg}")
    if g.n == 0:
        raise ValueError("empty graph has no normalized decomposition")

    # work on a mutable rooted copy: nodes are fresh ints
    bags = {i: set(td.bags[x]) for i, x in enumerate(td.nodes)}
    nbrs = {i: set() for i in bags}
    index = {x: i for i, x in enumerate(td.nodes)}
    for x, y in td.edges:
        nbrs[index[x]].add(index[y])
        nbrs[index[y]].add(index[x])
    root = 0

    # contract child into parent while the child introduces nothing
    def contract_pass():
        changed = True
        while changed:
            changed = False
            order = [root]
            parent = {root: None}
            q = deque([root])
            while q:
                x = q.popleft()
                for y in nbrs[x]:
                    if y not in parent:
                        parent[y] = x
                        order.append(y)
                        q.append(y)
            for y in order[1:]:
                x = parent[y]
                if not bags[y] - bags[x]:
                    nbrs[x] |= nbrs[y] - {x, y}
                    for z in nbrs[y] - {x, y}:
                        nbrs[z].discard(y)
                        nbrs[z].add(x)
                    nbrs[x].discard(y)
                    del bags[y], nbrs[y]
                    changed = True
                    break

    contract_pass()

    # subdivide edges that introduce two or more vertices
    fresh = max(bags) + 1
    parent = {root: None}
    stack = [root]
    seen = {root}
    while stack:
        x = stack.pop()
        for y in list(nbrs[x]):
            if y in seen:
                continue
            seen.add(y)
            parent[y] = x
            intro = sorted(bags[y] - bags[x])
            if len(intro) >= 2:
                prev = x
                for i in range(len(intro) - 1):
                    z = fresh
                    fresh += 1
                    bags[z] = set(bags[y]) - set(intro[i + 1 :])
                    nbrs[z] = set()
                    nbrs[prev].discard(y)
                    nbrs[y].discard(prev)
                    nbrs[prev].add(z)
                    nbrs[z].add(prev)
                    prev = z
                nbrs[prev].add(y)
                nbrs[y].add(prev)
            stack.append(y)

    # grow a chain above the root until it introduces exactly one vertex
    rb = sorted(bags[root])
    while len(rb) > 1:
        z = fresh
        fresh += 1
        bags[z] = set(rb[:-1])
        nbrs[z] = {root}
        nbrs[root].add(z)
        root = z
        rb = rb[:-1]

    # rename nodes to their introduced vertex
    name = {}
    order = [root]
    par = {root: None}
    q = deque([root])
    while q:
        x = q.popleft()
        for y in nbrs[x]:
            if y not in par:
                par[y] = x
                order.append(y)
                q.append(y)
    for x in order:
        if par[x] is None:
            (v,) = bags[x]
        else:
            (v,) = bags[x] - bags[par[x]]
        name[x] = v

    vparent = {}
    vbags = {}
    for x in order:
        vbags[name[x]] = frozenset(bags[x])
        if par[x] is not None:
            vparent[name[x]] = name[par[x]]
    vroot = name[root]

    # greedy colouring, root first, never clashing inside the own bag
    colouring = {}
    for x in order:
        v = name[x]
        used = {colouring[w] for w in vbags[v] if w in colouring}
        c = 0
        while c in used:
            c += 1
        colouring[v] = c

    nd = NormalizedDecomposition(g, vparent, vroot, vbags, colouring)
    bad = nd.check()
    assert bad is None, bad
    return nd


def torso(td, g, x):
    """Torso at node x: induced bag subgraph plus a clique on every adhesion
    B_x ∩ B_y.  Vertex i of the result is sorted(B_x)[i]."""
    if x not in td.bags:
        raise ValueError(f"unknown node {x}")
    bag = sorted(td.bags[x])
    inv = {v: i for i, v in enumerate(bag)}
    edges = {(inv[u], inv[v]) for u, v in g.edges() if u in inv and v in inv}
    for y in td.node_neighbors(x):
        adh = sorted(td.bags[x] & td.bags[y])
        edges |= {
            (inv[u], inv[v]) for i, u in enumerate(adh) for v in adh[i + 1 :]
        }
    return Graph(len(bag), edges)


def balanced_separation(g, td):
    """(S, A, B): S is one bag, no A-B edge avoids S, and both sides have at
    most 2n/3 vertices.  Walks from an arbitrary node toward any too-heavy
    side until none exists, then packs components into two sides."""
    msg = validate(td, g)
    if msg:
        raise ValueError(f"invalid decomposition: {msg}")
    n = g.n
    x = td.nodes[0]
    prev = None
    while True:
        comps = _tree_components(td, x)
        weights = []
        for comp in comps:
            verts = set()
            for y in comp:
                verts |= td.bags[y]
            weights.append(verts - td.bags[x])
        heavy = [i for i, w in enumerate(weights) if 3 * len(w) > 2 * n]
        if not heavy:
            break
        nxt = next(y for y in comps[heavy[0]] if y in td.node_neighbors(x))
        prev, x = x, nxt

    # pack component vertex sets into two sides, heaviest first, lighter bin
    sides = [set(), set()]
    for w in sorted(weights, key=len, reverse=True):
        sides[0 if len(sides[0]) <= len(sides[1]) else 1] |= w
    a, b = sides
    return set(td.bags[x]), a, b


def _tree_components(td, x):
    """Components of the decomposition tree after deleting node x."""
    out = []
    seen = {x}
    for start in td.node_neighbors(x):
        if start in seen:
            continue
        comp = {start}
        q = deque([start])
        while q:
            for z in td.node_neighbors(q.popleft()):
                if z not in seen and z not in comp:
                    comp.add(z)
                    q.append(z)
        seen |= comp
        out.append(sorted(comp))
    return out


def glue_over(base, spine_edges, clique_pairs, adhesion_cap=None):
    """Glue one copy of base per spine node, identifying clique_pairs[i][1]
    in the child copy with clique_pairs[i][0] in the parent copy along each
    spine edge (parent, child).  Returns (graph, decomposition over base
    copies).  Spine nodes are 0..max mentioned; an empty spine means one copy.
    """
    nodes = {0}
    for p, c in spine_edges:
        nodes.add(p)
        nodes.add(c)
    nodes = sorted(nodes)
    if len(spine_edges) != len(nodes) - 1:
        raise ValueError("spine is not a tree")
    if len(clique_pairs) != len(spine_edges):
        raise ValueError("need one clique pair per spine edge")
    for pa, ch in clique_pairs:
        if len(pa) != len(ch):
            raise ValueError("identification lists differ in length")
        if adhesion_cap is not None and len(pa) > adhesion_cap:
            raise ValueError(f"identification of size {len(pa)} exceeds cap {adhesion_cap}")
        for lst in (pa, ch):
            if len(set(lst)) != len(lst):
                raise ValueError("identification list repeats a vertex")
            for i, u in enumerate(lst):
                for v in lst[i + 1 :]:
                    if not base.has_edge(u, v):
                        raise ValueError(f"identification set {lst} is not a clique")

    # union-find over (spine node, base vertex)
    rep = {(t, v): (t, v) for t in nodes for v in base.vertices()}

    def find(a):
        while rep[a] != a:
            rep[a] = rep[rep[a]]
            a = rep[a]
        return a

    for (p, c), (pa, ch) in zip(spine_edges, clique_pairs):
        for u, w in zip(pa, ch):
            ra, rb = find((p, u)), find((c, w))
            if ra != rb:
                rep[max(ra, rb)] = min(ra, rb)

    classes = sorted({find(key) for key in rep})
    ids = {cls: i for i, cls in enumerate(classes)}
    edges = set()
    for t in nodes:
        for u, v in base.edges():
            a, b = ids[find((t, u))], ids[find((t, v))]
            edges.add((min(a, b), max(a, b)))
    glued = Graph(len(classes), edges)
    bags = {
        t: {ids[find((t, v))] for v in base.vertices()} for t in nodes
    }
    td = TreeDecomposition(bags, spine_edges, root=nodes[0])
    return glued, td


def k_simple_validate(td, g, k):
    """True iff every k-set of vertices is contained in at most two bags."""
    from itertools import combinations

    if td.width() > k:
        raise ValueError("decomposition wider than k")
    count = {}
    for x in td.nodes:
        for sub in combinations(sorted(td.bags[x]), k):
            count[sub] = count.get(sub, 0) + 1
            if count[sub] > 2:
                return False
    return True
