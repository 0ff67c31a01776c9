"""Finite truncations of the universal treewidth-k graphs, the coloured-tree
graph operator, spanning-tree extraction from simplicial orientations, and the
constructive embedding of any treewidth-k graph into a truncation.

A coloured tree's vertices are addresses: tuples of naturals, parent = all but
the last entry.  The graph operator joins an ancestor v to a descendant w
exactly when v's colour appears on no other vertex of the v-w tree path,
endpoints included.
"""

import random
from typing import NamedTuple

from .graphs import Graph, Orientation
from .treedecomp import TreeDecomposition, exact_treewidth, glue_over, normalize, validate
from .chordal import simplicial_k_orientation


def addr_to_str(addr):
    return "[" + ",".join(str(x) for x in addr) + "]"


def str_to_addr(text):
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ValueError(f"bad address {text!r}")
    body = body[1:-1].strip()
    return tuple(int(x) for x in body.split(",")) if body else ()


def addr_sort_key(addr):
    return (len(addr), addr)


class ColouredTree:
    """Rooted tree of addresses with per-vertex colour and label and optional
    per-edge label (keyed by the child address)."""

    def __init__(self, colour, vlabel=None, elabel=None):
        self.colour = dict(colour)
        if () not in self.colour:
            raise ValueError("root address () missing")
        for addr in self.colour:
            if addr and addr[:-1] not in self.colour:
                raise ValueError(f"parent of {addr} missing")
        self.vlabel = {a: 0 for a in self.colour}
        if vlabel:
            self.vlabel.update(vlabel)
        self.elabel = {a: 0 for a in self.colour if a}
        if elabel:
            self.elabel.update(elabel)
        self.children = {a: [] for a in self.colour}
        for addr in self.colour:
            if addr:
                self.children[addr[:-1]].append(addr)
        for a in self.children:
            self.children[a].sort()

    def vertices_sorted(self):
        return sorted(self.colour, key=addr_sort_key)

    def __len__(self):
        return len(self.colour)


def g_of(tree):
    """(graph, ancestor-to-descendant orientation, address list).  Vertex i of
    the graph is address list[i]; addresses are sorted by (length, lex)."""
    addrs = tree.vertices_sorted()
    index = {a: i for i, a in enumerate(addrs)}
    directed = []
    for w in addrs:
        seen = {tree.colour[w]}
        u = w
        while u:
            u = u[:-1]
            cu = tree.colour[u]
            if cu not in seen:
                directed.append((index[u], index[w]))
                seen.add(cu)
    graph = Graph(len(addrs), directed)
    orient = Orientation(graph, directed)
    return graph, orient, addrs


def g_of_definitional(tree):
    """Independent slow evaluation of the operator: scan every ancestor /
    descendant pair and count the ancestor's colour along the whole path."""
    addrs = tree.vertices_sorted()
    index = {a: i for i, a in enumerate(addrs)}
    edges = []
    for w in addrs:
        for cut in range(len(w)):
            v = w[:cut]
            path = [w[:i] for i in range(cut, len(w) + 1)]
            if sum(1 for x in path if tree.colour[x] == tree.colour[v]) == 1:
                edges.append((index[v], index[w]))
    return Graph(len(addrs), edges)


class TruncationParams(NamedTuple):
    depth: int
    mult: int = 1
    label_alphabet: int = 1


TK_VERTEX_CAP = 60000


def tk_trunc(k, p):
    """Finite portion of the universal treewidth-k graph: every vertex
    coloured i has exactly p.mult children of each (colour != i, label) class,
    down to p.depth.  Child j of a vertex encodes (colour index, label, slot)
    as j = (colour_index * alphabet + label) * mult + slot."""
    if k < 1 or p.depth < 1 or p.mult < 1 or p.label_alphabet < 1:
        raise ValueError("parameters must be positive")
    branching = k * p.mult * p.label_alphabet
    total, level = 1, 1
    for _ in range(p.depth):
        level *= branching
        total += level
        if total > TK_VERTEX_CAP:
            raise ValueError(f"truncation would exceed {TK_VERTEX_CAP} vertices")

    colour = {(): 0}
    vlabel = {(): 0}
    frontier = [()]
    for _ in range(p.depth):
        nxt = []
        for addr in frontier:
            own = colour[addr]
            others = [c for c in range(k + 1) if c != own]
            for ci, col in enumerate(others):
                for lab in range(p.label_alphabet):
                    for slot in range(p.mult):
                        j = (ci * p.label_alphabet + lab) * p.mult + slot
                        child = addr + (j,)
                        colour[child] = col
                        vlabel[child] = lab
                        nxt.append(child)
        frontier = nxt
    tree = ColouredTree(colour, vlabel)
    graph, _, _ = g_of(tree)
    return graph, tree


def trunc_colours(k, p, addr):
    """Colours along the root-to-addr chain of the tk_trunc tree, decoded from
    the address alone (entry j encodes (colour index, label, slot), so the
    truncation never has to be materialized).  Validates depth and entry
    ranges.  Returns len(addr)+1 colours, root first."""
    if len(addr) > p.depth:
        raise ValueError(f"address deeper than {p.depth}: {addr}")
    colours = [0]
    for pos, j in enumerate(addr):
        if not 0 <= j < k * p.mult * p.label_alphabet:
            raise ValueError(f"address entry {j} out of range at position {pos}")
        others = [c for c in range(k + 1) if c != colours[-1]]
        colours.append(others[j // (p.label_alphabet * p.mult)])
    return tuple(colours)


def rk_trunc(k, depth):
    """Rooted truncation of the k-ary universal construction: every vertex
    has one child per colour other than its own (address entries are the
    colours themselves), plus its canonical decomposition with bags = closed
    in-neighbourhoods.  The decomposition is k-simple."""
    if k < 1 or depth < 1:
        raise ValueError("parameters must be positive")
    colour = {(): 0}
    frontier = [()]
    for _ in range(depth):
        nxt = []
        for addr in frontier:
            for c in range(k + 1):
                if c == colour[addr]:
                    continue
                child = addr + (c,)
                colour[child] = c
                nxt.append(child)
        frontier = nxt
    tree = ColouredTree(colour)
    graph, orient, addrs = g_of(tree)
    index = {a: i for i, a in enumerate(addrs)}
    bags = {i: {i} | set(orient.in_nbrs(i)) for i in range(len(addrs))}
    edges = [(index[a[:-1]], index[a]) for a in addrs if a]
    td = TreeDecomposition(bags, edges, root=index[()])
    return graph, td


def sk_trunc(k, spine_size, seed, depth=2):
    """Random gluing of rk_trunc copies along a spine tree with clique
    identifications of size at most k-1; simple treewidth stays at most k."""
    if spine_size < 1:
        raise ValueError("spine_size must be positive")
    base, _ = rk_trunc(k, depth)
    rng = random.Random(seed)
    spine = [(rng.randrange(c), c) for c in range(1, spine_size)]
    pairs = []
    if k == 1:
        pairs = [((), ())] * len(spine)
    else:
        cliques = _cliques_up_to(base, k - 1)
        for _ in spine:
            size = rng.randrange(1, k)
            pool = cliques[size]
            pairs.append((list(rng.choice(pool)), list(rng.choice(pool))))
    pairs = [(list(a), list(b)) for a, b in pairs]
    glued, td = glue_over(base, spine, pairs, adhesion_cap=max(k - 1, 0))
    return glued, td


def _cliques_up_to(g, s):
    """cliques[t] = all cliques of size t, 1 <= t <= s (sorted tuples)."""
    out = {1: [(v,) for v in g.vertices()]}
    for t in range(2, s + 1):
        out[t] = [
            c + (v,)
            for c in out[t - 1]
            for v in range(c[-1] + 1, g.n)
            if all(g.has_edge(v, u) for u in c)
        ]
    return out


class SpanningForest:
    """1-oriented spanning forest: parent map plus roots."""

    def __init__(self, parent, roots):
        self.parent = dict(parent)
        self.roots = sorted(roots)

    def path_up(self, w, v):
        """Vertices from w up to v inclusive, or None if v is not above w."""
        path = [w]
        while w != v:
            if w not in self.parent:
                return None
            w = self.parent[w]
            path.append(w)
        return path

    def children_map(self):
        ch = {}
        for v, p in self.parent.items():
            ch.setdefault(p, []).append(v)
        return {p: sorted(vs) for p, vs in ch.items()}


def find_spanning_tree(g, o):
    """The 1-oriented spanning forest whose edges are the oriented edges vw of
    g admitting no intermediate x with v->x->w.  For a chordal g with a
    simplicial orientation o, every oriented edge of g then has a directed
    forest path, and the graph embeds in the operator graph of the forest
    under every proper colouring."""
    for w in g.vertices():
        inn = o.in_nbrs(w)
        for i, a in enumerate(inn):
            for b in inn[i + 1 :]:
                if not g.has_edge(a, b):
                    raise ValueError(f"in-neighbourhood of {w} is not a clique")
    if not o.is_acyclic():
        raise ValueError("orientation is cyclic")

    parent = {}
    for w in g.vertices():
        for v in o.in_nbrs(w):
            if any(x in o.in_nbrs(w) for x in o.out_nbrs(v)):
                continue  # v -> x -> w exists
            if w in parent:
                raise ValueError(f"two forest parents for {w}")
            parent[w] = v
    roots = [v for v in g.vertices() if v not in parent]
    forest = SpanningForest(parent, roots)

    # every oriented edge must close into a directed forest path whose
    # vertices are all adjacent to the tail
    for w in g.vertices():
        for v in o.in_nbrs(w):
            path = forest.path_up(w, v)
            assert path is not None, f"no forest path {v}->{w}"
            assert all(g.has_edge(v, x) for x in path[:-1])
    return forest


class CapacityError(Exception):
    """The truncation ran out of children in one (vertex, colour, label)
    class; the message says which knob to raise."""

    def __init__(self, vertex, colour, label, hint):
        self.vertex = vertex
        self.colour = colour
        self.label = label
        self.hint = hint
        super().__init__(
            f"no room for vertex {vertex} in class (colour={colour}, "
            f"label={label}): {hint}"
        )


def verify_embedding(g, h, vmap, induced=False):
    """Injectivity plus edge preservation of vmap: V(g) -> V(h); with
    induced=True non-edges must be preserved too."""
    for v in g.vertices():
        if v not in vmap:
            raise ValueError(f"map not total: vertex {v} missing")
    if len(set(vmap[v] for v in g.vertices())) != g.n:
        return False
    for u, v in g.edges():
        if not h.has_edge(vmap[u], vmap[v]):
            return False
    if induced:
        for u in g.vertices():
            for v in range(u + 1, g.n):
                if not g.has_edge(u, v) and h.has_edge(vmap[u], vmap[v]):
                    return False
    return True


def embed_into_tk(g, k, p, td=None, vlabels=None):
    """Injective map from V(g) into truncation addresses with every edge of g
    present in the truncation.  Pipeline: tree-decomposition (computed exactly
    if not supplied), normalization, bag fill-in, simplicial orientation,
    spanning forest, then a colour- and label-preserving greedy descent.

    Raises ValueError when the width exceeds k and CapacityError when a
    (colour, label) child class of the truncation runs out."""
    if p.depth < 1 or p.mult < 1 or p.label_alphabet < 1:
        raise ValueError("parameters must be positive")
    if g.n == 0:
        return {}
    if td is None:
        _, td = exact_treewidth(g)
    else:
        msg = validate(td, g)
        if msg:
            raise ValueError(f"invalid decomposition: {msg}")
    if td.width() > k:
        raise ValueError(f"treewidth {td.width()} exceeds k={k}")

    nd = normalize(td, g)
    colour = nd.colouring
    labels = dict(vlabels) if vlabels else {v: 0 for v in g.vertices()}
    free_labels = vlabels is None
    for v, lab in labels.items():
        if not 0 <= lab < p.label_alphabet:
            raise CapacityError(v, colour[v], lab, "raise label_alphabet")

    filled = []
    for b in nd.bags.values():
        bs = sorted(b)
        filled += [(u, w) for i, u in enumerate(bs) for w in bs[i + 1 :]]
    h = g.with_edges(filled)
    o = simplicial_k_orientation(h, k)
    assert o is not None, "bag fill-in must be chordal with small cliques"
    forest = find_spanning_tree(h, o)

    tree_colour = {(): 0}
    tree_label = {(): 0}
    counters = {}

    def alloc(parent_addr, want_colour, want_label, vertex):
        if tree_colour[parent_addr] == want_colour:
            raise CapacityError(vertex, want_colour, want_label,
                                "child colour equals parent colour")
        if len(parent_addr) + 1 > p.depth:
            raise CapacityError(vertex, want_colour, want_label, "raise depth")
        others = [c for c in range(k + 1) if c != tree_colour[parent_addr]]
        ci = others.index(want_colour)
        lab = want_label
        while True:
            used = counters.get((parent_addr, want_colour, lab), 0)
            if used < p.mult:
                break
            if free_labels and lab + 1 < p.label_alphabet:
                lab += 1
                continue
            raise CapacityError(vertex, want_colour, lab,
                                "raise mult or label_alphabet")
        counters[(parent_addr, want_colour, lab)] = used + 1
        child = parent_addr + ((ci * p.label_alphabet + lab) * p.mult + used,)
        tree_colour[child] = want_colour
        tree_label[child] = lab
        return child

    hub = None
    addr_of = {}
    children = forest.children_map()
    for r in forest.roots:
        want = (colour[r], labels[r])
        if want == (0, 0) and () not in addr_of.values():
            addr_of[r] = ()
        elif colour[r] != 0:
            addr_of[r] = alloc((), colour[r], labels[r], r)
        else:
            if hub is None:
                hub = alloc((), 1, 0, r)
            addr_of[r] = alloc(hub, colour[r], labels[r], r)
        stack = [r]
        while stack:
            u = stack.pop()
            for w in children.get(u, ()):
                addr_of[w] = alloc(addr_of[u], colour[w], labels[w], w)
                stack.append(w)

    # independent verification: evaluate the operator on the image subtree
    mini = ColouredTree(tree_colour, tree_label)
    mini_graph, _, addrs = g_of(mini)
    index = {a: i for i, a in enumerate(addrs)}
    ok = verify_embedding(g, mini_graph, {v: index[addr_of[v]] for v in addr_of})
    assert ok, "descent produced a non-embedding"
    return addr_of
