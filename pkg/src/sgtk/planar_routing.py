"""Disjoint routing inside triangulated windows: grid linkages, tight cycles
around a hole, Menger path systems between nested cycles, cylindrical
subdivisions, and a finite clique-minor builder that spends explicit jump
edges to let rays trade places.

A window is a rows x cols grid with one diagonal per cell, so it is a plane
triangulation by construction and every vertex carries integer coordinates.
Interiors, enclosure, and tightness therefore reduce to exact integer
polygon tests; no planarity-testing library is involved.
"""

import json
from collections import deque
from typing import Dict, FrozenSet, List, NamedTuple, Optional, Sequence, Set, Tuple

from .graphs import Graph

# Neighbour offsets (dcol, drow) in counterclockwise order when drawn with
# the x axis pointing right and rows growing downward.
_CCW_DIRS = ((1, 0), (1, -1), (0, -1), (-1, -1), (-1, 0), (-1, 1), (0, 1), (1, 1))
_DIR_INDEX = {d: i for i, d in enumerate(_CCW_DIRS)}


class BoundaryError(ValueError):
    """Raised when a construction would run into the window boundary."""


class BudgetError(RuntimeError):
    """Raised when an exhaustive cycle search exceeds its node budget."""


class CutError(Exception):
    """A requested disjoint-path system does not exist; carries the cut."""

    def __init__(self, message: str, cut: Sequence[int]):
        super().__init__(message)
        self.cut = tuple(sorted(cut))


class TriangulatedWindow:
    """Plane triangulation on a rows x cols point grid, one diagonal per cell.

    diagonals[i] is the bit for the i-th cell in row-major order: 0 slants
    from the cell's top-left to its bottom-right corner, 1 from top-right to
    bottom-left.  Vertex ids are row*cols + col.  The rotation system lists
    each vertex's neighbours in counterclockwise order and the face list
    holds every bounded (triangular) face.
    """

    __slots__ = ("rows", "cols", "diagonals", "graph", "rotation", "faces", "outer_cycle")

    def __init__(self, rows: int, cols: int, diagonals: Sequence[int]):
        if rows < 2 or cols < 2:
            raise ValueError("window needs at least 2 rows and 2 columns")
        bits = tuple(int(b) for b in diagonals)
        cells = (rows - 1) * (cols - 1)
        if len(bits) != cells:
            raise ValueError(f"expected {cells} diagonal bits, got {len(bits)}")
        if any(b not in (0, 1) for b in bits):
            raise ValueError("diagonal bits must be 0 or 1")
        self.rows = rows
        self.cols = cols
        self.diagonals = bits

        def vid(r, c):
            return r * cols + c

        edges = []
        faces = []
        for r in range(rows):
            for c in range(cols):
                if c + 1 < cols:
                    edges.append((vid(r, c), vid(r, c + 1)))
                if r + 1 < rows:
                    edges.append((vid(r, c), vid(r + 1, c)))
        for r in range(rows - 1):
            for c in range(cols - 1):
                tl, tr = vid(r, c), vid(r, c + 1)
                bl, br = vid(r + 1, c), vid(r + 1, c + 1)
                if bits[r * (cols - 1) + c] == 0:
                    edges.append((tl, br))
                    faces.append(frozenset((tl, tr, br)))
                    faces.append(frozenset((tl, br, bl)))
                else:
                    edges.append((tr, bl))
                    faces.append(frozenset((tl, tr, bl)))
                    faces.append(frozenset((tr, br, bl)))
        self.graph = Graph(rows * cols, edges)
        self.faces = tuple(faces)

        rot = []
        for v in range(rows * cols):
            r, c = divmod(v, cols)
            nbrs = sorted(
                self.graph.neighbors(v),
                key=lambda u: _DIR_INDEX[(u % cols - c, u // cols - r)],
            )
            rot.append(tuple(nbrs))
        self.rotation = tuple(rot)

        top = [vid(0, c) for c in range(cols)]
        right = [vid(r, cols - 1) for r in range(1, rows)]
        bottom = [vid(rows - 1, c) for c in range(cols - 2, -1, -1)]
        left = [vid(r, 0) for r in range(rows - 2, 0, -1)]
        self.outer_cycle = tuple(top + right + bottom + left)

        problem = _window_check(self)
        if problem is not None:
            raise ValueError(f"window invariant broken: {problem}")

    def vid(self, r: int, c: int) -> int:
        return r * self.cols + c

    def coord(self, v: int) -> Tuple[int, int]:
        return divmod(v, self.cols)

    def xy(self, v: int) -> Tuple[int, int]:
        """Coordinates with the y axis pointing up, for orientation tests."""
        r, c = divmod(v, self.cols)
        return (c, -r)

    def is_boundary(self, v: int) -> bool:
        r, c = divmod(v, self.cols)
        return r == 0 or c == 0 or r == self.rows - 1 or c == self.cols - 1

    def __repr__(self):
        return f"TriangulatedWindow(rows={self.rows}, cols={self.cols})"


def _rotation_walks(w: TriangulatedWindow, alive: Optional[Set[int]] = None) -> List[Tuple[int, ...]]:
    """Closed walks of the embedding restricted to the alive vertices, one per
    face, traced by always taking the next edge in rotation order."""
    if alive is None:
        alive = set(range(w.graph.n))
    rot = {v: [u for u in w.rotation[v] if u in alive] for v in alive}
    seen = set()
    walks = []
    for a in sorted(alive):
        for b in rot[a]:
            if (a, b) in seen:
                continue
            walk = []
            u, v = a, b
            while (u, v) not in seen:
                seen.add((u, v))
                walk.append(u)
                nbrs = rot[v]
                u, v = v, nbrs[(nbrs.index(u) + 1) % len(nbrs)]
            walks.append(tuple(walk))
    return walks


def _window_check(w: TriangulatedWindow) -> Optional[str]:
    g = w.graph
    if g.n - g.m + len(w.faces) + 1 != 2:
        return f"Euler count v-e+f = {g.n - g.m + len(w.faces) + 1}, want 2"
    for f in w.faces:
        vs = sorted(f)
        if len(vs) != 3 or not all(g.has_edge(a, b) for a in vs for b in vs if a < b):
            return f"face {vs} is not a triangle"
    for v in range(g.n):
        if w.is_boundary(v):
            continue
        rot = w.rotation[v]
        for i, u in enumerate(rot):
            if not g.has_edge(u, rot[(i + 1) % len(rot)]):
                return f"neighbourhood of interior vertex {v} is not a wheel"
    walks = _rotation_walks(w)
    tris = [sorted(walk) for walk in walks if len(walk) == 3]
    others = [walk for walk in walks if len(walk) != 3]
    if sorted(tris) != sorted(sorted(f) for f in w.faces):
        return "rotation face walks disagree with the face list"
    if len(others) != 1 or set(others[0]) != set(w.outer_cycle):
        return "rotation system does not close up around the boundary"
    return None


# -- exact polygon geometry ---------------------------------------------


def _polygon(w: TriangulatedWindow, cycle: Sequence[int]) -> List[Tuple[int, int]]:
    return [w.xy(v) for v in cycle]


def _area2(poly: Sequence[Tuple[int, int]]) -> int:
    """Twice the signed area; positive means counterclockwise."""
    total = 0
    for (x1, y1), (x2, y2) in zip(poly, poly[1:] + poly[:1]):
        total += x1 * y2 - x2 * y1
    return total


def _inside(pt: Tuple[int, int], poly: Sequence[Tuple[int, int]]) -> bool:
    """Strict interior test by even-odd ray casting, exact integer arithmetic.
    The point must not lie on the polygon; grid points only meet the unit and
    diagonal edges used here at polygon vertices, which callers exclude."""
    x, y = pt
    crossings = 0
    for (x1, y1), (x2, y2) in zip(poly, poly[1:] + poly[:1]):
        if (y1 > y) != (y2 > y):
            dy = y2 - y1
            t = (y - y1) * (x2 - x1) - (x - x1) * dy
            if (t > 0) == (dy > 0):
                crossings += 1
    return crossings % 2 == 1


class EmbeddedCycle(NamedTuple):
    """A cycle of the window together with the vertices strictly inside it."""

    cycle: Tuple[int, ...]
    interior: FrozenSet[int]

    def disk(self) -> FrozenSet[int]:
        return self.interior | frozenset(self.cycle)


def embedded_cycle(w: TriangulatedWindow, vertices: Sequence[int]) -> EmbeddedCycle:
    cyc = tuple(vertices)
    if len(cyc) < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    if len(set(cyc)) != len(cyc):
        raise ValueError("cycle repeats a vertex")
    for u, v in zip(cyc, cyc[1:] + cyc[:1]):
        if not w.graph.has_edge(u, v):
            raise ValueError(f"cycle step {u}-{v} is not an edge")
    poly = _polygon(w, cyc)
    on = set(cyc)
    interior = frozenset(v for v in range(w.graph.n) if v not in on and _inside(w.xy(v), poly))
    return EmbeddedCycle(cyc, interior)


def surrounds(w: TriangulatedWindow, outer: EmbeddedCycle, inner: EmbeddedCycle) -> bool:
    """True when the cycles are vertex-disjoint and inner's disk lies inside
    outer's disk."""
    if set(outer.cycle) & set(inner.cycle):
        return False
    return all(v in outer.interior for v in inner.cycle)


def central_face(w: TriangulatedWindow) -> EmbeddedCycle:
    """The face whose centroid is closest to the window centre (ties broken
    by vertex ids), as an embedded cycle."""
    cx = 3 * (w.cols - 1)  # window centre times 6, matching summed coordinates
    cy = -3 * (w.rows - 1)
    best = None
    for f in w.faces:
        vs = sorted(f)
        sx = sum(2 * w.xy(v)[0] for v in vs)
        sy = sum(2 * w.xy(v)[1] for v in vs)
        d = (sx - cx) ** 2 + (sy - cy) ** 2
        if best is None or (d, vs) < best:
            best = (d, vs)
    return embedded_cycle(w, best[1])


# -- hole boundaries and tight cycles ------------------------------------


def _hole_walk(w: TriangulatedWindow, hole: Set[int]) -> Tuple[int, ...]:
    """Boundary cycle of the face left behind when the hole vertices are
    deleted.  Swallows any stranded islands inside that face, so the result
    bounds the whole region the hole occupies."""
    if not hole:
        raise ValueError("empty hole")
    if any(w.is_boundary(v) for v in hole):
        raise BoundaryError("hole touches the window boundary")
    pocket = set(hole)
    outer_set = set(w.outer_cycle)
    while True:
        alive = set(range(w.graph.n)) - pocket
        probe = w.xy(min(pocket))
        found = None
        for walk in _rotation_walks(w, alive):
            if set(walk) == outer_set:
                continue
            # bounded faces trace clockwise under the walk rule, so their
            # signed area is negative with y pointing up
            poly = _polygon(w, walk)
            if _area2(poly) < 0 and _inside(probe, poly):
                found = walk
                break
        if found is None:
            raise BoundaryError("no bounded face encloses the hole")
        if len(set(found)) != len(found):
            raise BoundaryError("hole boundary is pinched")
        poly = _polygon(w, found)
        on = set(found)
        stranded = {v for v in alive if v not in on and _inside(w.xy(v), poly)}
        if stranded - pocket:
            pocket |= stranded
            continue
        return found


def _canon_cycle(cycle: Sequence[int]) -> Tuple[int, ...]:
    """Rotate so the smallest vertex leads and the smaller neighbour follows."""
    cyc = list(cycle)
    i = cyc.index(min(cyc))
    cyc = cyc[i:] + cyc[:i]
    if len(cyc) > 2 and cyc[-1] < cyc[1]:
        cyc = [cyc[0]] + cyc[:0:-1]
    return tuple(cyc)


def _contains_all(w: TriangulatedWindow, candidate: Sequence[int], targets: Sequence[int]) -> bool:
    cand = set(candidate)
    poly = _polygon(w, candidate)
    return all(v in cand or _inside(w.xy(v), poly) for v in targets)


def _shorter_enclosing(
    w: TriangulatedWindow,
    cycle: Sequence[int],
    region: Set[int],
    budget: int = 500_000,
) -> Optional[Tuple[int, ...]]:
    """Some cycle with fewer vertices whose closed disk still contains every
    vertex of the given cycle, searched inside region; None if there is none.
    Candidates never enter the given cycle's strict interior (they could not
    enclose it from there), which keeps the search in an annulus."""
    cap = len(cycle)
    if cap <= 3:
        return None
    poly = _polygon(w, cycle)
    on = set(cycle)
    pool = {v for v in region if v in on or not _inside(w.xy(v), poly)}
    g = w.graph
    nodes = 0
    for start in sorted(pool):
        dist = g.bfs_dist([start], allowed=pool)
        path = [start]
        on_path = {start}

        def extend(head):
            nonlocal nodes
            nodes += 1
            if nodes > budget:
                raise BudgetError("enclosing-cycle search budget exhausted")
            for nxt in g.neighbors(head):
                if nxt == start and len(path) >= 3 and _contains_all(w, path, cycle):
                    return tuple(path)
                if nxt <= start or nxt in on_path or nxt not in pool:
                    continue
                if dist[nxt] < 0 or len(path) + dist[nxt] >= cap:
                    continue
                path.append(nxt)
                on_path.add(nxt)
                got = extend(nxt)
                if got is not None:
                    return got
                path.pop()
                on_path.discard(nxt)
            return None

        found = extend(start)
        if found is not None:
            return found
    return None


def is_tight(w: TriangulatedWindow, cycle: Sequence[int], budget: int = 2_000_000) -> bool:
    """Definitional check: no cycle anywhere in the window encloses this one
    with fewer vertices.  Exhaustive, so only sensible at small windows;
    raises BudgetError rather than guess when the search space is too big."""
    region = set(range(w.graph.n))
    return _shorter_enclosing(w, tuple(cycle), region, budget=budget) is None


def find_tight_surrounding(
    w: TriangulatedWindow,
    c: EmbeddedCycle,
    slack_rings: int = 2,
    budget: int = 150_000,
) -> EmbeddedCycle:
    """A cycle surrounding c with no shorter enclosing cycle in the search
    region: start from the boundary of the face left by deleting c's disk,
    then repeatedly replace it with a shorter enclosing cycle until none is
    found.  The region is the disk plus slack_rings more boundary layers, so
    at small windows the result is tight outright and at large ones it is
    certified ring-tight; a search that outgrows the budget stops improving
    rather than failing."""
    walk = _hole_walk(w, set(c.disk()))
    boundary = set(w.outer_cycle)
    if set(walk) & boundary:
        raise BoundaryError("surrounding cycle would ride the window boundary")
    region_disk = embedded_cycle(w, walk).disk()
    for _ in range(slack_rings):
        try:
            nxt = _hole_walk(w, set(region_disk))
        except BoundaryError:
            break
        region_disk = embedded_cycle(w, nxt).disk()
    region = set(region_disk) - boundary
    current: Sequence[int] = walk
    while True:
        try:
            better = _shorter_enclosing(w, current, region, budget=budget)
        except BudgetError:
            break
        if better is None:
            break
        current = better
    out = embedded_cycle(w, _canon_cycle(current))
    assert surrounds(w, out, c), "surrounding cycle lost the inner disk"
    return out


# -- grid linkage ---------------------------------------------------------


def _route(l: int, a: Sequence[int], b: Sequence[int]) -> List[List[Tuple[int, int]]]:
    """Disjoint (row, col) paths in an l-column grid from rows a on column 0
    to rows b on column l-1, both lists strictly increasing.  The first
    demand is routed one column in, straight up, then across; the rest shift
    two columns right and recurse.  When the first demand points downward
    the two sides swap roles, which mirrors the instance left to right."""
    k = len(a)
    if k == 0:
        return []
    if b[0] <= a[0]:
        first = [(a[0], 0)]
        first += [(r, 1) for r in range(a[0], b[0] - 1, -1)]
        first += [(b[0], c) for c in range(2, l)]
        rest = _route(l - 2, a[1:], b[1:])
        out = [first]
        for i, path in enumerate(rest):
            out.append([(a[1 + i], 0), (a[1 + i], 1)] + [(r, c + 2) for r, c in path])
        return out
    flipped = _route(l, list(b), list(a))
    return [[(r, l - 1 - c) for r, c in reversed(p)] for p in flipped]


def route_grid(l: int, m: int, a: Sequence[int], b: Sequence[int]) -> List[Tuple[int, ...]]:
    """Vertex-disjoint paths across an m-row, l-column grid, pairing the i-th
    demand row on the first column with the i-th on the last column.  Both
    row lists must be strictly increasing (top to bottom) and l >= 2k+1.
    Paths are returned as vertex ids row*l + col, matching
    build_named("grid", m, l)."""
    if l < 1 or m < 1:
        raise ValueError("grid dimensions must be positive")
    a = list(a)
    b = list(b)
    if len(a) != len(b):
        raise ValueError("demand lists differ in length")
    k = len(a)
    for name, rows in (("a", a), ("b", b)):
        if any(not (0 <= r < m) for r in rows):
            raise ValueError(f"{name}: row out of range for m={m}")
        if any(x >= y for x, y in zip(rows, rows[1:])):
            raise ValueError(f"{name}: rows must strictly increase (top to bottom)")
    if k and l < 2 * k + 1:
        raise ValueError(f"need l >= {2 * k + 1} columns for k={k}, got {l}")
    paths = _route(l, a, b)
    return [tuple(r * l + c for r, c in p) for p in paths]


# -- disjoint path systems between nested cycles --------------------------


def _vertex_flow(
    g: Graph,
    sources: Sequence[int],
    sinks: Set[int],
    allowed: Set[int],
) -> Tuple[List[Tuple[int, ...]], Tuple[int, ...]]:
    """Maximum system of vertex-disjoint paths from the sources to the sinks
    inside allowed, with a minimum vertex cut for what is missing.  Unit
    capacities via the usual in/out split; sources admit no other traffic and
    sinks absorb, so paths meet each bounding cycle only at their endpoints.
    Paths come back in source order."""
    src = [s for s in sources if s in allowed]
    snk = {t for t in sinks if t in allowed}
    n = g.n
    S, T = 2 * n, 2 * n + 1
    arcs: Dict[int, List[int]] = {S: [], T: []}

    def add(x, y):
        arcs.setdefault(x, []).append(y)

    src_set = set(src)
    for v in allowed:
        add(2 * v, 2 * v + 1)
        if v in snk:
            add(2 * v + 1, T)
            continue
        for u in g.neighbors(v):
            if u in allowed and u not in src_set:
                add(2 * v + 1, 2 * u)
    for s in src:
        add(S, 2 * s)

    sat: Dict[int, Set[int]] = {}        # saturated arcs x -> {y}
    back: Dict[int, Set[int]] = {}       # y -> {x} with x -> y saturated

    def residual(x):
        blocked = sat.get(x, ())
        for y in arcs.get(x, ()):
            if y not in blocked:
                yield y
        yield from back.get(x, ())

    while True:
        parent = {S: S}
        q = deque([S])
        while q and T not in parent:
            x = q.popleft()
            for y in sorted(residual(x)):
                if y not in parent:
                    parent[y] = x
                    q.append(y)
        if T not in parent:
            break
        y = T
        while y != S:
            x = parent[y]
            if y in sat.get(x, ()):
                raise AssertionError("augmenting path reused a saturated arc")
            if x in sat.get(y, set()):
                sat[y].discard(x)
                back[x].discard(y)
            else:
                sat.setdefault(x, set()).add(y)
                back.setdefault(y, set()).add(x)
            y = x

    paths = []
    live: Dict[int, Set[int]] = {x: set(ys) for x, ys in sat.items()}
    for s in src:
        if 2 * s not in live.get(S, ()):
            continue
        live[S].discard(2 * s)
        path = [s]
        node = 2 * s
        while True:
            nxt = min(live[node])
            live[node].discard(nxt)
            if nxt == T:
                break
            if nxt % 2 == 0:
                path.append(nxt // 2)
            node = nxt
        paths.append(tuple(path))

    reach = {S}
    q = deque([S])
    while q:
        x = q.popleft()
        for y in residual(x):
            if y not in reach:
                reach.add(y)
                q.append(y)
    cut = {v for v in allowed if 2 * v in reach and 2 * v + 1 not in reach}
    cut |= {s for s in src if 2 * s not in reach}
    return paths, tuple(sorted(cut))


def menger_between_cycles(
    w: TriangulatedWindow,
    c: EmbeddedCycle,
    d: EmbeddedCycle,
) -> List[Tuple[int, ...]]:
    """|V(c)| vertex-disjoint paths from c to d through the annulus between
    them, one starting at each vertex of c, in c's cyclic order.  When the
    full system does not exist the raised CutError carries a vertex cut
    smaller than |V(c)| separating the cycles, which is exactly a witness
    that c was not tight."""
    if not surrounds(w, d, c):
        raise ValueError("outer cycle must surround the inner cycle")
    allowed = set(d.disk()) - set(c.interior)
    paths, cut = _vertex_flow(w.graph, list(c.cycle), set(d.cycle), allowed)
    if len(paths) < len(c.cycle):
        raise CutError(
            f"only {len(paths)} of {len(c.cycle)} disjoint paths exist; "
            f"the {len(cut)} listed vertices separate the cycles",
            cut,
        )
    return paths


class CylSubdivision(NamedTuple):
    """A subdivided cycle-times-path grid: the i-th ring is a full input
    cycle, branch[i][j] is column j's vertex on it, and rungs[i][j] is the
    path joining branch[i][j] to branch[i+1][j]."""

    rings: Tuple[Tuple[int, ...], ...]
    branch: Tuple[Tuple[int, ...], ...]
    rungs: Tuple[Tuple[Tuple[int, ...], ...], ...]


def _cyclic_positions_ok(ring: Sequence[int], marks: Sequence[int]) -> bool:
    """Do the marks appear around the ring in their own cyclic order, one way
    or the other?"""
    pos = {v: i for i, v in enumerate(ring)}
    seq = sorted(range(len(marks)), key=lambda j: pos[marks[j]])
    l = len(marks)
    start = seq.index(0)
    seq = seq[start:] + seq[:start]
    return seq == list(range(l)) or seq == [0] + list(range(l - 1, 0, -1))


def _check_subdivision(w: TriangulatedWindow, sub: CylSubdivision) -> Optional[str]:
    g = w.graph
    l = len(sub.branch[0])
    if len(sub.rings[0]) != l:
        return "first ring must consist entirely of branch vertices"
    ring_sets = [set(r) for r in sub.rings]
    for i, ring in enumerate(sub.rings):
        for u, v in zip(ring, ring[1:] + ring[:1]):
            if not g.has_edge(u, v):
                return f"ring {i} step {u}-{v} is not an edge"
        if set(sub.branch[i]) - ring_sets[i]:
            return f"branch vertices of ring {i} stray off the ring"
        if len(set(sub.branch[i])) != l:
            return f"ring {i} repeats a branch vertex"
        if not _cyclic_positions_ok(ring, sub.branch[i]):
            return f"columns cross on ring {i}"
    seen_interior: Set[int] = set()
    for i, stage in enumerate(sub.rungs):
        if len(stage) != l:
            return f"stage {i} has {len(stage)} rungs, want {l}"
        for j, path in enumerate(stage):
            if path[0] != sub.branch[i][j] or path[-1] != sub.branch[i + 1][j]:
                return f"rung {i},{j} endpoints disagree with the branch map"
            if len(set(path)) != len(path):
                return f"rung {i},{j} repeats a vertex"
            for u, v in zip(path, path[1:]):
                if not g.has_edge(u, v):
                    return f"rung {i},{j} step {u}-{v} is not an edge"
            inner = set(path[1:-1])
            for t, rs in enumerate(ring_sets):
                if inner & rs:
                    return f"rung {i},{j} runs through ring {t}"
            if inner & seen_interior:
                return f"rung {i},{j} shares interior vertices with another rung"
            seen_interior |= inner
    return None


def cylindrical_subdivision(
    w: TriangulatedWindow,
    cycles: Sequence[EmbeddedCycle],
) -> CylSubdivision:
    """Stitch nested cycles into a subdivision of the cycle-times-path grid
    with |V(cycles[0])| columns: stage by stage, route disjoint paths from the
    current branch vertices to the next cycle.  Planarity keeps the arrival
    order consistent; the final structural check asserts it."""
    cycles = list(cycles)
    if not cycles:
        raise ValueError("need at least one cycle")
    l = len(cycles[0].cycle)
    if l < 3:
        raise ValueError("innermost cycle is too short")
    for inner, outer in zip(cycles, cycles[1:]):
        if not surrounds(w, outer, inner):
            raise ValueError("cycles must be nested, innermost first")
    branch = [tuple(cycles[0].cycle)]
    rungs = []
    for i in range(len(cycles) - 1):
        inner, outer = cycles[i], cycles[i + 1]
        sources = branch[i]
        allowed = set(outer.disk()) - set(inner.interior) - (set(inner.cycle) - set(sources))
        paths, cut = _vertex_flow(w.graph, sources, set(outer.cycle), allowed)
        if len(paths) < l:
            raise CutError(
                f"stage {i}: only {len(paths)} of {l} disjoint paths to the next "
                f"cycle; the {len(cut)} listed vertices separate them",
                cut,
            )
        branch.append(tuple(p[-1] for p in paths))
        rungs.append(tuple(paths))
    sub = CylSubdivision(
        tuple(tuple(c.cycle) for c in cycles), tuple(branch), tuple(rungs)
    )
    problem = _check_subdivision(w, sub)
    assert problem is None, problem
    return sub


# -- small two-commodity linkage ------------------------------------------


def _two_linkage(
    g: Graph,
    allowed: Set[int],
    p1: int,
    p2: int,
    q1: int,
    q2: int,
    budget: Optional[int] = None,
) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Vertex-disjoint p1-p2 and q1-q2 paths inside allowed, by exhaustive
    search over the first path with connectivity pruning for the second.
    Complete when budget is None; with a budget, exhaustion raises."""
    if {p1, p2, q1, q2} - allowed:
        return None
    nodes = 0
    path = [p1]
    on_path = {p1}

    def q_path() -> Optional[List[int]]:
        room = allowed - on_path
        if q1 not in room or q2 not in room:
            return None
        return g.shortest_path(q1, q2, allowed=room)

    def extend(head) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
        nonlocal nodes
        nodes += 1
        if budget is not None and nodes > budget:
            raise BudgetError("two-path search budget exhausted")
        if head == p2:
            q = q_path()
            if q is not None:
                return tuple(path), tuple(q)
            return None
        if q_path() is None:
            return None
        room = (allowed - on_path) | {head}
        room -= {q1, q2}
        if g.bfs_dist([head], allowed=room)[p2] < 0:
            return None
        for nxt in g.neighbors(head):
            if nxt in on_path or nxt not in allowed or nxt in (q1, q2):
                continue
            path.append(nxt)
            on_path.add(nxt)
            got = extend(nxt)
            if got is not None:
                return got
            path.pop()
            on_path.discard(nxt)
        return None

    return extend(p1)


def two_disjoint_paths_small(
    g: Graph,
    p1: int,
    p2: int,
    q1: int,
    q2: int,
    extra_edge: Optional[Tuple[int, int]] = None,
) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Vertex-disjoint p1-p2 and q1-q2 paths, or None when no such pair
    exists.  Exhaustive, so the instance is capped at 16 vertices.  An
    optional extra edge is added first; passing a jump edge here is how a
    crossing pair of demands becomes solvable."""
    if g.n > 16:
        raise ValueError(f"exhaustive linkage capped at 16 vertices, got {g.n}")
    if len({p1, p2, q1, q2}) != 4:
        raise ValueError("the four terminals must be distinct")
    h = g.with_edges([extra_edge]) if extra_edge is not None else g
    return _two_linkage(h, set(range(h.n)), p1, p2, q1, q2)


# -- clique-minor construction with jumps ---------------------------------


class MinorModel(NamedTuple):
    """Branch sets of a complete-graph model in window-plus-jumps, with the
    jump edges the construction actually spent."""

    order: int
    branch_sets: Tuple[FrozenSet[int], ...]
    jumps_used: Tuple[Tuple[int, int], ...]


class StageFailure(NamedTuple):
    """Which construction stage gave out, and why."""

    stage: str
    detail: str


def verify_model(
    g: Graph,
    jumps: Sequence[Tuple[int, int]],
    model: MinorModel,
) -> Optional[str]:
    """Independent check that the branch sets really model a complete graph
    in the window plus its jump edges."""
    host = g.with_edges(jumps)
    sets = model.branch_sets
    if len(sets) != model.order:
        return f"model: {len(sets)} branch sets for order {model.order}"
    seen: Set[int] = set()
    for i, bs in enumerate(sets):
        if not bs:
            return f"model: branch set {i} is empty"
        if any(v < 0 or v >= host.n for v in bs):
            return f"model: branch set {i} leaves the graph"
        if bs & seen:
            return f"model: branch set {i} overlaps an earlier one"
        seen |= bs
        dist = host.bfs_dist([min(bs)], allowed=set(bs))
        if any(dist[v] < 0 for v in bs):
            return f"model: branch set {i} is not connected"
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            if not any(u in sets[j] for v in sets[i] for u in host.neighbors(v)):
                return f"model: branch sets {i} and {j} are not adjacent"
    return None


def _arc_forward(ring: Sequence[int], u: int, v: int) -> List[int]:
    """Vertices strictly between u and v walking the ring forward from u."""
    pos = {x: i for i, x in enumerate(ring)}
    i, j = pos[u], pos[v]
    out = []
    t = (i + 1) % len(ring)
    while t != j:
        out.append(ring[t])
        t = (t + 1) % len(ring)
    return out


def _uses_edge(path: Sequence[int], edge: Tuple[int, int]) -> bool:
    u, v = edge
    return any({a, b} == {u, v} for a, b in zip(path, path[1:]))


class _RayState:
    """Mutable bookkeeping for the clique construction: one growing chain of
    vertices per ray, ring arcs handed to each ray, and the global used set."""

    def __init__(self, rays: Sequence[int]):
        self.chain: Dict[int, List[int]] = {r: [] for r in rays}
        self.tip: Dict[int, int] = {}
        self.used: Set[int] = set()
        self.extras: Dict[int, Set[int]] = {r: set() for r in rays}

    def snapshot(self):
        return (
            {r: list(c) for r, c in self.chain.items()},
            dict(self.tip),
            set(self.used),
            {r: set(e) for r, e in self.extras.items()},
        )

    def restore(self, snap):
        chain, tip, used, extras = snap
        self.chain = {r: list(c) for r, c in chain.items()}
        self.tip = dict(tip)
        self.used = set(used)
        self.extras = {r: set(e) for r, e in extras.items()}

    def start(self, ray: int, v: int):
        self.chain[ray] = [v]
        self.tip[ray] = v
        self.used.add(v)

    def extend(self, ray: int, path: Sequence[int]):
        assert path[0] == self.tip[ray], "chain extension must start at the tip"
        self.chain[ray].extend(path[1:])
        self.tip[ray] = path[-1]
        self.used.update(path)


def _advance_rays(
    w: TriangulatedWindow,
    state: _RayState,
    rays: Sequence[int],
    inner: EmbeddedCycle,
    outer: EmbeddedCycle,
    forbidden: Set[int],
) -> Optional[Dict[int, Tuple[int, ...]]]:
    """Route each listed ray from its tip on the inner cycle to the outer
    cycle, disjointly, avoiding forbidden vertices.  None when the flow falls
    short.  Does not commit anything to the state."""
    sources = [state.tip[r] for r in rays]
    allowed = set(outer.disk()) - set(inner.interior)
    allowed -= set(inner.cycle) - set(sources)
    allowed -= state.used - set(sources)
    allowed -= forbidden
    sinks = set(outer.cycle) - state.used - forbidden
    paths, _cut = _vertex_flow(w.graph, sources, sinks, allowed)
    if len(paths) < len(rays):
        return None
    return {ray: path for ray, path in zip(rays, paths)}


def _sector_region(
    w: TriangulatedWindow,
    outer: EmbeddedCycle,
    seg_left: Sequence[int],
    seg_right: Sequence[int],
    arc_in: Sequence[int],
    deep_probe: int,
) -> Optional[Tuple[Set[int], List[int]]]:
    """The annulus sector bounded by the two boundary-ray chains, the inner
    arc between their old tips, and one side of the outer ring between their
    arrivals.  Returns the vertices strictly inside plus the outer arc
    oriented from the left chain's arrival; the outer arc that swallows the
    deep probe vertex is the wrong side and is rejected."""
    a_left, a_right = seg_left[-1], seg_right[-1]
    probe = w.xy(deep_probe)
    side_near = _arc_forward(outer.cycle, a_right, a_left)
    side_far = list(reversed(_arc_forward(outer.cycle, a_left, a_right)))
    for arc in (side_near, side_far):
        ring_poly = (
            [seg_left[0]]
            + list(arc_in)
            + list(seg_right)
            + list(arc)
            + list(reversed(seg_left))[:-1]
        )
        if len(set(ring_poly)) != len(ring_poly):
            continue
        poly = _polygon(w, ring_poly)
        if _inside(probe, poly):
            continue
        on = set(ring_poly)
        inside = {v for v in range(w.graph.n) if v not in on and _inside(w.xy(v), poly)}
        return inside, list(reversed(arc))
    return None


def _try_switch(
    w: TriangulatedWindow,
    state: _RayState,
    rings: List[EmbeddedCycle],
    cur: int,
    rays: Sequence[int],
    linked: Set[FrozenSet[int]],
    jleft: List[Tuple[int, int]],
    jused: List[Tuple[int, int]],
    order: List[int],
) -> bool:
    """Attempt one trade of two cyclically consecutive rays across the next
    three annuli, spending a jump edge.  The trading pair's demands cross
    inside the sector bounded by its neighbour rays, so the linkage cannot
    avoid the jump.  Commits and returns True on success, restores the
    previous state and returns False otherwise."""
    p = len(rays)

    def gain(t: int) -> int:
        before, after = order[(t - 1) % p], order[(t + 2) % p]
        x, y = order[t], order[(t + 1) % p]
        new = {frozenset((before, y)), frozenset((x, after))}
        return sum(1 for pair in new if pair not in linked)

    candidates = sorted((t for t in range(p) if gain(t) > 0), key=lambda t: (-gain(t), t))
    inner = rings[cur]
    outer = rings[cur + 3]
    deep_probe = min(rings[0].interior | set(rings[0].cycle))
    for t in candidates:
        x, y = order[t], order[(t + 1) % p]
        left, right = order[(t - 1) % p], order[(t + 2) % p]
        snap = state.snapshot()

        segs: Dict[int, List[int]] = {left: [], right: []}
        ok = True
        for step in range(3):
            moved = _advance_rays(
                w, state, [left, right], rings[cur + step], rings[cur + step + 1], set()
            )
            if moved is None:
                ok = False
                break
            for ray in (left, right):
                seg = list(moved[ray])
                segs[ray] = seg if not segs[ray] else segs[ray] + seg[1:]
                state.extend(ray, seg)
        if not ok:
            state.restore(snap)
            continue

        arc_in = _arc_forward(inner.cycle, segs[left][0], segs[right][0])
        sector = _sector_region(w, outer, segs[left], segs[right], arc_in, deep_probe)
        if sector is None:
            state.restore(snap)
            continue
        inside, arc_from_left = sector
        slots = [v for v in arc_from_left if v not in state.used]
        if len(slots) < 2:
            state.restore(snap)
            continue
        t_y = slots[len(slots) // 3]
        t_x = slots[(2 * len(slots)) // 3]
        if t_y == t_x:
            t_x = slots[-1] if slots[-1] != t_y else slots[0]
        if t_y == t_x:
            state.restore(snap)
            continue
        s_x, s_y = state.tip[x], state.tip[y]
        room = (inside - state.used) | {s_x, s_y, t_x, t_y}

        traded = False
        for jump in list(jleft):
            u, v = jump
            if u not in inside or v not in inside or u in state.used or v in state.used:
                continue
            host = w.graph.with_edges([jump])
            try:
                got = _two_linkage(host, room, s_x, t_x, s_y, t_y, budget=200_000)
            except BudgetError:
                continue
            if got is None:
                continue
            px, py = got
            assert _uses_edge(px, jump) or _uses_edge(py, jump), \
                "crossing demands resolved without the jump in a planar sector"
            state.extend(x, px)
            state.extend(y, py)
            jleft.remove(jump)
            jused.append(jump)
            traded = True
            break
        if not traded:
            state.restore(snap)
            continue

        others = [r for r in rays if r not in (left, right, x, y)]
        block = inside | set(arc_from_left)
        ok = True
        for step in range(3):
            if not others:
                break
            moved = _advance_rays(
                w, state, others, rings[cur + step], rings[cur + step + 1], block
            )
            if moved is None:
                ok = False
                break
            for ray in others:
                state.extend(ray, moved[ray])
        if not ok:
            state.restore(snap)
            jleft.append(jused.pop())
            continue
        return True
    return False


def clique_minor_with_jumps(
    w: TriangulatedWindow,
    jumps: Sequence[Tuple[int, int]],
    p: int,
) -> "MinorModel | StageFailure":
    """Finite clique-minor construction in a window with explicit jump edges.

    Rays grow outward through nested surrounding cycles; cyclically
    consecutive rays are joined along ring arcs, and a jump edge lets two
    neighbouring rays trade places inside an annulus sector.  Each trade
    makes new pairs consecutive, so once every pair has been joined somewhere
    the chains and arcs form the branch sets.  Returns a StageFailure naming
    the stage that ran out of room instead of raising."""
    jumps = [tuple(sorted(j)) for j in jumps]
    seen_ends: Set[int] = set()
    for u, v in jumps:
        if u == v or not (0 <= u < w.graph.n and 0 <= v < w.graph.n):
            raise ValueError(f"bad jump ({u},{v})")
        if w.graph.has_edge(u, v):
            raise ValueError(f"jump ({u},{v}) is already an edge")
        if u in seen_ends or v in seen_ends:
            raise ValueError("jumps must form a matching")
        seen_ends |= {u, v}
    if p < 2:
        raise ValueError("order must be at least 2")
    if p == 2:
        u, v = min(w.graph.edges())
        return MinorModel(2, (frozenset((u,)), frozenset((v,))), ())

    rings: List[EmbeddedCycle] = []
    cur: EmbeddedCycle = central_face(w)
    while len(rings) < 2 * p + 4:
        try:
            cur = find_tight_surrounding(w, cur, budget=20_000)
        except BoundaryError:
            break
        rings.append(cur)
    base_idx = next((i for i, r in enumerate(rings) if len(r.cycle) >= p), None)
    if base_idx is None:
        return StageFailure(
            "rings", f"no nested cycle with {p} vertices fits before the boundary"
        )
    rings = rings[base_idx:]

    base = rings[0]
    lbase = len(base.cycle)
    rays = list(range(p))
    state = _RayState(rays)
    for j in rays:
        state.start(j, base.cycle[(j * lbase) // p])
    cur_ring = 0
    linked: Set[FrozenSet[int]] = set()
    jleft = list(jumps)
    jused: List[Tuple[int, int]] = []

    def order_on(ring_idx: int) -> List[int]:
        pos = {v: i for i, v in enumerate(rings[ring_idx].cycle)}
        return sorted(rays, key=lambda rr: pos[state.tip[rr]])

    def link_ring(ring_idx: int) -> None:
        ring = rings[ring_idx].cycle
        order = order_on(ring_idx)
        for t in range(p):
            x, y = order[t], order[(t + 1) % p]
            pair = frozenset((x, y))
            if pair in linked:
                continue
            arc = _arc_forward(ring, state.tip[x], state.tip[y])
            if set(arc) & state.used:
                continue  # blocked here; the pair keeps its later chances
            linked.add(pair)
            state.used.update(arc)
            state.extras[x].update(arc)

    def missing() -> List[Tuple[int, int]]:
        return [
            (i, j)
            for i in range(p)
            for j in range(i + 1, p)
            if frozenset((i, j)) not in linked
        ]

    link_ring(0)
    while missing():
        if cur_ring + 3 < len(rings) and p >= 4:
            if _try_switch(
                w, state, rings, cur_ring, rays, linked, jleft, jused, order_on(cur_ring)
            ):
                cur_ring += 3
                link_ring(cur_ring)
                continue
        if cur_ring + 1 < len(rings):
            moved = _advance_rays(
                w, state, order_on(cur_ring), rings[cur_ring], rings[cur_ring + 1], set()
            )
            if moved is None:
                return StageFailure(
                    "menger", f"lost a ray between rings {cur_ring} and {cur_ring + 1}"
                )
            for ray, path in moved.items():
                state.extend(ray, path)
            cur_ring += 1
            link_ring(cur_ring)
            continue
        return StageFailure(
            "switch",
            f"pairs {missing()} never became consecutive: {len(rings)} rings and "
            f"{len(jleft)} unspent jumps left no room to trade",
        )

    branch_sets = tuple(
        frozenset(state.chain[r]) | frozenset(state.extras[r]) for r in rays
    )
    model = MinorModel(p, branch_sets, tuple(jused))
    problem = verify_model(w.graph, jumps, model)
    assert problem is None, problem
    return model


# -- generation and serialization ------------------------------------------


def random_jumps(w: TriangulatedWindow, rng, count: int, reach: Tuple[int, int] = (4, 8)) -> List[Tuple[int, int]]:
    """A matching of count long jumps: non-edges whose endpoints sit strictly
    inside the window at taxicab distance within reach.  This is the
    generator behind the command-line window instances."""
    jumps: List[Tuple[int, int]] = []
    used: Set[int] = set()
    tries = 0
    while len(jumps) < count:
        tries += 1
        if tries > 200 * count + 1000:
            raise ValueError(f"could not place {count} jumps in this window")
        r = rng.randrange(2, w.rows - 2)
        c = rng.randrange(2, w.cols - 2)
        d = rng.randrange(reach[0], reach[1] + 1)
        dr = rng.randrange(-d, d + 1)
        dc = rng.choice([-1, 1]) * (d - abs(dr))
        r2, c2 = r + dr, c + dc
        if max(abs(dr), abs(dc)) < 2:
            continue
        if not (1 <= r2 < w.rows - 1 and 1 <= c2 < w.cols - 1):
            continue
        u, v = w.vid(r, c), w.vid(r2, c2)
        if w.graph.has_edge(u, v) or u in used or v in used:
            continue
        jumps.append((min(u, v), max(u, v)))
        used |= {u, v}
    return jumps


def window_to_json(w: TriangulatedWindow, jumps: Sequence[Tuple[int, int]] = ()) -> str:
    payload = {
        "version": 1,
        "rows": w.rows,
        "cols": w.cols,
        "diagonals": "".join(str(b) for b in w.diagonals),
        "jumps": [[min(u, v), max(u, v)] for u, v in sorted(map(sorted, jumps))],
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def window_from_json(text: str) -> Tuple[TriangulatedWindow, Tuple[Tuple[int, int], ...]]:
    payload = json.loads(text)
    if payload.get("version") != 1:
        raise ValueError(f"unsupported window version {payload.get('version')!r}")
    w = TriangulatedWindow(payload["rows"], payload["cols"], payload["diagonals"])
    jumps = tuple((int(u), int(v)) for u, v in payload.get("jumps", []))
    return w, jumps
