import math

import networkx as nx
import pytest

from sgtk.graphs import Graph, build_named
from sgtk.minorfree import is_kt_minor_free_small
from sgtk.planar_routing import (
    BoundaryError,
    CutError,
    MinorModel,
    StageFailure,
    TriangulatedWindow,
    central_face,
    clique_minor_with_jumps,
    cylindrical_subdivision,
    embedded_cycle,
    find_tight_surrounding,
    is_tight,
    menger_between_cycles,
    random_jumps,
    route_grid,
    surrounds,
    two_disjoint_paths_small,
    verify_model,
    window_from_json,
    window_to_json,
)
from sgtk.products import product

from helpers import random_window, seeded, to_nx


def winding_inside(pt, poly):
    """Interior test independent of src: the polygon's total turning angle
    around an interior point is +-2*pi, around an exterior point 0."""
    x, y = pt
    total = 0.0
    for (x1, y1), (x2, y2) in zip(poly, poly[1:] + poly[:1]):
        d = math.atan2(y2 - y, x2 - x) - math.atan2(y1 - y, x1 - x)
        while d > math.pi:
            d -= 2 * math.pi
        while d < -math.pi:
            d += 2 * math.pi
        total += d
    return abs(total) > math.pi


def nx_inside_set(w, cycle):
    poly = [w.xy(v) for v in cycle]
    on = set(cycle)
    return {v for v in range(w.graph.n) if v not in on and winding_inside(w.xy(v), poly)}


def nx_disjoint_path_count(w, c, d):
    """Exact max number of c-d vertex-disjoint paths in the annulus, via
    networkx node connectivity between two added terminals."""
    allowed = set(d.disk()) - set(c.interior)
    h = nx.Graph()
    h.add_nodes_from(allowed)
    h.add_edges_from(
        (u, v) for u, v in w.graph.edges() if u in allowed and v in allowed
    )
    h.add_edges_from(("s", u) for u in c.cycle)
    h.add_edges_from(("t", u) for u in d.cycle)
    return nx.connectivity.local_node_connectivity(h, "s", "t")


def contracted_cylinder(sub):
    """Contract ring arcs and rung interiors of a subdivision back down and
    return the resulting simple graph."""
    nodes = set()
    for ring in sub.rings:
        nodes |= set(ring)
    for stage in sub.rungs:
        for p in stage:
            nodes |= set(p)
    parent = {v: v for v in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for i, ring in enumerate(sub.rings):
        pos = {v: k for k, v in enumerate(ring)}
        marks = sorted(pos[b] for b in sub.branch[i])
        for t, start in enumerate(marks):
            end = marks[(t + 1) % len(marks)]
            k = (start + 1) % len(ring)
            while k != end:
                union(ring[k], ring[start])
                k = (k + 1) % len(ring)
    for stage in sub.rungs:
        for p in stage:
            for v in p[1:-1]:
                union(v, p[0])
    h = nx.Graph()
    for ring in sub.rings:
        for u, v in zip(ring, ring[1:] + ring[:1]):
            if find(u) != find(v):
                h.add_edge(find(u), find(v))
    for stage in sub.rungs:
        for p in stage:
            for u, v in zip(p, p[1:]):
                if find(u) != find(v):
                    h.add_edge(find(u), find(v))
    return h


def nx_two_linkage_exists(g, p1, p2, q1, q2):
    """Brute-force oracle: some simple p1-p2 path leaves q1,q2 connected."""
    h = to_nx(g)
    for path in nx.all_simple_paths(h, p1, p2):
        rest = h.subgraph(set(h) - set(path))
        if q1 in rest and q2 in rest and nx.has_path(rest, q1, q2):
            return True
    return False


def nx_shorter_enclosing_exists(w, cycle):
    """Exhaustive oracle for tightness: enumerate every simple cycle with
    fewer vertices and test disk containment with the float winding check."""
    targets = set(cycle) | nx_inside_set(w, cycle)
    h = to_nx(w.graph)
    for cand in nx.simple_cycles(h, length_bound=len(cycle) - 1):
        if len(cand) < 3:
            continue
        poly = [w.xy(v) for v in cand]
        cset = set(cand)
        if all(v in cset or winding_inside(w.xy(v), poly) for v in targets):
            return True
    return False


def test_window_structure():
    for rows, cols in [(2, 2), (3, 5), (6, 4)]:
        w = TriangulatedWindow(rows, cols, [0] * ((rows - 1) * (cols - 1)))
        g = w.graph
        assert g.n == rows * cols
        assert g.m == rows * (cols - 1) + (rows - 1) * cols + (rows - 1) * (cols - 1)
        assert len(w.faces) == 2 * (rows - 1) * (cols - 1)
        assert len(w.outer_cycle) == 2 * (rows + cols - 2)
    w = TriangulatedWindow(2, 2, [0])
    assert sorted(w.graph.edges()) == [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]
    assert sorted(map(sorted, w.faces)) == [[0, 1, 3], [0, 2, 3]]
    w = TriangulatedWindow(2, 2, [1])
    assert (1, 2) in w.graph.edges()


def test_window_validation():
    with pytest.raises(ValueError):
        TriangulatedWindow(1, 5, [])
    with pytest.raises(ValueError):
        TriangulatedWindow(3, 3, [0, 1, 0])
    with pytest.raises(ValueError):
        TriangulatedWindow(3, 3, [0, 1, 2, 0])


def test_embedded_cycle_interiors_match_oracle():
    rng = seeded("window-interiors")
    for _ in range(15):
        w = random_window(rng, rng.randrange(3, 7), rng.randrange(3, 7))
        outer = embedded_cycle(w, w.outer_cycle)
        assert set(outer.interior) == nx_inside_set(w, w.outer_cycle)
        face = central_face(w)
        assert set(face.interior) == nx_inside_set(w, face.cycle) == set()


def test_embedded_cycle_validation():
    w = TriangulatedWindow(3, 3, [0] * 4)
    with pytest.raises(ValueError):
        embedded_cycle(w, [0, 1])
    with pytest.raises(ValueError):
        embedded_cycle(w, [0, 1, 0])
    with pytest.raises(ValueError):
        embedded_cycle(w, [0, 1, 5])  # 5-0 is not an edge


def test_route_grid_examples():
    # single demand: one monotone path
    paths = route_grid(4, 6, [2], [5])
    assert len(paths) == 1
    g = build_named("grid", 6, 4)
    for u, v in zip(paths[0], paths[0][1:]):
        assert g.has_edge(u, v)
    assert paths[0][0] == 2 * 4 and paths[0][-1] == 5 * 4 + 3

    with pytest.raises(ValueError):
        route_grid(5, 5, [1, 3], [3, 1])  # crossing demands cannot be planar
    with pytest.raises(ValueError):
        route_grid(4, 5, [0, 2], [1, 3])  # needs 2k+1 columns
    with pytest.raises(ValueError):
        route_grid(5, 3, [0, 4], [0, 1])  # row out of range


def test_route_grid_random_instances():
    rng = seeded("route-grid")
    for k in range(1, 6):
        l = 2 * k + 1
        m = k + 3
        g = build_named("grid", m, l)
        for _ in range(25):
            a = sorted(rng.sample(range(m), k))
            b = sorted(rng.sample(range(m), k))
            paths = route_grid(l, m, a, b)
            used = set()
            for i, p in enumerate(paths):
                assert p[0] == a[i] * l
                assert p[-1] == b[i] * l + (l - 1)
                assert len(set(p)) == len(p)
                assert not (set(p) & used)
                used |= set(p)
                for u, v in zip(p, p[1:]):
                    assert g.has_edge(u, v)


def test_tight_surrounding_grid_window():
    w = TriangulatedWindow(9, 9, [0] * 64)
    face = central_face(w)
    ring = find_tight_surrounding(w, face)
    assert surrounds(w, ring, face)
    assert is_tight(w, ring.cycle)
    assert not nx_shorter_enclosing_exists(w, ring.cycle)
    # no cycle this short can strictly contain the face's three vertices
    # in a one-diagonal-per-cell window, so the ring cannot be a triangle
    assert len(ring.cycle) > 4


def test_tight_surrounding_matches_exhaustive_oracle():
    rng = seeded("tight-oracle")
    done = 0
    while done < 6:
        w = random_window(rng, 7, 7)
        face = central_face(w)
        try:
            ring = find_tight_surrounding(w, face)
        except BoundaryError:
            continue
        assert surrounds(w, ring, face)
        assert is_tight(w, ring.cycle)
        assert not nx_shorter_enclosing_exists(w, ring.cycle)
        done += 1


def test_tight_surrounding_nesting_and_boundary():
    w = TriangulatedWindow(13, 13, [0] * 144)
    face = central_face(w)
    d1 = find_tight_surrounding(w, face)
    d2 = find_tight_surrounding(w, d1)
    assert surrounds(w, d1, face)
    assert surrounds(w, d2, d1)
    assert surrounds(w, d2, face)

    corner = embedded_cycle(w, [0, 1, 14])  # touches the window boundary
    with pytest.raises(BoundaryError):
        find_tight_surrounding(w, corner)


def test_faces_are_tight():
    rng = seeded("face-tight")
    for _ in range(5):
        w = random_window(rng, 5, 5)
        face = central_face(w)
        assert is_tight(w, face.cycle)


def test_menger_concentric():
    w = TriangulatedWindow(13, 13, [0] * 144)
    face = central_face(w)
    d1 = find_tight_surrounding(w, face)
    paths = menger_between_cycles(w, face, d1)
    assert len(paths) == 3 == nx_disjoint_path_count(w, face, d1)
    used = set()
    for src, p in zip(face.cycle, paths):
        assert p[0] == src
        assert p[-1] in set(d1.cycle)
        assert not (set(p) & used)
        used |= set(p)
        assert not (set(p[1:-1]) & (set(face.cycle) | set(d1.cycle)))

    # one ring out: every path is a single edge or a two-edge hop
    d2 = find_tight_surrounding(w, d1)
    paths = menger_between_cycles(w, d1, d2)
    assert len(paths) == len(d1.cycle) == nx_disjoint_path_count(w, d1, d2)
    assert all(len(p) <= 3 for p in paths)


def test_menger_full_flow_when_tight():
    rng = seeded("menger-corpus")
    done = 0
    while done < 8:
        w = random_window(rng, rng.randrange(8, 11), rng.randrange(8, 11))
        face = central_face(w)
        try:
            ring = find_tight_surrounding(w, face)
        except BoundaryError:
            continue
        paths = menger_between_cycles(w, face, ring)
        assert len(paths) == len(face.cycle)
        done += 1


def test_menger_cut_report_on_nontight_cycle():
    # the facial cycle around a U-shaped hole dips into the cavity, so a
    # shorter ring sealing the mouth separates it from anything outside
    w = TriangulatedWindow(13, 13, [0] * 144)
    u_walk = [41, 42, 56, 69, 82, 95, 96, 97, 98, 99, 86, 73, 60, 47,
              48, 62, 75, 88, 101, 114, 127, 126, 125, 124, 123, 122,
              121, 120, 106, 93, 80, 67, 54]
    c = embedded_cycle(w, u_walk)
    ring = find_tight_surrounding(w, c)
    with pytest.raises(CutError) as err:
        menger_between_cycles(w, c, ring)
    cut = set(err.value.cut)
    assert len(cut) < len(c.cycle)
    assert len(cut) == nx_disjoint_path_count(w, c, ring)
    # the reported cut really separates the cycles in the annulus
    allowed = (set(ring.disk()) - set(c.interior)) - cut
    h = to_nx(w.graph).subgraph(allowed)
    reach = set()
    for v in c.cycle:
        if v in allowed:
            reach |= nx.node_connected_component(h, v)
    assert not (reach & set(ring.cycle))

    with pytest.raises(ValueError):
        menger_between_cycles(w, c, c)


def test_cylindrical_subdivision_small():
    w = TriangulatedWindow(13, 13, [0] * 144)
    face = central_face(w)
    rings = [face]
    for _ in range(2):
        rings.append(find_tight_surrounding(w, rings[-1]))
    for m in (2, 3):
        sub = cylindrical_subdivision(w, rings[:m])
        assert len(sub.branch) == m
        expected = product(
            "cartesian", build_named("cycle", 3), build_named("path", m)
        )
        assert nx.is_isomorphic(contracted_cylinder(sub), to_nx(expected))

    # l=4: two flipped diagonals create a diamond around the center vertex
    bits = [0] * 64
    bits[3 * 8 + 3] = 1
    bits[4 * 8 + 4] = 1
    wd = TriangulatedWindow(9, 9, bits)
    diamond = embedded_cycle(
        wd, [wd.vid(3, 4), wd.vid(4, 5), wd.vid(5, 4), wd.vid(4, 3)]
    )
    assert is_tight(wd, diamond.cycle)
    rings = [diamond]
    for _ in range(2):
        rings.append(find_tight_surrounding(wd, rings[-1]))
    for m in (2, 3):
        sub = cylindrical_subdivision(wd, rings[:m])
        expected = product(
            "cartesian", build_named("cycle", 4), build_named("path", m)
        )
        assert nx.is_isomorphic(contracted_cylinder(sub), to_nx(expected))


def test_cylindrical_subdivision_single_cycle():
    w = TriangulatedWindow(9, 9, [0] * 64)
    face = central_face(w)
    sub = cylindrical_subdivision(w, [face])
    assert sub.branch == (tuple(face.cycle),)
    assert sub.rungs == ()


def test_cylindrical_subdivision_four_rings():
    w = TriangulatedWindow(15, 15, [0] * 196)
    rings = [central_face(w)]
    for _ in range(3):
        rings.append(find_tight_surrounding(w, rings[-1]))
    sub = cylindrical_subdivision(w, rings)
    assert len(sub.branch) == 4
    expected = product("cartesian", build_named("cycle", 3), build_named("path", 4))
    assert nx.is_isomorphic(contracted_cylinder(sub), to_nx(expected))


def test_two_disjoint_paths_against_oracle():
    c4 = build_named("cycle", 4)
    assert two_disjoint_paths_small(c4, 0, 2, 1, 3) is None
    assert not nx_two_linkage_exists(c4, 0, 2, 1, 3)

    g33 = build_named("grid", 3, 3)
    assert two_disjoint_paths_small(g33, 0, 8, 2, 6) is None
    got = two_disjoint_paths_small(g33, 0, 8, 2, 6, extra_edge=(3, 5))
    assert got is not None
    p, q = got
    assert p[0] == 0 and p[-1] == 8 and q[0] == 2 and q[-1] == 6
    assert not (set(p) & set(q))

    k4 = build_named("complete", 4)
    assert two_disjoint_paths_small(k4, 0, 1, 2, 3) == ((0, 1), (2, 3))

    rng = seeded("two-paths")
    for _ in range(40):
        n = rng.randrange(5, 9)
        g = Graph(
            n,
            [
                (u, v)
                for u in range(n)
                for v in range(u + 1, n)
                if rng.random() < 0.4
            ],
        )
        terms = rng.sample(range(n), 4)
        got = two_disjoint_paths_small(g, *terms)
        assert (got is not None) == nx_two_linkage_exists(g, *terms)
        if got is not None:
            p, q = got
            assert not (set(p) & set(q))
            for path in (p, q):
                for u, v in zip(path, path[1:]):
                    assert g.has_edge(u, v)

    with pytest.raises(ValueError):
        two_disjoint_paths_small(build_named("path", 17), 0, 1, 2, 3)
    with pytest.raises(ValueError):
        two_disjoint_paths_small(k4, 0, 0, 1, 2)


def test_clique_minor_trivial_and_small():
    w = TriangulatedWindow(13, 13, [0] * 144)
    m2 = clique_minor_with_jumps(w, [], 2)
    assert isinstance(m2, MinorModel)
    assert verify_model(w.graph, [], m2) is None

    m3 = clique_minor_with_jumps(w, [], 3)
    assert isinstance(m3, MinorModel)
    assert m3.jumps_used == ()
    assert verify_model(w.graph, [], m3) is None

    with pytest.raises(ValueError):
        clique_minor_with_jumps(w, [], 1)
    with pytest.raises(ValueError):
        clique_minor_with_jumps(w, [(0, 1)], 3)  # existing edge
    with pytest.raises(ValueError):
        clique_minor_with_jumps(w, [(40, 42), (42, 44)], 3)  # not a matching


def test_clique_minor_k4_with_jumps():
    w = TriangulatedWindow(25, 25, [0] * 576)
    jumps = random_jumps(w, seeded("jumps-k4"), 10)
    model = clique_minor_with_jumps(w, jumps, 4)
    assert isinstance(model, MinorModel)
    assert len(model.jumps_used) >= 1
    assert verify_model(w.graph, jumps, model) is None
    # spent jumps must come from the offered matching
    assert set(model.jumps_used) <= set(jumps)


def test_clique_minor_k5_without_jumps_fails():
    w = TriangulatedWindow(25, 25, [0] * 576)
    res = clique_minor_with_jumps(w, [], 5)
    assert isinstance(res, StageFailure)
    assert res.stage == "switch"


def test_windows_are_k5_minor_free():
    # cross-check with the exhaustive minor oracle (kept tiny: the oracle is
    # exponential and a single 3x4 window already takes seconds)
    rng = seeded("window-minors")
    w = random_window(rng, 3, 4)
    assert is_kt_minor_free_small(w.graph, 5)
    w = TriangulatedWindow(3, 3, [0] * 4)
    assert is_kt_minor_free_small(w.graph, 5)
    assert not is_kt_minor_free_small(w.graph, 4)


def test_verify_model_rejects_bad_models():
    ok_w = TriangulatedWindow(9, 9, [0] * 64)
    ok = clique_minor_with_jumps(ok_w, [], 3)
    assert verify_model(ok_w.graph, [], ok) is None

    w = TriangulatedWindow(5, 5, [0] * 16)
    g = w.graph

    overlap = MinorModel(2, (frozenset({0, 1}), frozenset({1, 2})), ())
    assert "overlaps" in verify_model(g, [], overlap)
    disconnected = MinorModel(2, (frozenset({0, 24}), frozenset({1})), ())
    assert "connected" in verify_model(g, [], disconnected)
    nonadjacent = MinorModel(2, (frozenset({0}), frozenset({24})), ())
    assert "adjacent" in verify_model(g, [], nonadjacent)
    empty = MinorModel(2, (frozenset(), frozenset({1})), ())
    assert "empty" in verify_model(g, [], empty)


def test_random_jumps_form_matching():
    w = TriangulatedWindow(25, 25, [0] * 576)
    jumps = random_jumps(w, seeded("jump-props"), 10)
    assert len(jumps) == 10
    ends = [v for j in jumps for v in j]
    assert len(set(ends)) == 20
    for u, v in jumps:
        assert not w.graph.has_edge(u, v)
        assert not w.is_boundary(u) and not w.is_boundary(v)
    again = random_jumps(w, seeded("jump-props"), 10)
    assert again == jumps


def test_window_json_round_trip():
    rng = seeded("window-json")
    for _ in range(5):
        w = random_window(rng, rng.randrange(3, 8), rng.randrange(3, 8))
        jumps = random_jumps(w, rng, 2, reach=(2, 3)) if w.rows >= 6 else []
        blob = window_to_json(w, jumps)
        w2, j2 = window_from_json(blob)
        assert window_to_json(w2, j2) == blob
        assert w2.rows == w.rows and w2.cols == w.cols
        assert w2.diagonals == w.diagonals
        assert list(j2) == sorted(tuple(j) for j in jumps)  # emit canonicalizes
    with pytest.raises(ValueError):
        window_from_json('{"version": 2}')
