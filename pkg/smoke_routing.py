import random
import sys
import time

sys.path.insert(0, "src")

from sgtk.graphs import Graph, build_named
from sgtk.planar_routing import (
    BoundaryError,
    CutError,
    CylSubdivision,
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
    route_grid,
    surrounds,
    two_disjoint_paths_small,
    verify_model,
    window_from_json,
    window_to_json,
    _hole_walk,
    _vertex_flow,
)

rng = random.Random("smoke-routing")


def rand_window(rows, cols, rng):
    bits = [rng.randrange(2) for _ in range((rows - 1) * (cols - 1))]
    return TriangulatedWindow(rows, cols, bits)


t0 = time.time()

# 1. construction
for rows, cols in [(2, 2), (3, 3), (4, 7), (9, 9)]:
    for bits in (0, 1):
        w = TriangulatedWindow(rows, cols, [bits] * ((rows - 1) * (cols - 1)))
        assert w.graph.n == rows * cols
for _ in range(10):
    rand_window(rng.randrange(2, 8), rng.randrange(2, 8), rng)
try:
    TriangulatedWindow(3, 3, [0, 1, 2, 0])
    raise SystemExit("bad bits accepted")
except ValueError:
    pass
try:
    TriangulatedWindow(3, 3, [0])
    raise SystemExit("short bits accepted")
except ValueError:
    pass
print("construction ok", round(time.time() - t0, 2))

# 2. faces / embedded cycles
w9 = rand_window(9, 9, random.Random("w9"))
face = central_face(w9)
print("central face:", face.cycle, "interior", sorted(face.interior))
assert len(face.cycle) == 3 and not face.interior
outer = embedded_cycle(w9, w9.outer_cycle)
assert surrounds(w9, outer, face)
assert len(outer.interior) == 81 - len(w9.outer_cycle)

# 3. hole walk + tight surrounding
walk = _hole_walk(w9, set(face.cycle))
print("hole walk:", walk)
ring = find_tight_surrounding(w9, face)
print("tight ring:", ring.cycle)
assert surrounds(w9, ring, face)
assert is_tight(w9, ring.cycle)
assert is_tight(w9, face.cycle)  # faces are trivially tight
try:
    _hole_walk(w9, {0})
    raise SystemExit("boundary hole accepted")
except BoundaryError:
    pass
print("tight ok", round(time.time() - t0, 2))

# 4. route_grid
for k in range(1, 6):
    l = 2 * k + 1
    m = 2 * k + 2
    rs = random.Random(f"rg-{k}")
    for trial in range(20):
        a = sorted(rs.sample(range(m), k))
        b = sorted(rs.sample(range(m), k))
        paths = route_grid(l, m, a, b)
        g = build_named("grid", m, l)
        seen = set()
        for i, p in enumerate(paths):
            assert p[0] == a[i] * l and p[-1] == b[i] * l + (l - 1), (a, b, i, p)
            assert len(set(p)) == len(p)
            assert not (set(p) & seen)
            seen |= set(p)
            for u, v in zip(p, p[1:]):
                assert g.has_edge(u, v), (u, v)
try:
    route_grid(5, 5, [1, 3], [3, 1])
    raise SystemExit("crossing demands accepted")
except ValueError as e:
    print("crossing rejected:", e)
print("route_grid ok", round(time.time() - t0, 2))

# 5. menger
paths = menger_between_cycles(w9, face, ring)
print("menger paths:", paths)
assert len(paths) == 3
seen = set()
for src, p in zip(face.cycle, paths):
    assert p[0] == src and p[-1] in set(ring.cycle)
    assert not (set(p) & seen)
    seen |= set(p)
    assert not (set(p[1:-1]) & (set(face.cycle) | set(ring.cycle)))

# ring -> next ring full menger
ring2 = find_tight_surrounding(w9, ring)
print("ring2:", ring2.cycle)
assert not (set(ring2.cycle) & set(w9.outer_cycle))
try:
    paths2 = menger_between_cycles(w9, ring, ring2)
    print("menger ring->ring2:", len(paths2), "paths")
except CutError as e:
    print("menger ring->ring2 CUT:", e, e.cut)
try:
    find_tight_surrounding(w9, ring2)
    raise SystemExit("ring3 in 9x9 should hit the boundary")
except BoundaryError:
    pass
print("menger ok", round(time.time() - t0, 2))

# 6. cylindrical subdivision, l=3
w13 = TriangulatedWindow(13, 13, [0] * 144)
f13 = central_face(w13)
r1 = find_tight_surrounding(w13, f13)
r2 = find_tight_surrounding(w13, r1)
print("w13 rings:", f13.cycle, r1.cycle, r2.cycle)
for cycles in ([f13, r1], [f13, r1, r2]):
    sub = cylindrical_subdivision(w13, cycles)
    print("cyl l=3 m=%d ok" % len(cycles), [len(b) for b in sub.branch])

# l=4: engineered diamond around (4,4) in a 9x9 all-zero window
bits = [0] * 64
def cell(r, c):
    return r * 8 + c
bits[cell(3, 3)] = 1
bits[cell(4, 4)] = 1
wd = TriangulatedWindow(9, 9, bits)
N, E, S, W = wd.vid(3, 4), wd.vid(4, 5), wd.vid(5, 4), wd.vid(4, 3)
diamond = embedded_cycle(wd, [N, E, S, W])
print("diamond interior:", sorted(diamond.interior))
assert is_tight(wd, diamond.cycle)
rd1 = find_tight_surrounding(wd, diamond)
rd2 = find_tight_surrounding(wd, rd1)
for cycles in ([diamond, rd1], [diamond, rd1, rd2]):
    sub = cylindrical_subdivision(wd, cycles)
    print("cyl l=4 m=%d ok" % len(cycles), [len(b) for b in sub.branch])
print("cyl ok", round(time.time() - t0, 2))

# 7. two disjoint paths
c4 = build_named("cycle", 4)
assert two_disjoint_paths_small(c4, 0, 2, 1, 3) is None
g33 = build_named("grid", 3, 3)
assert two_disjoint_paths_small(g33, 0, 8, 2, 6) is None
got = two_disjoint_paths_small(g33, 0, 8, 2, 6, extra_edge=(3, 5))
print("3x3 grid + jump:", got)
assert got is not None
k4 = build_named("complete", 4)
assert two_disjoint_paths_small(k4, 0, 1, 2, 3) is not None
print("two paths ok", round(time.time() - t0, 2))

# 8. clique minor p=2,3 without jumps
m2 = clique_minor_with_jumps(w13, [], 2)
assert isinstance(m2, MinorModel) and verify_model(w13.graph, [], m2) is None
m3 = clique_minor_with_jumps(w13, [], 3)
print("p=3:", type(m3).__name__, getattr(m3, "jumps_used", None) or getattr(m3, "detail", None))
assert isinstance(m3, MinorModel)
print("p<=3 ok", round(time.time() - t0, 2))

# 9. p=5 with no jumps must fail at the switch stage
w25 = TriangulatedWindow(25, 25, [0] * 576)
r5 = clique_minor_with_jumps(w25, [], 5)
print("p=5 no jumps:", r5)
assert isinstance(r5, StageFailure) and r5.stage == "switch"
print("p=5 failure ok", round(time.time() - t0, 2))

# 10. p=4 on 25x25 with scattered jumps
from sgtk.planar_routing import random_jumps

for seed in range(8):
    jr = random.Random(f"jumps-{seed}")
    jumps = random_jumps(w25, jr, 10)
    t1 = time.time()
    res = clique_minor_with_jumps(w25, jumps, 4)
    dt = round(time.time() - t1, 2)
    if isinstance(res, MinorModel):
        print(f"p=4 seed {seed}: OK in {dt}s, jumps used {res.jumps_used}")
        assert verify_model(w25.graph, jumps, res) is None
    else:
        print(f"p=4 seed {seed}: {res.stage}: {res.detail} ({dt}s)")
print("p=4 sweep done", round(time.time() - t0, 2))

# 11. json round trip
blob = window_to_json(wd, [(1, 40)])
wd2, j2 = window_from_json(blob)
assert window_to_json(wd2, j2) == blob
assert wd2.diagonals == wd.diagonals and j2 == ((1, 40),)
print("json ok")
print("total", round(time.time() - t0, 2), "s")
