"""Graph file formats: edge list, graph6, JSON, and emit-only DOT.

Edge list, graph6, and JSON round-trip losslessly (including isolated
vertices); parse errors carry the offending line or byte position.
"""

import json
from typing import List, Tuple

from .graphs import Graph

FORMATS = ("edgelist", "graph6", "json", "dot")


def read_edgelist(text: str) -> Graph:
    """One "u v" pair per line.  A leading "# n N" comment pins the vertex
    count (needed to keep isolated vertices); otherwise max id + 1 is used."""
    n = None
    rows: List[Tuple[int, int, int]] = []
    top = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            fields = line[1:].split()
            if len(fields) == 2 and fields[0] == "n":
                try:
                    n = int(fields[1])
                except ValueError:
                    raise ValueError(f"line {lineno}: bad vertex count {fields[1]!r}")
            continue
        fields = line.split()
        if len(fields) != 2:
            raise ValueError(f"line {lineno}: expected two vertex ids, got {line!r}")
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise ValueError(f"line {lineno}: expected two vertex ids, got {line!r}")
        if u < 0 or v < 0:
            raise ValueError(f"line {lineno}: negative vertex id")
        rows.append((lineno, u, v))
        top = max(top, u, v)
    if n is None:
        n = top + 1
    else:
        for lineno, u, v in rows:
            if max(u, v) >= n:
                raise ValueError(
                    f"line {lineno}: edge uses vertex {max(u, v)} but header pins n = {n}"
                )
    return Graph(n, [(u, v) for _, u, v in rows])


def write_edgelist(g: Graph) -> str:
    lines = [f"# n {g.n}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def read_graph6(text: str) -> Graph:
    """Standard graph6: printable bytes 63..126, n <= 62 in one byte, then the
    upper triangle column by column, six bits per byte."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise ValueError("empty graph6 input")
    first = ord(s[0])
    if first == 126:
        raise ValueError("byte 0: graphs with more than 62 vertices not supported")
    if not 63 <= first <= 125:
        raise ValueError(f"byte 0: invalid graph6 size byte {s[0]!r}")
    n = first - 63
    need = (n * (n - 1) // 2 + 5) // 6
    body = s[1:]
    if len(body) != need:
        raise ValueError(f"expected {need} data bytes for n={n}, got {len(body)}")
    bits = []
    for pos, ch in enumerate(body, start=1):
        val = ord(ch) - 63
        if not 0 <= val < 64:
            raise ValueError(f"byte {pos}: invalid graph6 data byte {ch!r}")
        bits.extend((val >> shift) & 1 for shift in range(5, -1, -1))
    edges = []
    idx = 0
    for v in range(1, n):
        for u in range(v):
            if bits[idx]:
                edges.append((u, v))
            idx += 1
    return Graph(n, edges)


def write_graph6(g: Graph) -> str:
    if g.n > 62:
        raise ValueError("graphs with more than 62 vertices not supported")
    bits = []
    for v in range(1, g.n):
        for u in range(v):
            bits.append(1 if g.has_edge(u, v) else 0)
    while len(bits) % 6:
        bits.append(0)
    out = [chr(g.n + 63)]
    for i in range(0, len(bits), 6):
        val = 0
        for b in bits[i : i + 6]:
            val = (val << 1) | b
        out.append(chr(val + 63))
    return "".join(out) + "\n"


def read_json_graph(text: str) -> Graph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValueError(f"byte {e.pos}: {e.msg}")
    if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
        raise ValueError('graph JSON needs an object with "n" and "edges"')
    return Graph(int(obj["n"]), [tuple(e) for e in obj["edges"]])


def write_json_graph(g: Graph) -> str:
    obj = {"n": g.n, "edges": [list(e) for e in g.edges()]}
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def write_dot(g: Graph) -> str:
    lines = ["graph g {"]
    lines += [f"  {v};" for v in g.vertices()]
    lines += [f"  {u} -- {v};" for u, v in g.edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"


def read_graph(text: str, fmt: str) -> Graph:
    if fmt == "edgelist":
        return read_edgelist(text)
    if fmt == "graph6":
        return read_graph6(text)
    if fmt == "json":
        return read_json_graph(text)
    if fmt == "dot":
        raise ValueError("dot is emit-only")
    raise ValueError(f"unknown format {fmt!r}")


def write_graph(g: Graph, fmt: str) -> str:
    if fmt == "edgelist":
        return write_edgelist(g)
    if fmt == "graph6":
        return write_graph6(g)
    if fmt == "json":
        return write_json_graph(g)
    if fmt == "dot":
        return write_dot(g)
    raise ValueError(f"unknown format {fmt!r}")
