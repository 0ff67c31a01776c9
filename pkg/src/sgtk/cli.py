"""Command-line surface.

Structured results go to stdout, one JSON object per run (commands that emit
a graph write it in the chosen --format instead); diagnostics go to stderr.
Exit codes: 0 for success, including honest negative results such as a minor
search giving up; 2 for argument or input parse errors; 3 for size caps;
4 for validation violations, which also print a machine-readable violation
object.  Artifact files that are not valid JSON are parse errors (exit 2);
artifacts that parse but fail their schema or their semantic checks are
violations (exit 4).

Determinism: all randomness flows from one generator seeded by --seed (or
SGTK_SEED), so identical (command, inputs, seed) produce identical bytes.
The flags --seed, --cap-n, --format and --out are mirrored by the
environment variables SGTK_SEED, SGTK_CAP_N, SGTK_FORMAT and SGTK_OUT;
the flag wins when both are set.
"""

import argparse
import json
import os
import random
import sys

from .chordal import (
    COMPLETION_CAP,
    Peo,
    chordal_completion_exact,
    recognize_chordal,
)
from .colnum import COL_EXACT_CAP, col_r_exact
from .graphs import bfs_layering, build_named
from .io import FORMATS, read_graph, write_graph
from .minorfree import KtMinorFound, cert_from_json, cert_to_json, chordal_partition_kt, verify_cert
from .planar_routing import (
    BoundaryError,
    MinorModel,
    TriangulatedWindow,
    central_face,
    clique_minor_with_jumps,
    find_tight_surrounding,
    random_jumps,
    route_grid,
    window_from_json,
    window_to_json,
)
from .products import LayeredPartition, partition_to_embedding, product, quotient
from .treedecomp import TW_CAP, TreeDecomposition, exact_treewidth
from .treedecomp import validate as validate_td
from .universal import (
    TK_VERTEX_CAP,
    CapacityError,
    ColouredTree,
    TruncationParams,
    addr_to_str,
    embed_into_tk,
    g_of,
    rk_trunc,
    sk_trunc,
    str_to_addr,
    tk_trunc,
    trunc_colours,
    verify_embedding,
)

_NAMED_ARITY = {
    "complete": 1,
    "complete_bipartite": 2,
    "path": 1,
    "cycle": 1,
    "grid": 2,
    "cylinder": 2,
    "triapex": 1,
}


class ParseInput(Exception):
    """Malformed input file or flag combination (exit 2)."""


class SizeCap(Exception):
    """Input exceeds a hard or user-imposed size cap (exit 3)."""


class Violation(Exception):
    """A validation failure; carries the machine-readable object (exit 4)."""

    def __init__(self, payload):
        super().__init__(payload.get("problem", "validation failed"))
        self.payload = payload


def _json(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _read_text(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_graph(path, fmt):
    return read_graph(_read_text(path), fmt)


def _load_window(path):
    text = _read_text(path)
    try:
        return window_from_json(text)
    except json.JSONDecodeError as exc:
        raise ParseInput(f"window file: byte {exc.pos}: {exc.msg}")
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseInput(f"window file: {exc}")


def _artifact(text, parse, kind):
    """Parse an artifact body; schema problems become violations, not crashes."""
    try:
        return parse(text)
    except json.JSONDecodeError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise Violation({"valid": False, "kind": kind, "problem": f"malformed artifact: {exc}"})


def _cap(n, hard, args, what):
    cap = hard if args.cap_n is None else min(hard, args.cap_n)
    if n > cap:
        raise SizeCap(f"{what}: n = {n} exceeds cap {cap}")


def _user_cap(n, args, what):
    if args.cap_n is not None and n > args.cap_n:
        raise SizeCap(f"{what}: n = {n} exceeds cap {args.cap_n}")


def _growth_guard(branching, depth, args, what):
    """Size of a depth-truncated tree with the given branching, pre-checked
    against the truncation vertex cap so huge requests stop early."""
    cap = TK_VERTEX_CAP if args.cap_n is None else min(TK_VERTEX_CAP, args.cap_n)
    total, level = 1, 1
    for _ in range(depth):
        level *= branching
        total += level
        if total > cap:
            raise SizeCap(f"{what}: truncation would exceed {cap} vertices")
    return total


def _need(cond, msg):
    if not cond:
        raise ParseInput(msg)


def _csv_ints(text, flag):
    try:
        return [int(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError:
        raise ParseInput(f"{flag} wants comma-separated integers, got {text!r}")


# -- command handlers; each returns the full output text ---------------------


def _cmd_gen(args):
    fam = args.family
    if fam in _NAMED_ARITY:
        want = _NAMED_ARITY[fam]
        _need(len(args.params) == want, f"gen {fam} takes {want} integer parameter(s)")
        g = build_named(fam, *args.params)
        _user_cap(g.n, args, f"gen {fam}")
        return write_graph(g, args.format)
    _need(not args.params, f"gen {fam} takes flags, not positional parameters")
    if fam == "tk":
        _need(args.k is not None and args.depth is not None, "gen tk needs --k and --depth")
        _growth_guard(args.k * args.mult, args.depth, args, "gen tk")
        g, _ = tk_trunc(args.k, TruncationParams(args.depth, args.mult))
        return write_graph(g, args.format)
    if fam == "rk":
        _need(args.k is not None and args.depth is not None, "gen rk needs --k and --depth")
        _growth_guard(args.k, args.depth, args, "gen rk")
        g, _ = rk_trunc(args.k, args.depth)
        return write_graph(g, args.format)
    if fam == "sk":
        _need(args.k is not None and args.spine is not None, "gen sk needs --k and --spine")
        _growth_guard(args.k, args.depth if args.depth is not None else 2, args, "gen sk")
        g, _ = sk_trunc(args.k, args.spine, args.seed, depth=args.depth if args.depth is not None else 2)
        _user_cap(g.n, args, "gen sk")
        return write_graph(g, args.format)
    # window
    _need(args.rows is not None and args.cols is not None, "gen window needs --rows and --cols")
    _user_cap(args.rows * args.cols, args, "gen window")
    rng = random.Random(args.seed)
    cells = (args.rows - 1) * (args.cols - 1)
    _need(cells > 0, "gen window needs --rows and --cols at least 2")
    bits = [0] * cells if args.flat else [rng.randrange(2) for _ in range(cells)]
    w = TriangulatedWindow(args.rows, args.cols, bits)
    if args.as_graph:
        return write_graph(w.graph, args.format)
    jumps = random_jumps(w, rng, args.jump_count) if args.jump_count else ()
    return window_to_json(w, jumps)


def _cmd_tw(args):
    g = _load_graph(args.input, args.format)
    _cap(g.n, TW_CAP, args, "tw")
    tw, td = exact_treewidth(g)
    if args.witness:
        return _json({"treewidth": tw, "decomposition": td.to_json_obj()})
    return _json({"treewidth": tw})


def _cmd_stw(args):
    g = _load_graph(args.input, args.format)
    _cap(g.n, COMPLETION_CAP, args, "stw")
    for k in range(0, g.n + 1):
        if chordal_completion_exact(g, k, forbid_wk=True) is not None:
            return _json({"simple_treewidth": k})
    raise AssertionError("the complete graph is always an admissible completion")


def _cmd_chordal(args):
    g = _load_graph(args.input, args.format)
    res = recognize_chordal(g)
    if isinstance(res, Peo):
        return _json({"chordal": True, "peo": list(res.order)})
    return _json({"chordal": False, "chordless_cycle": list(res)})


def _cmd_colr(args):
    g = _load_graph(args.input, args.format)
    _cap(g.n, COL_EXACT_CAP, args, "colr")
    res = col_r_exact(g, args.r)
    if args.witness:
        return _json({"value": res.value, "order": list(res.order)})
    return _json({"value": res.value})


def _cmd_embed_tk(args):
    g = _load_graph(args.input, args.format)
    _cap(g.n, TW_CAP, args, "embed-tk")
    tw, td = exact_treewidth(g)
    if tw > args.k:
        return _json({"embedded": False, "reason": f"treewidth {tw} exceeds k = {args.k}"})
    try:
        amap = embed_into_tk(g, args.k, TruncationParams(args.depth, args.mult), td=td)
    except CapacityError as exc:
        return _json({"embedded": False, "reason": str(exc)})
    return _json(
        {
            "embedded": True,
            "k": args.k,
            "depth": args.depth,
            "mult": args.mult,
            "map": {str(v): addr_to_str(a) for v, a in sorted(amap.items())},
        }
    )


def _cmd_product(args):
    a = _load_graph(args.a, args.format)
    b = _load_graph(args.b, args.format)
    _user_cap(a.n * b.n, args, "product")
    return write_graph(product(args.kind, a, b), args.format)


def _cmd_layered(args):
    g = _load_graph(args.input, args.format)
    _user_cap(g.n, args, "layered")
    if g.n == 0:
        return _json({"width": 0, "parts": [], "layers": [], "quotient": {"n": 0, "edges": []}})
    _need(0 <= args.root < g.n, f"--root {args.root} out of range for n = {g.n}")
    _need(args.chunk >= 1, "--chunk must be at least 1")
    lay = bfs_layering(g, [args.root])
    parts = []
    for layer in lay.layers:
        for i in range(0, len(layer), args.chunk):
            parts.append(list(layer[i : i + args.chunk]))
    lp = LayeredPartition(g, parts, lay)
    partition_to_embedding(g, lp)  # verifies the embedding direction
    quot = quotient(g, lp.parts)
    return _json(
        {
            "width": lp.width,
            "parts": [list(part) for part in lp.parts],
            "layers": [list(layer) for layer in lay.layers],
            "quotient": {"n": quot.n, "edges": [list(e) for e in quot.edges()]},
        }
    )


def _cmd_partition_kt(args):
    g = _load_graph(args.input, args.format)
    _user_cap(g.n, args, "partition-kt")
    try:
        cert = chordal_partition_kt(g, args.t)
    except KtMinorFound as exc:
        return _json(
            {
                "certified": False,
                "t": exc.t,
                "minor_branch_sets": [sorted(bs) for bs in exc.branch_sets],
            }
        )
    return cert_to_json(cert, g)


def _cmd_route(args):
    a = _csv_ints(args.a, "--a")
    b = _csv_ints(args.b, "--b")
    paths = route_grid(args.cols, args.rows, a, b)
    return _json({"paths": [list(p) for p in paths]})


def _cmd_tight(args):
    w, _ = _load_window(args.input)
    face = central_face(w)
    try:
        ring = find_tight_surrounding(w, face, slack_rings=args.slack)
    except BoundaryError as exc:
        return _json({"found": False, "reason": str(exc)})
    return _json(
        {
            "found": True,
            "around": list(face.cycle),
            "cycle": list(ring.cycle),
            "length": len(ring.cycle),
            "interior_size": len(ring.interior),
        }
    )


def _cmd_minor_jumps(args):
    w, jumps = _load_window(args.input)
    res = clique_minor_with_jumps(w, list(jumps), args.p)
    if isinstance(res, MinorModel):
        return _json(
            {
                "found": True,
                "order": res.order,
                "branch_sets": [sorted(bs) for bs in res.branch_sets],
                "jumps_used": [list(j) for j in res.jumps_used],
            }
        )
    return _json({"found": False, "stage": res.stage, "detail": res.detail})


def _cmd_validate(args):
    g = _load_graph(args.input, args.format)
    text = _read_text(args.artifact)
    if args.kind == "td":
        td = _artifact(text, TreeDecomposition.from_json, "td")
        msg = validate_td(td, g)
        if msg:
            raise Violation({"valid": False, "kind": "td", "problem": msg, "n": g.n})
        return _json({"valid": True, "kind": "td", "width": td.width()})
    if args.kind == "cert":
        cert = _artifact(text, cert_from_json, "cert")
        msg = verify_cert(g, cert, args.t)
        if msg:
            raise Violation({"valid": False, "kind": "cert", "problem": msg, "n": g.n, "t": args.t})
        return _json({"valid": True, "kind": "cert", "t": args.t, "parts": len(cert.parts)})
    # embedding: evaluate the graph operator on the image subtree only, so
    # truncations far beyond the materialization cap still validate
    obj = _artifact(text, json.loads, "embedding")
    try:
        k, depth, mult = int(obj["k"]), int(obj["depth"]), int(obj["mult"])
        raw_map = dict(obj["map"])
    except (KeyError, TypeError, ValueError) as exc:
        raise Violation({"valid": False, "kind": "embedding", "problem": f"malformed artifact: {exc}"})
    params = TruncationParams(depth, mult)
    addr_of = {}
    colour = {(): 0}
    for v, text_addr in raw_map.items():
        try:
            addr = str_to_addr(text_addr)
            chain = trunc_colours(k, params, addr)
        except ValueError as exc:
            raise Violation({"valid": False, "kind": "embedding", "problem": str(exc)})
        addr_of[int(v)] = addr
        for cut in range(len(addr) + 1):
            colour[addr[:cut]] = chain[cut]
    host, _, addrs = g_of(ColouredTree(colour))
    index = {a: i for i, a in enumerate(addrs)}
    try:
        ok = verify_embedding(g, host, {v: index[a] for v, a in addr_of.items()})
    except ValueError as exc:
        raise Violation({"valid": False, "kind": "embedding", "problem": str(exc)})
    if not ok:
        raise Violation(
            {"valid": False, "kind": "embedding", "problem": "map is not injective or drops an edge"}
        )
    return _json({"valid": True, "kind": "embedding", "k": k, "depth": depth, "mult": mult})


# -- parser and dispatch ------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="seed for all randomness (default 0)")
    common.add_argument("--cap-n", dest="cap_n", type=int, default=None, help="refuse inputs larger than this")
    common.add_argument("--format", choices=FORMATS, default=None, help="graph file format (default edgelist)")
    common.add_argument("--out", default=None, help="write output to this file instead of stdout")

    parser = argparse.ArgumentParser(prog="sgtk", description="graph structure toolkit")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("gen", parents=[common], help="generate a named graph, truncation, or window")
    p.add_argument("family", choices=sorted(_NAMED_ARITY) + ["rk", "sk", "tk", "window"])
    p.add_argument("params", nargs="*", type=int, help="parameters for named families")
    p.add_argument("--k", type=int, help="truncation parameter k")
    p.add_argument("--depth", type=int, help="truncation depth")
    p.add_argument("--mult", type=int, default=1, help="children per (colour, label) class")
    p.add_argument("--spine", type=int, help="spine size for sk")
    p.add_argument("--rows", type=int, help="window rows")
    p.add_argument("--cols", type=int, help="window columns")
    p.add_argument("--jump-count", dest="jump_count", type=int, default=0, help="random jump edges for window")
    p.add_argument("--flat", action="store_true", help="window with all diagonals in the same direction")
    p.add_argument("--as-graph", dest="as_graph", action="store_true", help="emit the window graph in --format")
    p.set_defaults(handler=_cmd_gen)

    p = sub.add_parser("tw", parents=[common], help="exact treewidth")
    p.add_argument("input", help="graph file, or - for stdin")
    p.add_argument("--witness", action="store_true", help="include the decomposition")
    p.set_defaults(handler=_cmd_tw)

    p = sub.add_parser("stw", parents=[common], help="exact simple treewidth via completions")
    p.add_argument("input")
    p.set_defaults(handler=_cmd_stw)

    p = sub.add_parser("chordal", parents=[common], help="chordality with witness")
    p.add_argument("input")
    p.set_defaults(handler=_cmd_chordal)

    p = sub.add_parser("colr", parents=[common], help="exact r-th colouring number")
    p.add_argument("input")
    p.add_argument("--r", type=int, required=True, help="reach radius r")
    p.add_argument("--witness", action="store_true", help="include the optimal order")
    p.set_defaults(handler=_cmd_colr)

    p = sub.add_parser("embed-tk", parents=[common], help="embed a graph into a universal truncation")
    p.add_argument("input")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--mult", type=int, default=1)
    p.set_defaults(handler=_cmd_embed_tk)

    p = sub.add_parser("product", parents=[common], help="graph product of two inputs")
    p.add_argument("kind", choices=("cartesian", "direct", "strong"))
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(handler=_cmd_product)

    p = sub.add_parser("layered", parents=[common], help="layered partition from a BFS layering")
    p.add_argument("input")
    p.add_argument("--root", type=int, default=0, help="BFS root (default 0)")
    p.add_argument("--chunk", type=int, default=1, help="part size within each layer (default 1)")
    p.set_defaults(handler=_cmd_layered)

    p = sub.add_parser("partition-kt", parents=[common], help="chordal partition certificate")
    p.add_argument("input")
    p.add_argument("--t", type=int, required=True, help="forbidden clique minor order")
    p.set_defaults(handler=_cmd_partition_kt)

    p = sub.add_parser("route", parents=[common], help="disjoint monotone paths in a grid")
    p.add_argument("--rows", type=int, required=True, help="grid rows m")
    p.add_argument("--cols", type=int, required=True, help="grid columns l")
    p.add_argument("--a", required=True, help="left-side rows, comma separated, top to bottom")
    p.add_argument("--b", required=True, help="right-side rows, comma separated, top to bottom")
    p.set_defaults(handler=_cmd_route)

    p = sub.add_parser("tight", parents=[common], help="tight cycle surrounding the central face")
    p.add_argument("input", help="window JSON file")
    p.add_argument("--slack", type=int, default=2, help="extra rings to search within (default 2)")
    p.set_defaults(handler=_cmd_tight)

    p = sub.add_parser("minor-jumps", parents=[common], help="clique minor search in a window with jumps")
    p.add_argument("input", help="window JSON file (jumps included)")
    p.add_argument("--p", type=int, required=True, help="clique minor order to build")
    p.set_defaults(handler=_cmd_minor_jumps)

    p = sub.add_parser("validate", parents=[common], help="validate an artifact against a graph")
    p.add_argument("kind", choices=("td", "cert", "embedding"))
    p.add_argument("input", help="graph file, or - for stdin")
    p.add_argument("artifact", help="artifact JSON file")
    p.add_argument("--t", type=int, help="order for cert validation")
    p.set_defaults(handler=_cmd_validate)

    return parser


def _env_int(name):
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise ParseInput(f"{name} must be an integer, got {raw!r}")


def _resolve_globals(args):
    if args.seed is None:
        env = _env_int("SGTK_SEED")
        args.seed = 0 if env is None else env
    if args.cap_n is None:
        args.cap_n = _env_int("SGTK_CAP_N")
    if args.format is None:
        fmt = os.environ.get("SGTK_FORMAT")
        if fmt is not None and fmt not in FORMATS:
            raise ParseInput(f"SGTK_FORMAT must be one of {', '.join(FORMATS)}, got {fmt!r}")
        args.format = fmt or "edgelist"
    if args.out is None:
        args.out = os.environ.get("SGTK_OUT") or None
    if args.command == "validate" and args.kind == "cert" and args.t is None:
        raise ParseInput("validate cert needs --t")


def _emit(text, out):
    if not text.endswith("\n"):
        text += "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed its message
        return exc.code if isinstance(exc.code, int) else 2
    try:
        _resolve_globals(args)
        text = args.handler(args)
    except SizeCap as exc:
        print(f"size cap exceeded: {exc}", file=sys.stderr)
        return 3
    except Violation as exc:
        _emit(_json(exc.payload), args.out)
        return 4
    except ParseInput as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    _emit(text, args.out)
    return 0


def main(argv=None):
    sys.exit(run(sys.argv[1:] if argv is None else list(argv)))


if __name__ == "__main__":
    main()
