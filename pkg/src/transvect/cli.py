"""Command-line surface: file-driven decisions, classification, enumeration,
t-closure, the sigma-game tools and the protocol server.

Exit codes: 0 same-orbit/success, 1 different-orbit, 2 error. JSON goes to
stdout, a one-line human summary to stderr.
"""

from __future__ import annotations

import argparse
import http.server
import json
import random
import sys
from pathlib import Path
from typing import Any, Optional

from . import __version__
from .errors import BudgetExceeded, IllegalMove, InvalidInput, Unsupported
from .field import FieldVector
from .game import GameState, min_lit, space_from_graph
from .graphs import (
    FormGraph,
    build_form_graph,
    classify_graph,
    connected_components,
    connected_graph_classes,
    graph_from_code,
    recognize_root_multigraph,
    t_equivalence_closure,
)
from .oracle import enumerate_affine_orbits, enumerate_dual_orbits, enumerate_vector_orbits
from .orbits import DualProblem, decide_dual, decide_nondual, find_witness
from .protocol import SessionStore, dumps, handle_line
from .symplectic import Functional, SymplecticSpace


def _load_json(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from exc


def load_graph_obj(obj: Any) -> FormGraph:
    if not isinstance(obj, dict):
        raise InvalidInput("graph file must hold a JSON object")
    if "edges" in obj and "vertices" in obj:
        n = len(obj["vertices"])
        return FormGraph.from_edges(n, [(int(u), int(v)) for u, v in obj["edges"]])
    if "form" in obj:
        return build_form_graph(load_space_obj(obj))
    raise InvalidInput("graph file needs vertices/edges or a form matrix")


def load_space_obj(obj: Any) -> SymplecticSpace:
    if not isinstance(obj, dict):
        raise InvalidInput("problem file must hold a JSON object")
    if "form" not in obj and "edges" in obj:
        return space_from_graph(load_graph_obj(obj))
    try:
        p = int(obj["p"])
        form = obj["form"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput("problem file needs integer 'p' and a 'form' matrix") from exc
    spanning = None
    if obj.get("spanning_set") is not None:
        spanning = [FieldVector.make(p, row) for row in obj["spanning_set"]]
    space = SymplecticSpace.create(p, form, spanning)
    if "dim" in obj and int(obj["dim"]) != space.dim:
        raise InvalidInput("'dim' does not match the form matrix")
    return space


def load_space(path: str) -> SymplecticSpace:
    return load_space_obj(_load_json(path))


def load_graph(path: str) -> FormGraph:
    return load_graph_obj(_load_json(path))


def _coords_of(obj: Any) -> list[int]:
    if isinstance(obj, dict) and "coords" in obj:
        obj = obj["coords"]
    if not isinstance(obj, list):
        raise InvalidInput("coordinate file must hold a list (or {'coords': [...]})")
    return [int(c) for c in obj]


def load_functional(path: str, space: SymplecticSpace) -> Functional:
    coords = _coords_of(_load_json(path))
    if len(coords) != space.dim:
        raise InvalidInput(f"{path}: expected {space.dim} coordinates")
    return Functional.make(space.p, coords)


def load_vector(path: str, space: SymplecticSpace) -> FieldVector:
    coords = _coords_of(_load_json(path))
    if len(coords) != space.dim:
        raise InvalidInput(f"{path}: expected {space.dim} coordinates")
    return FieldVector.make(space.p, coords)


def _decision_payload(decision, include_witness: bool) -> dict:
    payload: dict[str, Any] = {"verdict": decision.verdict}
    payload["certificate"] = decision.certificate
    if decision.detail is not None:
        payload["detail"] = decision.detail
    if include_witness and decision.witness is not None:
        payload["witness"] = [list(m) for m in decision.witness]
    return payload


def _cmd_reach_dual(args) -> tuple[int, dict, str]:
    space = load_space(args.problem)
    alpha = load_functional(args.src, space)
    beta = load_functional(args.dst, space)
    prob = DualProblem(space, alpha, beta)
    decision = decide_dual(prob)
    if decision.same and args.witness and decision.witness is None:
        witness = find_witness(prob)
        if witness is not None:
            decision = type(decision)(True, witness=witness)
    payload = _decision_payload(decision, include_witness=True)
    code = 0 if decision.same else 1
    return code, payload, f"dual reachability: {decision.verdict}"


def _cmd_reach(args) -> tuple[int, dict, str]:
    space = load_space(args.problem)
    x = load_vector(args.src, space)
    y = load_vector(args.dst, space)
    decision = decide_nondual(space, x, y)
    payload = _decision_payload(decision, include_witness=False)
    code = 0 if decision.same else 1
    return code, payload, f"non-dual reachability: {decision.verdict}"


def _cmd_classify(args) -> tuple[int, dict, str]:
    space = load_space(args.problem)
    graph = build_form_graph(space)
    comps = connected_components(graph)
    tags, roots = [], []
    for comp in comps:
        cls = classify_graph(graph.induced(comp))
        tags.append(cls.tag)
        roots.append(
            {"vertices": cls.root.num_vertices, "edges": [list(e) for e in cls.root.edges]}
            if cls.root
            else None
        )
    payload = {
        "components": [list(c) for c in comps],
        "per_component": tags,
        "roots": roots,
    }
    return 0, payload, f"{len(comps)} component(s): {', '.join(tags)}"


def _cmd_orbits(args) -> tuple[int, dict, str]:
    space = load_space(args.problem)
    if args.action == "dual":
        part = enumerate_dual_orbits(space)
    elif args.action == "vector":
        part = enumerate_vector_orbits(space)
    else:
        if not args.alpha:
            raise InvalidInput("--alpha is required for the affine action")
        part = enumerate_affine_orbits(space, load_functional(args.alpha, space))
    payload = {
        "p": part.p,
        "dim": part.dim,
        "blocks": [sorted(b) for b in part.blocks],
    }
    return 0, payload, f"{len(part.blocks)} orbit(s) over {part.n_states} states"


def _cmd_tclass(args) -> tuple[int, dict, str]:
    graph = load_graph(args.graph)
    closure = t_equivalence_closure(graph, max_states=args.max)
    payload = {"classes": len(closure.classes), "complete": closure.complete}
    note = "" if closure.complete else " (budget hit; lower bound)"
    return 0, payload, f"{len(closure.classes)} t-equivalence classes{note}"


def _cmd_root(args) -> tuple[int, dict, str]:
    graph = load_graph(args.graph)
    root = recognize_root_multigraph(graph)
    if root is None:
        return 0, {"root": None}, "no root multigraph (orthogonal type)"
    payload = {
        "root": {"vertices": root.num_vertices, "edges": [list(e) for e in root.edges]}
    }
    return 0, payload, f"root with {root.num_vertices} vertices, {len(root.edges)} edges"


def _cmd_mingame(args) -> tuple[int, dict, str]:
    graph = load_graph(args.graph)
    lamps = _coords_of(_load_json(args.lamps))
    if len(lamps) != graph.n:
        raise InvalidInput("lamp vector length must match the vertex count")
    st = GameState.new(graph, tuple(lamps))
    result = min_lit(st)
    payload = {
        "count": result.count,
        "lamps": list(result.lamps),
        "moves": list(result.moves),
    }
    return 0, payload, f"minimum lit count {result.count}"


class _ApiHandler(http.server.BaseHTTPRequestHandler):
    store: SessionStore = None  # set per server
    static_dir: Optional[Path] = None

    def log_message(self, fmt, *args):  # quiet server
        pass

    def do_POST(self):
        if self.path.rstrip("/") != "/api":
            self.send_error(404)
            return
        length = int(self.headers.get("Content-Length", "0"))
        body = self.rfile.read(length).decode("utf-8")
        reply = handle_line(self.store, body).encode("utf-8")
        self.send_response(200)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(reply)))
        self.end_headers()
        self.wfile.write(reply)

    def do_GET(self):
        if self.static_dir is None:
            self.send_error(404)
            return
        rel = self.path.lstrip("/") or "index.html"
        target = (self.static_dir / rel).resolve()
        if not str(target).startswith(str(self.static_dir.resolve())) or not target.is_file():
            self.send_error(404)
            return
        ctype = {
            ".html": "text/html",
            ".js": "text/javascript",
            ".css": "text/css",
            ".json": "application/json",
        }.get(target.suffix, "application/octet-stream")
        data = target.read_bytes()
        self.send_response(200)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)


def serve_forever(port: int, host: str = "127.0.0.1", static_dir: Optional[str] = None):
    store = SessionStore()
    handler = type(
        "Handler",
        (_ApiHandler,),
        {"store": store, "static_dir": Path(static_dir) if static_dir else None},
    )
    server = http.server.ThreadingHTTPServer((host, port), handler)
    return server


def _cmd_serve(args) -> tuple[int, dict, str]:
    if args.stdio:
        store = SessionStore()
        for line in sys.stdin:
            line = line.strip()
            if not line:
                continue
            sys.stdout.write(handle_line(store, line) + "\n")
            sys.stdout.flush()
        return 0, {"served": "stdio"}, "stdio session ended"
    static = args.static
    if static is None:
        default_static = Path(__file__).resolve().parents[2] / "frontend" / "dist"
        if default_static.is_dir():
            static = str(default_static)
    server = serve_forever(args.port, static_dir=static)
    print(f"serving on http://127.0.0.1:{args.port} (api at /api)", file=sys.stderr)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0, {"served": f"http:{args.port}"}, "server stopped"


def _cmd_selftest(args) -> tuple[int, dict, str]:
    rng = random.Random(args.seed)
    checks = 0
    mismatches = 0

    def note(msg):
        print(msg, file=sys.stderr)

    for n in range(1, args.max_vertices + 1):
        for code in connected_graph_classes(n):
            graph = graph_from_code(n, code)
            space = space_from_graph(graph)
            part = enumerate_dual_orbits(space)
            for a_code in range(1 << n):
                alpha = Functional(FieldVector.from_code(2, n, a_code))
                for b_code in range(a_code, 1 << n):
                    beta = Functional(FieldVector.from_code(2, n, b_code))
                    decision = decide_dual(DualProblem(space, alpha, beta))
                    checks += 1
                    if decision.same != part.same_block(a_code, b_code):
                        mismatches += 1
        note(f"selftest: graphs on {n} vertices done")

    for _ in range(args.random_spaces):
        p = rng.choice([3, 5])
        dim = rng.randint(1, 2)
        gram = [[0] * dim for _ in range(dim)]
        for i in range(dim):
            for j in range(i + 1, dim):
                v = rng.randrange(p)
                gram[i][j] = v
                gram[j][i] = (-v) % p
        nvec = rng.randint(dim, dim + 2)
        while True:
            vecs = [
                FieldVector.make(p, [rng.randrange(p) for _ in range(dim)]) for _ in range(nvec)
            ]
            try:
                space = SymplecticSpace.create(p, gram, vecs)
                break
            except InvalidInput:
                continue
        part = enumerate_dual_orbits(space)
        for a_code in range(p**dim):
            alpha = Functional(FieldVector.from_code(p, dim, a_code))
            for b_code in range(p**dim):
                beta = Functional(FieldVector.from_code(p, dim, b_code))
                decision = decide_dual(DualProblem(space, alpha, beta))
                checks += 1
                if decision.same != part.same_block(a_code, b_code):
                    mismatches += 1
    note(f"selftest: {args.random_spaces} random GF(3)/GF(5) spaces done")

    ok = mismatches == 0
    payload = {"ok": ok, "checks": checks, "mismatches": mismatches}
    return (0 if ok else 2), payload, f"selftest {'passed' if ok else 'FAILED'} ({checks} checks)"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="transvect")
    parser.add_argument("--version", action="version", version=f"transvect {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_problem(sp):
        sp.add_argument("-p", "--problem", required=True, help="space/problem JSON file")

    sp = sub.add_parser("reach-dual", help="decide dual-orbit reachability of two functionals")
    add_problem(sp)
    sp.add_argument("--from", dest="src", required=True)
    sp.add_argument("--to", dest="dst", required=True)
    sp.add_argument("--witness", action="store_true", help="search for a move sequence")
    sp.set_defaults(fn=_cmd_reach_dual)

    sp = sub.add_parser("reach", help="decide orbit reachability of two vectors")
    add_problem(sp)
    sp.add_argument("--from", dest="src", required=True)
    sp.add_argument("--to", dest="dst", required=True)
    sp.set_defaults(fn=_cmd_reach)

    sp = sub.add_parser("classify", help="classify each component (orthogonal or line graph)")
    add_problem(sp)
    sp.set_defaults(fn=_cmd_classify)

    sp = sub.add_parser("orbits", help="brute-force orbit partition (budget guarded)")
    add_problem(sp)
    sp.add_argument("--action", choices=["dual", "vector", "affine"], default="dual")
    sp.add_argument("--alpha", help="functional file for the affine action")
    sp.set_defaults(fn=_cmd_orbits)

    sp = sub.add_parser("tclass", help="count t-equivalence classes of a graph")
    sp.add_argument("-g", "--graph", required=True)
    sp.add_argument("--max", type=int, default=100_000, help="state budget")
    sp.set_defaults(fn=_cmd_tclass)

    sp = sub.add_parser("root", help="root multigraph of a line graph, if any")
    sp.add_argument("-g", "--graph", required=True)
    sp.set_defaults(fn=_cmd_root)

    sp = sub.add_parser("mingame", help="minimum reachable lit count of a sigma-game position")
    sp.add_argument("-g", "--graph", required=True)
    sp.add_argument("--lamps", required=True)
    sp.set_defaults(fn=_cmd_mingame)

    sp = sub.add_parser("serve", help="serve the JSON protocol (HTTP or stdio)")
    sp.add_argument("--port", type=int, default=8000)
    sp.add_argument("--stdio", action="store_true")
    sp.add_argument("--static", help="directory of playground assets to serve")
    sp.set_defaults(fn=_cmd_serve)

    sp = sub.add_parser("selftest", help="oracle-equivalence sweep")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-vertices", type=int, default=5)
    sp.add_argument("--random-spaces", type=int, default=10)
    sp.set_defaults(fn=_cmd_selftest)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, payload, summary = args.fn(args)
    except (InvalidInput, Unsupported, BudgetExceeded, IllegalMove) as exc:
        print(dumps({"error": type(exc).__name__, "message": str(exc)}))
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(dumps(payload))
    print(summary, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
