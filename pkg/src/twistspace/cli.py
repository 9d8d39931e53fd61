"""Command-line front end.

Exit codes: 0 success, 2 validation error, 3 invariant or theorem violation,
4 I/O error.  Reports are JSON with sorted keys and no timing, so equal inputs
give byte-identical output; wall time goes to stderr.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from . import __version__
from .errors import TheoremViolation, TwistSpaceError, ValidationError
from .gf2 import subspace_equal
from .graph import genus, graph_from_dict, validate
from .realpart import DEFAULT_CAP, maximal_coset, trace_real_part
from .wspace import direction_basis, w_kernel, w_structural

EXIT_OK, EXIT_VALIDATION, EXIT_THEOREM, EXIT_IO = 0, 2, 3, 4

POLY_HELP = (
    "tropical polynomial such as '0 + 0*x + 0*y'; min-plus convention: the coefficient b of x^i*y^j "
    "stands for t^(-b) z^i w^j and the dual subdivision is the lower hull of the points (i, j, b)"
)


def _digest(*parts: str) -> str:
    h = hashlib.sha256()
    for p in parts:
        h.update(p.encode("utf-8"))
        h.update(b"\0")
    return h.hexdigest()


def _read_text(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_graph(path: str):
    text = _read_text(path)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})", path) from None
    g, t = graph_from_dict(data)
    validate(g, t)
    return g, t, text


def _twists(arg: str | None) -> list[str]:
    if not arg:
        return []
    return [s.strip() for s in arg.split(",") if s.strip()]


def _subspace_dict(w) -> dict:
    return {"dim": w.dim, "basis": [v.support() for v in w.basis()]}


def cmd_wspace(args) -> dict:
    g, t, text = _load_graph(args.graph)
    basis = direction_basis(g, t)
    wk, ws = w_kernel(g, t), w_structural(g, t)
    equal = subspace_equal(wk, ws)
    if not equal:
        raise TheoremViolation("kernel and structural descriptions of W differ")
    return {
        "command": "wspace",
        "inputs": {"graph": _digest(text)},
        "results": {
            "direction_basis": list(basis.labels),
            "swapped": [lab for i, lab in enumerate(basis.labels) if basis.is_swapped(i)],
            "genus": genus(g),
            "dim_w": wk.dim,
            "w_kernel": _subspace_dict(wk),
            "w_structural": _subspace_dict(ws),
            "equal": equal,
        },
    }


def cmd_trace(args) -> dict:
    g, t, text = _load_graph(args.graph)
    twist = direction_basis(g, t).twist(_twists(args.twists))
    report = trace_real_part(g, t, twist)
    return {
        "command": "trace",
        "inputs": {"graph": _digest(text), "twists": twist.support()},
        "results": report.to_dict(),
    }


def cmd_enumerate(args) -> dict:
    g, t, text = _load_graph(args.graph)
    mc = maximal_coset(g, t, cap=args.cap, jobs=args.jobs)
    basis = direction_basis(g, t)
    residues = {mc.w.reduce(m) for m in range(1 << basis.k)}
    return {
        "command": "enumerate",
        "inputs": {"graph": _digest(text), "cap": args.cap},
        "results": {
            "k": basis.k,
            "lifts": 1 << basis.k,
            "cosets": len(residues),
            "genus": genus(g),
            "w": _subspace_dict(mc.w),
            "maximal": [v.support() for v in mc.maximal],
            "maximal_count": len(mc.maximal),
            "representative": None if mc.empty else mc.representative.support(),
            "single_coset": True,
            "count_histogram": {str(c): mc.counts.count(c) for c in sorted(set(mc.counts))},
        },
    }


def cmd_patchwork(args) -> dict:
    from .gf2 import in_span
    from .tropical import build_curve, parse_poly
    from .tropical.patchwork import (
        component_count,
        is_haas_maximal,
        patchwork_arcs,
        twist_indices,
        twist_ids,
        w_twist,
    )
    from .tropical.svg import write_svg

    text = args.poly if args.poly is not None else _read_text(args.poly_file).strip()
    c = build_curve(parse_poly(text))
    tset = twist_indices(c, _twists(args.twists))
    arcs = patchwork_arcs(c, tset)
    haas = is_haas_maximal(c, tset)
    vec = w_twist(c, tset)
    in_w = in_span(w_kernel(c.graph, c.tau), vec)
    traced = trace_real_part(c.graph, c.tau, vec).count
    compact = component_count(c, tset, compact=True)
    gen = genus(c.graph)
    if not (haas == in_w == (traced == gen + 1)) or traced != compact:
        raise TheoremViolation("Haas verdict, W membership and traced count disagree")
    if args.svg:
        write_svg(args.svg, c, tset)
    return {
        "command": "patchwork",
        "inputs": {"poly": _digest(text), "twists": list(twist_ids(c, tset))},
        "results": {
            "degree": c.degree,
            "genus": gen,
            "vertices": len(c.vertices),
            "bounded_edges": len(c.edges),
            "rays": len(c.rays),
            "arcs": len(arcs),
            "components": component_count(c, tset),
            "compact_components": compact,
            "haas_maximal": haas,
            "in_w": in_w,
            "verdict": "maximal" if haas else "not maximal",
            "curve": c.to_dict(),
        },
    }


def cmd_verify(args) -> dict:
    from .verify import run

    report = run(args.scope, args.seed)
    return {"command": "verify", "inputs": {"scope": args.scope, "seed": args.seed}, "results": report}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="twistspace",
        description="Twist spaces of real trivalent graphs, real-part tracing and tropical patchworking.",
        epilog="Exit codes: 0 ok, 2 validation error, 3 theorem/invariant violation, 4 I/O error.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--json", metavar="FILE", help="also write the JSON report to FILE")

    sp = sub.add_parser("wspace", help="direction basis and W computed two ways")
    sp.add_argument("--graph", required=True, metavar="FILE")
    common(sp)
    sp.set_defaults(func=cmd_wspace)

    sp = sub.add_parser("trace", help="count real circles of one lift")
    sp.add_argument("--graph", required=True, metavar="FILE")
    sp.add_argument("--twists", default="", metavar="e1,e2,...", help="direction labels to twist")
    common(sp)
    sp.set_defaults(func=cmd_trace)

    sp = sub.add_parser("enumerate", help="enumerate all lifts and check the coset law")
    sp.add_argument("--graph", required=True, metavar="FILE")
    sp.add_argument("--cap", type=int, default=DEFAULT_CAP, metavar="K", help="refuse direction spaces larger than K")
    sp.add_argument("--jobs", type=int, default=1, metavar="N")
    common(sp)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("patchwork", help="patchwork a non-singular tropical curve", description=POLY_HELP)
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--poly", metavar="TEXT", help=POLY_HELP)
    src.add_argument("--poly-file", metavar="FILE")
    sp.add_argument("--twists", default="", metavar="e1,e2,...", help="bounded edges to twist")
    sp.add_argument("--svg", metavar="FILE")
    common(sp)
    sp.set_defaults(func=cmd_patchwork)

    sp = sub.add_parser("verify", help="run the invariant suites")
    sp.add_argument("--scope", choices=("all", "gf2", "graph", "wspace", "realpart", "tropical"), default="all")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--jobs", type=int, default=1, metavar="N", help="accepted for symmetry; suites run serially")
    common(sp)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        report = args.func(args)
    except ValidationError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except TheoremViolation as exc:
        print(f"violation: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_THEOREM
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_IO
    except TwistSpaceError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    out = json.dumps(report, indent=2, sort_keys=True) + "\n"
    try:
        if args.json:
            Path(args.json).write_text(out, encoding="utf-8")
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_IO
    sys.stdout.write(out)
    print(f"wall time: {time.perf_counter() - start:.3f} s", file=sys.stderr)
    if args.command == "verify" and not report["results"]["ok"]:
        return EXIT_THEOREM
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
