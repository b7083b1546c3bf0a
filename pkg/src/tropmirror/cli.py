"""Command-line front end.

Subcommands: validate | dual | web | mirror | transport | wallcross-demo |
eval | render.  Exit codes: 0 success, 1 validation/computation failure,
2 usage error.  Output is deterministic: identical inputs give byte-identical
results (sorted keys, no timestamps).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .affine import AffineError, build_cut_presentation, transport_covector
from .analytic import (
    AnalyticError,
    eval_series,
    focus_focus_demo,
    series_from_json,
    series_to_json,
)
from .charges import ChargeError, build_web, charges_from_json
from .diagram import (
    DiagramError,
    diagram_from_json,
    diagram_to_json,
    dual_subdivision,
    is_smooth,
    parse_edge_ref,
    validate,
)
from .lattice import LatticeError
from .mirror import (
    MirrorError,
    corrections_from_json,
    normalize_presentation,
    presentation,
    presentation_to_json,
)
from .monodromy import MonodromyError, build_dual_graph, edge_covector
from .novikov import NovikovError, nov_to_json, nov_to_text
from .render import RenderError, render

Q = Fraction

ERRORS = (
    AffineError,
    AnalyticError,
    ChargeError,
    DiagramError,
    LatticeError,
    MirrorError,
    MonodromyError,
    NovikovError,
    RenderError,
)


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _load_diagram(path: str, allow_singular: bool = False):
    """Load a diagram JSON; charge files are built into their web first."""
    data = _load_json(path)
    if isinstance(data, dict) and "charges" in data:
        q, heights = charges_from_json(data)
        return build_web(q, heights, allow_singular=allow_singular).diagram
    return diagram_from_json(data)


def _color_enabled() -> bool:
    if os.environ.get("TROPMIRROR_NO_COLOR"):
        return False
    return sys.stdout.isatty()


def _status_line(text: str) -> str:
    if not _color_enabled():
        return text
    if text.startswith("PASS"):
        return f"\x1b[32m{text}\x1b[0m"
    if text.startswith("FAIL"):
        return f"\x1b[31m{text}\x1b[0m"
    return text


def _parse_point(text: str) -> tuple[Fraction, ...]:
    return tuple(Q(part.strip()) for part in text.split(","))


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="tropmirror",
        description="SYZ mirror data of toric Calabi-Yau webs",
    )
    p.add_argument("--version", action="version", version=f"tropmirror {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("validate", help="check the semi-toric axioms of a diagram")
    sp.add_argument("diagram")

    sp = sub.add_parser("dual", help="dual subdivision, embedding, and edge covectors")
    sp.add_argument("diagram")
    sp.add_argument("--root-face", type=int, default=None)
    sp.add_argument("--flip-sign", action="store_true")
    sp.add_argument("--format", choices=["json", "svg"], default="json")

    sp = sub.add_parser("web", help="build a web from a charge matrix and heights")
    sp.add_argument("--charges", required=True, metavar="FILE")
    sp.add_argument("--allow-singular", action="store_true")

    sp = sub.add_parser("mirror", help="mirror presentation x*y - g")
    sp.add_argument("diagram")
    sp.add_argument("--corrections", metavar="FILE")
    sp.add_argument("--base-point", metavar="P", help='rational point "p/q,p/q"')
    sp.add_argument("-E", "--truncation", default="10")
    sp.add_argument("--root-face", type=int, default=None)
    sp.add_argument("--flip-sign", action="store_true")
    sp.add_argument("--raw", action="store_true", help="skip normalization")

    sp = sub.add_parser("transport", help="parallel transport a covector along a path")
    sp.add_argument("diagram")
    sp.add_argument("--path", required=True, metavar="FILE")
    sp.add_argument("--class", dest="covector", required=True, metavar="A,B,C")
    sp.add_argument("--tau", metavar="FILE", help="JSON map edge ref -> height")

    sp = sub.add_parser("wallcross-demo", help="run the focus-focus pipeline")
    sp.add_argument("-E", "--truncation", default="10")
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("eval", help="evaluate a series at a base point")
    sp.add_argument("series")
    sp.add_argument("--point", required=True, metavar="P")

    sp = sub.add_parser("render", help="render a diagram to svg or dot")
    sp.add_argument("diagram")
    sp.add_argument("--format", choices=["svg", "dot"], default="svg")
    sp.add_argument("--dual", action="store_true")
    return p


def _cmd_validate(args) -> int:
    diag = _load_diagram(args.diagram)
    report = validate(diag)
    sys.stdout.write(_dumps(report.to_json()))
    return 0 if report.ok else 1


def _cmd_dual(args) -> int:
    diag = _load_diagram(args.diagram)
    sign = -1 if args.flip_sign else 1
    dual = dual_subdivision(diag, root_face=args.root_face, sign=sign)
    if args.format == "svg":
        sys.stdout.write(render(diag, dual, "svg"))
        return 0
    embedding = build_dual_graph(diag, root_face=args.root_face, sign=sign)
    out = {
        "lattice_points": [list(p) for p in dual.lattice_points],
        "triangles": [list(t) for t in dual.triangles],
        "root_face": dual.root_face,
        "edge_duality": [
            {"edge": str(ref), "faces": list(pair)} for ref, pair in dual.edge_duality
        ],
        "covectors": [
            {"edge": str(ref), "covector": list(edge_covector(diag, ref))}
            for ref in diag.edge_refs()
        ],
        "embedding_matches_subdivision": embedding.positions == dual.lattice_points,
        "smooth": is_smooth(diag),
    }
    sys.stdout.write(_dumps(out))
    return 0


def _cmd_web(args) -> int:
    q, heights = charges_from_json(_load_json(args.charges))
    web = build_web(q, heights, allow_singular=args.allow_singular)
    out = diagram_to_json(web.diagram)
    out["points"] = [list(p) for p in web.points]
    out["simplicial"] = web.simplicial
    out["cells"] = [list(c.indices) for c in web.subdivision.cells]
    sys.stdout.write(_dumps(out))
    return 0


def _cmd_mirror(args) -> int:
    diag = _load_diagram(args.diagram)
    corrections = None
    if args.corrections:
        corrections = corrections_from_json(_load_json(args.corrections))
    base = _parse_point(args.base_point) if args.base_point else None
    sign = -1 if args.flip_sign else 1
    pres = presentation(
        diag,
        base=base,
        corrections=corrections,
        truncation=Q(args.truncation),
        root_face=args.root_face,
        sign=sign,
    )
    if not args.raw:
        pres = normalize_presentation(pres)
    sys.stdout.write(_dumps(presentation_to_json(pres)))
    return 0


def _cmd_transport(args) -> int:
    diag = _load_diagram(args.diagram)
    tau = None
    if args.tau:
        raw = _load_json(args.tau)
        tau = {parse_edge_ref(k): Q(v) for k, v in raw.items()}
    pres = build_cut_presentation(diag, tau)
    path_data = _load_json(args.path)
    path = [tuple(Q(c) for c in p) for p in path_data["path"]]
    g = tuple(int(c) for c in args.covector.split(","))
    result = transport_covector(pres, path, g)
    sys.stdout.write(_dumps({"class": list(g), "result": list(result)}))
    return 0


def _cmd_wallcross_demo(args) -> int:
    report = focus_focus_demo(Q(args.truncation))
    if args.json:
        out = {
            "truncation": str(report.truncation),
            "passed": report.passed,
            "mirror_relation": report.mirror_relation,
            "messages": list(report.messages),
            "h_plus_x": series_to_json(report.h_plus_x) if report.h_plus_x else None,
            "h_minus_y": series_to_json(report.h_minus_y) if report.h_minus_y else None,
            "h_plus_y_left": series_to_json(report.h_plus_y_left) if report.h_plus_y_left else None,
            "h_plus_y_right": series_to_json(report.h_plus_y_right) if report.h_plus_y_right else None,
            "h_plus_y": series_to_json(report.h_plus_y) if report.h_plus_y else None,
            "product": series_to_json(report.product) if report.product else None,
        }
        sys.stdout.write(_dumps(out))
    else:
        sys.stdout.write(f"focus-focus wall crossing at E = {report.truncation}\n")
        for msg in report.messages:
            sys.stdout.write(_status_line(msg) + "\n")
        sys.stdout.write(f"mirror relation: x*y - ({report.mirror_relation})\n")
    return 0 if report.passed else 1


def _cmd_eval(args) -> int:
    a = series_from_json(_load_json(args.series))
    value = eval_series(a, _parse_point(args.point))
    sys.stdout.write(_dumps({"text": nov_to_text(value), "terms": nov_to_json(value)}))
    return 0


def _cmd_render(args) -> int:
    diag = _load_diagram(args.diagram)
    dual = dual_subdivision(diag) if args.dual else None
    sys.stdout.write(render(diag, dual, args.format))
    return 0


_COMMANDS = {
    "validate": _cmd_validate,
    "dual": _cmd_dual,
    "web": _cmd_web,
    "mirror": _cmd_mirror,
    "transport": _cmd_transport,
    "wallcross-demo": _cmd_wallcross_demo,
    "eval": _cmd_eval,
    "render": _cmd_render,
}


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except ERRORS as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except (OSError, json.JSONDecodeError, ValueError, ZeroDivisionError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
