"""Command line: tc caustic | propagate | series | smooth | verify | approx | reconstruct."""

import argparse
import json
import math
import sys
from fractions import Fraction

from . import approx, smooth
from .caustic import fmt_number, graph_from_json, graph_to_json
from .domain import propagate, state_vertices
from .engine import EngineError, run
from .io import dumps, points_to_json, polygon_from_json, polygon_to_json, read_json, \
    state_to_json, write_text
from .reconstruct import AbstractCaustic, abstract_from_caustic, embed, realizability_check, \
    reconstruct_domain
from .svg import RenderSpec, render
from .verify import CHECKS, verify


class UsageError(Exception):
    pass


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _rational(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad rational {text!r}") from exc


def _emit(args, obj):
    write_text(dumps(obj), args.output)


def _svg(args, **kw):
    if getattr(args, "svg", None):
        write_text(render(RenderSpec(labels=getattr(args, "labels", False)), **kw), args.svg)


def cmd_caustic(args):
    P = polygon_from_json(read_json(args.input))
    res = run(P)
    out = graph_to_json(res.caustic)
    out["polygon"] = polygon_to_json(P)
    _emit(args, out)
    fronts = [state_vertices(propagate(P, Fraction(t))) for t in args.fronts or []]
    _svg(args, polygon=P.vertices, caustic=res.caustic, fronts=[f for f in fronts if len(f) > 1])
    return 0


def cmd_propagate(args):
    P = polygon_from_json(read_json(args.input))
    t = _rational(args.t)
    st = propagate(P, t)
    _emit(args, state_to_json(st))
    vs = state_vertices(st)
    _svg(args, polygon=P.vertices, fronts=[vs] if vs else [])
    return 0


def cmd_series(args):
    total, n = smooth.disc_area_series(args.max_den)
    _emit(args, {"max_den": args.max_den, "sum": total, "terms": n, "gap": 4 - math.pi - total})
    return 0


def _oracle(args):
    if args.domain == "disc":
        return smooth.disc(args.r)
    if args.domain == "ellipse":
        return smooth.ellipse(args.alpha)
    if args.domain == "amoeba":
        return smooth.amoeba_line()
    if args.domain == "cubic":
        return smooth.nodal_cubic()
    P = polygon_from_json(read_json(args.polygon))
    return smooth.polygon_oracle(P)


def cmd_smooth(args):
    if args.domain == "polygon" and not args.polygon:
        raise UsageError("--domain polygon needs --polygon FILE")
    if args.series:
        if args.domain != "disc":
            raise UsageError("--series is defined for the disc only")
        return cmd_series(args)
    o = _oracle(args)
    g = smooth.build_caustic(o, eps=args.eps, max_depth=args.depth)
    out = graph_to_json(g)
    out["domain"] = {"name": o.name, **{k: fmt_number(v, False) for k, v in sorted(o.extra.items())}}
    _emit(args, out)
    _svg(args, caustic=g)
    return 0


def cmd_verify(args):
    G = graph_from_json(read_json(args.caustic))
    P = polygon_from_json(read_json(args.polygon)) if args.polygon else None
    if args.checks:
        checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    else:
        checks = list(CHECKS) if P is not None else ["balancing", "local_models"]
    rep = verify(G, P, checks, tol=None if G.exact else 1e-9)
    _emit(args, rep.to_json())
    return 0 if rep.passed else 1


def _approx_domain(args):
    if args.domain == "disc":
        return approx.disc_domain(args.r)
    if args.domain == "ellipse":
        return approx.ellipse_domain(args.alpha)
    if args.domain in ("staircase1", "staircase2"):
        return approx.staircase_cone(int(args.domain[-1]))
    if not args.polygon:
        raise UsageError("--domain polygon needs --polygon FILE")
    return approx.polygon_domain(polygon_from_json(read_json(args.polygon)))


def cmd_approx(args):
    dom = _approx_domain(args)
    try:
        basis = approx.Basis.parse(args.basis)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.h <= 0:
        raise UsageError("--h must be positive")
    if args.intersect:
        bases = [basis] + approx.shear_bases(args.intersect + 1)[1:]
        pts = approx.basis_intersection_front(dom, args.h, args.t, bases[:args.intersect])
    else:
        pts = approx.scaled_front(dom, args.h, args.t, basis)
    m = math.floor(args.t / args.h + 1e-12)
    _emit(args, {"domain": dom.name, "h": args.h, "t": args.t, "m": m,
                 "basis": [list(basis.b1), list(basis.b2)], "intersect": args.intersect,
                 "points": points_to_json(pts)})
    _svg(args, points=pts)
    return 0


def cmd_reconstruct(args):
    d = read_json(args.input)
    if not isinstance(d, dict) or "edges" not in d:
        raise ValueError("expected a caustic graph with an edge list")
    if "vertices" in d:
        G = graph_from_json(d)
        dom = reconstruct_domain(G)
        rep = realizability_check(abstract_from_caustic(G))
    else:
        a = AbstractCaustic.from_json(d)
        rep = realizability_check(a)
        if any(e.length is None for e in a.edges):
            _emit(args, {"report": rep.to_json()})
            return 0
        G = embed(a)
        dom = reconstruct_domain(G)
    exact = all(isinstance(c, Fraction) for p in dom.vertices for c in p)
    _emit(args, {"polygon": {"vertices": [[fmt_number(x, exact), fmt_number(y, exact)]
                                          for x, y in dom.vertices]},
                 "convex": dom.convex, "report": rep.to_json()})
    _svg(args, polygon=dom.vertices, caustic=G)
    return 0


def build_parser():
    p = ArgumentParser(prog="tc", description="Tropical caustics of convex domains.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    def common(sp, svg=True):
        sp.add_argument("-o", "--output", help="write JSON here instead of stdout")
        if svg:
            sp.add_argument("--svg", help="also write an SVG picture")
            sp.add_argument("--labels", action="store_true", help="label heavy edges")

    c = sub.add_parser("caustic", help="caustic of a rational polygon")
    c.add_argument("input")
    c.add_argument("--fronts", nargs="*", help="times of wave fronts drawn in the SVG")
    common(c)
    c.set_defaults(func=cmd_caustic)

    c = sub.add_parser("propagate", help="wave front of a polygon at time t")
    c.add_argument("input")
    c.add_argument("--t", required=True)
    common(c)
    c.set_defaults(func=cmd_propagate)

    c = sub.add_parser("series", help="partial sums of the disc area series")
    c.add_argument("--max-den", type=int, default=100)
    common(c, svg=False)
    c.set_defaults(func=cmd_series)

    c = sub.add_parser("smooth", help="caustic of a built-in smooth domain")
    c.add_argument("--domain", choices=["disc", "ellipse", "amoeba", "cubic", "polygon"], required=True)
    c.add_argument("--polygon")
    c.add_argument("--r", type=float, default=1.0)
    c.add_argument("--alpha", type=float, default=(1 + 5 ** 0.5) / 2)
    c.add_argument("--eps", type=float, default=1e-3)
    c.add_argument("--depth", type=int, default=8)
    c.add_argument("--series", action="store_true")
    c.add_argument("--max-den", type=int, default=100)
    common(c)
    c.set_defaults(func=cmd_smooth)

    c = sub.add_parser("verify", help="check a caustic graph")
    c.add_argument("caustic")
    c.add_argument("--polygon")
    c.add_argument("--checks", help="comma separated: " + ",".join(CHECKS))
    common(c, svg=False)
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("approx", help="lattice erosion fronts")
    c.add_argument("--domain", choices=["disc", "ellipse", "staircase1", "staircase2", "polygon"],
                   required=True)
    c.add_argument("--polygon")
    c.add_argument("--r", type=float, default=1.0)
    c.add_argument("--alpha", type=float, default=(1 + 5 ** 0.5) / 2)
    c.add_argument("--h", type=float, default=1.0)
    c.add_argument("--t", type=float, required=True)
    c.add_argument("--basis", default="1,0;0,1")
    c.add_argument("--intersect", type=int, default=0, help="intersect fronts over N bases")
    common(c)
    c.set_defaults(func=cmd_approx)

    c = sub.add_parser("reconstruct", help="domain and realizability from caustic lengths")
    c.add_argument("input")
    common(c)
    c.set_defaults(func=cmd_reconstruct)
    return p


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except EngineError as exc:
        print(f"tc: engine assertion: {exc}", file=sys.stderr)
        return 3
    except (UsageError, ValueError, KeyError, TypeError, OSError, json.JSONDecodeError) as exc:
        print(f"tc: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
