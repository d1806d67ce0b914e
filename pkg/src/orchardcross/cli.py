"""``orchardcross`` command line: compute, construct, search, relation, render, verify.

Exit codes: 0 ok, 1 verification mismatch, 2 parse/usage error, 3 collinear
input, 4 construction failed its own checks, 5 incomplete enumeration.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import constructions as C
from .geom import Color, NonGenericError, PointConfig, to_scalar
from .graphs import Graph, GraphFormatError, complete, dumps_graph, parse_graph_spec, read_graph
from .orchard import (
    Drawing,
    drawing_crossing_number,
    orchard_relation,
    quadruple_decomposition,
    rectilinear_crossings,
)

EXIT_OK, EXIT_MISMATCH, EXIT_PARSE, EXIT_GENERIC, EXIT_CONSTRUCTION, EXIT_INCOMPLETE = range(6)


class DrawingFormatError(ValueError):
    pass


_NUMBER = re.compile(r"^[+-]?\d+(?:/\d+)?$")


# -- drawing files ---------------------------------------------------------------


def loads_drawing(text: str) -> PointConfig:
    """Parse ``x y [B|W]`` lines (``#`` comments, ``p/q`` rationals allowed).

    Raises :class:`NonGenericError` when three of the points are collinear.
    """
    points, colors = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise DrawingFormatError(f"line {lineno}: expected 'x y [B|W]', got {raw!r}")
        if not (_NUMBER.match(parts[0]) and _NUMBER.match(parts[1])):
            raise DrawingFormatError(f"line {lineno}: coordinates must be integers or p/q, got {raw!r}")
        try:
            x, y = to_scalar(parts[0]), to_scalar(parts[1])
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise DrawingFormatError(f"line {lineno}: {exc}") from None
        points.append((x, y))
        if len(parts) == 3:
            tag = parts[2].upper()
            if tag not in ("B", "W"):
                raise DrawingFormatError(f"line {lineno}: color tag must be B or W, got {parts[2]!r}")
            colors.append(Color(tag))
        else:
            colors.append(None)
    tagged = [c for c in colors if c is not None]
    if tagged and len(tagged) != len(colors):
        raise DrawingFormatError("color tags must be given for every point or for none")
    if len(set(points)) != len(points):
        raise DrawingFormatError("duplicate points")
    cfg = PointConfig.from_coords(points, tuple(colors) if tagged else None)
    cfg.require_generic()
    return cfg


def _fmt(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def dumps_drawing(cfg: PointConfig, header: str = "") -> str:
    lines = [f"# {h}" for h in header.splitlines()] if header else []
    for i, p in enumerate(cfg.points):
        tag = f" {cfg.colors[i].value}" if cfg.colors is not None else ""
        lines.append(f"{_fmt(p.x)} {_fmt(p.y)}{tag}")
    return "\n".join(lines) + "\n"


def read_drawing(path) -> PointConfig:
    return loads_drawing(Path(path).read_text())


def write_drawing(cfg: PointConfig, path, header: str = "") -> None:
    Path(path).write_text(dumps_drawing(cfg, header))


def load_graph(arg: str) -> Graph:
    """A spec string (``K5``, ``K3,3``, ``C6``, ``W5``, ``@file``) or a path to an edge-list file."""
    try:
        return parse_graph_spec(arg)
    except ValueError:
        if Path(arg).is_file():
            return read_graph(arg)
        raise


def drawing_for(cfg: PointConfig, g: Graph) -> Drawing:
    """Identity placement, except that colored points host a ``K_{n,m}``: black on the left block."""
    from .explore.search import placement_plan

    if len(cfg) != g.vertex_count:
        raise DrawingFormatError(f"drawing has {len(cfg)} points but the graph has {g.vertex_count} vertices")
    if cfg.colors is not None:
        plan = placement_plan(g)
        if plan.family == "complete-bipartite" and plan.blocks:
            left, right = plan.blocks
            black = [i for i, c in enumerate(cfg.colors) if c is Color.BLACK]
            white = [i for i, c in enumerate(cfg.colors) if c is Color.WHITE]
            if (len(black), len(white)) == (len(right), len(left)):
                left, right = right, left
            if (len(black), len(white)) == (len(left), len(right)):
                placement = [0] * len(cfg)
                for v, p in zip(left, black):
                    placement[v] = p
                for v, p in zip(right, white):
                    placement[v] = p
                return Drawing(cfg, tuple(placement))
    return Drawing.identity(cfg)


# -- commands ------------------------------------------------------------------------


def cmd_compute(args) -> int:
    cfg = read_drawing(args.drawing)
    g = load_graph(args.graph)
    d = drawing_for(cfg, g)
    report = drawing_crossing_number(d, g)
    quads = quadruple_decomposition(d, g)
    if quads.total != report.total:
        print(f"decomposition total {quads.total} != {report.total}", file=sys.stderr)
        return EXIT_MISMATCH
    crossings = rectilinear_crossings(d, g)
    print(f"total {report.total}")
    for (u, v), k in report.per_edge.items():
        print(f"edge {u} {v}: {k}")
    for q, k in sorted(quads.per_quadruple.items()):
        if k:
            print(f"quadruple {' '.join(map(str, q))}: {k}")
    print(f"rectilinear crossings {crossings}")
    bound_ok = 2 * crossings <= report.total
    print(f"2*crossings <= total: {'yes' if bound_ok else 'NO'}")
    return EXIT_OK if bound_ok else EXIT_MISMATCH


CONSTRUCTIONS = {
    # name: (parameter count, builder -> (drawing, graph), closed form, label)
    "convex-kn": (1, lambda n: (Drawing.identity(C.convex_position(n)), complete(n)), C.ocn_complete, "OCN"),
    "star": (1, C.star_drawing, C.ocn_star, "OCN"),
    "wheel": (1, C.wheel_polygon, C.ocn_wheel, "OCN"),
    "alternating": (1, lambda n: C.bipartite_drawing(C.alternating_polygon(n), n, n), C.ocn_knn, "OCN"),
    "two-arcs": (2, lambda n, m: C.bipartite_drawing(C.two_arcs(n, m), n, m), C.mocn_bipartite, "MOCN"),
    "cycle-convex": (1, lambda n: C.convex_cycle_plus_vertex(n, "convex"), lambda n: n - 2, "count"),
    "cycle-center": (1, lambda n: C.convex_cycle_plus_vertex(n, "center"), lambda n: n, "count"),
}


def cmd_construct(args) -> int:
    arity, build, closed, label = CONSTRUCTIONS[args.family]
    if len(args.params) != arity:
        print(f"{args.family} takes {arity} parameter(s)", file=sys.stderr)
        return EXIT_PARSE
    try:
        d, g = build(*args.params)
    except C.ConstructionVerificationFailed as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION
    value = drawing_crossing_number(d, g).total
    expected = closed(*args.params)
    params = " ".join(map(str, args.params))
    if args.out:
        # vertex v sits on point v in every file we write
        cfg = d.config
        pts = [cfg.points[p] for p in d.placement]
        cols = None if cfg.colors is None else tuple(cfg.colors[p] for p in d.placement)
        write_drawing(PointConfig(tuple(pts), cols), args.out, f"{args.family} {params}\ngraph {g.name}")
    if args.graph_out:
        Path(args.graph_out).write_text(dumps_graph(g))
    print(f"{args.family} {params}: {label}={value} closed-form={expected} graph={g.name}")
    return EXIT_OK if value == expected else EXIT_MISMATCH


def _source(args):
    from .explore.search import DbSource, GridSource, RandomSource

    if args.random is not None:
        if args.seed is None:
            raise DrawingFormatError("--random needs --seed")
        return RandomSource(args.random, args.seed)
    if args.grid is not None:
        return GridSource(args.grid)
    return DbSource(args.db)


def cmd_search(args) -> int:
    from .explore.search import search_ocn

    g = load_graph(args.graph)
    mode = "max" if args.max else "min"
    res = search_ocn(g, mode, _source(args), require_exhaustive=args.require_exhaustive, jobs=args.jobs)
    label = "MOCN" if mode == "max" else "OCN"
    print(f"{g.name or 'graph'} {label}={res.value}")
    print(f"exhaustive: {'yes' if res.exhaustive else 'no'}")
    print(f"classes examined: {res.classes_examined}")
    print(f"extremal classes: {len(res.extremal_classes)}")
    print(f"witness placement: {' '.join(map(str, res.witness.placement))}")
    if args.witness:
        cfg = res.witness.config
        pts = [cfg.points[p] for p in res.witness.placement]
        cols = None if cfg.colors is None else tuple(cfg.colors[p] for p in res.witness.placement)
        write_drawing(PointConfig(tuple(pts), cols), args.witness, f"{label}({g.name}) = {res.value}")
    return EXIT_OK


def cmd_relation(args) -> int:
    cfg = read_drawing(args.drawing)
    cfg.require_generic()
    blocks = orchard_relation(cfg)
    for k, block in enumerate(blocks, 1):
        print(f"class {k}: {' '.join(map(str, sorted(block)))}")
    return EXIT_OK


def cmd_render(args) -> int:
    from .render import render_svg

    cfg = read_drawing(args.drawing)
    g = load_graph(args.graph)
    d = drawing_for(cfg, g)
    Path(args.out).write_text(render_svg(d, g, separating=args.separating))
    print(f"wrote {args.out}")
    return EXIT_OK


def _range(text: str) -> range:
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return range(int(lo), int(hi) + 1)
        return range(int(text), int(text) + 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B or A, got {text!r}") from None


def cmd_verify(args) -> int:
    from .explore.verify import VerifyRange, verify_formulas

    base = VerifyRange()
    picked = {
        "complete": args.complete,
        "star": args.star,
        "wheel": args.wheel,
        "knn": args.knn,
    }
    selective = any(v is not None for v in picked.values()) or args.table1 or args.two_arcs is not None or args.coincidence
    rs = VerifyRange(
        complete=args.complete or (range(0) if selective else base.complete),
        star=args.star or (range(0) if selective else base.star),
        wheel=args.wheel or (range(0) if selective else base.wheel),
        knn=args.knn or (range(0) if selective else base.knn),
        two_arcs_max=args.two_arcs if args.two_arcs is not None else (0 if selective else base.two_arcs_max),
        table1=args.table1 or not selective,
        coincidence=args.coincidence or not selective,
        max_points=args.max_points,
        source=_source(args),
        jobs=args.jobs,
    )
    report = verify_formulas(rs)
    print(report.text())
    return EXIT_OK if report.ok else EXIT_MISMATCH


# -- entry point -----------------------------------------------------------------------


def _add_source_flags(p):
    grp = p.add_argument_group("configuration source (default: shipped order-type database)")
    grp.add_argument("--grid", type=int, metavar="N", help="order types realized on the N x N grid")
    grp.add_argument("--db", metavar="PATH", help="order-type database file or directory")
    grp.add_argument("--random", type=int, metavar="COUNT", help="COUNT random configurations (needs --seed)")
    grp.add_argument("--seed", type=int)
    p.add_argument("--jobs", type=int, default=len(os.sched_getaffinity(0)), help="worker processes")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orchardcross", description="Orchard crossing numbers of straight-line drawings.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="Orchard count of one drawing")
    p.add_argument("drawing")
    p.add_argument("graph", help="graph spec (K5, K3,3, C6, W5, @file) or edge-list file")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("construct", help="write a verified extremal construction")
    p.add_argument("family", choices=sorted(CONSTRUCTIONS))
    p.add_argument("params", type=int, nargs="+")
    p.add_argument("-o", "--out", help="drawing file to write")
    p.add_argument("--graph-out", help="edge-list file to write")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("search", help="exhaustive or sampled OCN / MOCN search")
    p.add_argument("graph")
    m = p.add_mutually_exclusive_group()
    m.add_argument("--min", action="store_true", default=True)
    m.add_argument("--max", action="store_true")
    _add_source_flags(p)
    p.add_argument("--require-exhaustive", action="store_true")
    p.add_argument("--witness", help="write the extremal drawing here")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("relation", help="classes of the Orchard relation")
    p.add_argument("drawing")
    p.set_defaults(func=cmd_relation)

    p = sub.add_parser("render", help="SVG picture of a drawing")
    p.add_argument("drawing")
    p.add_argument("graph")
    p.add_argument("-o", "--out", required=True)
    p.add_argument("--separating", action="store_true", help="also draw every separating line (dashed)")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("verify", help="check closed forms against constructions and search")
    p.add_argument("--complete", type=_range, metavar="A..B")
    p.add_argument("--star", type=_range, metavar="A..B")
    p.add_argument("--wheel", type=_range, metavar="A..B")
    p.add_argument("--knn", type=_range, metavar="A..B")
    p.add_argument("--two-arcs", type=int, metavar="MAX", help="two-arcs MOCN checks for n, m <= MAX")
    p.add_argument("--table1", action="store_true", help="OCN(K_n,m) table cells")
    p.add_argument("--coincidence", action="store_true", help="MOCN(K_n) vs rectilinear crossing minimizers")
    p.add_argument("--max-points", type=int, default=7, help="largest point count searched exhaustively")
    _add_source_flags(p)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    from .explore.enumeration import IncompleteEnumeration
    from .explore.db import NonGenericRecord, TruncatedFile
    from .explore.search import PlacementLimitExceeded

    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except NonGenericError as exc:
        i, j, k = exc.triple
        print(f"error: points {i}, {j}, {k} are collinear", file=sys.stderr)
        return EXIT_GENERIC
    except NonGenericRecord as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GENERIC
    except IncompleteEnumeration as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INCOMPLETE
    except (DrawingFormatError, GraphFormatError, TruncatedFile, PlacementLimitExceeded, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
