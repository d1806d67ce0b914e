#!/usr/bin/env python3
"""Write SVG pictures of the extremal drawings (stars, facing arcs, cycle plus a point).

Usage:
    python scripts/render_figures.py [--out figures]
"""

import argparse
from pathlib import Path

from orchardcross import constructions as C
from orchardcross.render import render_svg


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("figures"))
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    figures = {
        "star5.svg": C.star_drawing(5),
        "star7.svg": C.star_drawing(7),
        "star8.svg": C.star_drawing(8),
        "two_arcs_4_4.svg": C.bipartite_drawing(C.two_arcs(4, 4), 4, 4),
        "cycle5_center.svg": C.convex_cycle_plus_vertex(5, "center"),
        "cycle5_convex.svg": C.convex_cycle_plus_vertex(5, "convex"),
    }
    for name, (d, g) in figures.items():
        (args.out / name).write_text(render_svg(d, g, separating=name.startswith("cycle")))
        print(args.out / name)


if __name__ == "__main__":
    main()
