#!/usr/bin/env python3
"""Regenerate the order-type database files shipped in ``orchardcross/data``.

n <= 7 comes from the grid enumerator, n = 8 from exact arrangement-cell
extension.  Every representative is pulled onto the 8-bit grid, written,
read back and re-certified against the known class counts.

Usage:
    python scripts/build_order_type_db.py [--max-n 8] [--out DIR]
"""

import argparse
import logging
import time
from pathlib import Path

from orchardcross.explore.chirotope import chirotope_of_coords
from orchardcross.explore.db import DATA_DIR, db_filename, read_order_type_coords, write_order_type_db
from orchardcross.explore.enumeration import (
    KNOWN_ORDER_TYPE_COUNTS,
    enumerate_order_types_extension,
    enumerate_order_types_grid,
)
from orchardcross.explore.realize import small_realization

log = logging.getLogger("build_db")

GRID_FOR = {3: 3, 4: 4, 5: 5, 6: 8, 7: 12}


def build(n, out_dir: Path):
    start = time.time()
    if n in GRID_FOR:
        cat = enumerate_order_types_grid(n, GRID_FOR[n])
    else:
        cat = enumerate_order_types_extension(n)
    records = []
    for chi in sorted(cat.reps):
        coords = cat.reps[chi]
        if max(max(p) for p in coords) > 255:
            coords = small_realization(coords, bits=8)
        records.append(coords)
    path = out_dir / db_filename(n)
    write_order_type_db(path, records, n)

    seen = {chirotope_of_coords(c) for c in read_order_type_coords(path, n)}
    if len(seen) != KNOWN_ORDER_TYPE_COUNTS[n]:
        raise SystemExit(f"{path}: {len(seen)} classes after round trip")
    log.info("wrote %s: %d order types in %.1fs", path, len(seen), time.time() - start)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--min-n", type=int, default=3)
    ap.add_argument("--max-n", type=int, default=8)
    ap.add_argument("--out", type=Path, default=DATA_DIR)
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(name)s %(message)s")
    args.out.mkdir(parents=True, exist_ok=True)
    for n in range(args.min_n, args.max_n + 1):
        build(n, args.out)


if __name__ == "__main__":
    main()
