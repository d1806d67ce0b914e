"""Binary order-type database files.

Record layout, one record per order type, no header:

* ``n <= 8``: ``2n`` bytes, one unsigned byte per coordinate, ``x0 y0 x1 y1 ...``;
* ``n in {9, 10}``: ``4n`` bytes, unsigned 16-bit little-endian per coordinate.

Files shipped with the package live in ``orchardcross/data`` and are named
``otypesNN.b08`` / ``otypesNN.b16`` after the record width.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from ..geom import PointConfig, find_collinear_triple, orientation_table

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


class TruncatedFile(ValueError):
    pass


class NonGenericRecord(ValueError):
    def __init__(self, index, triple):
        self.index, self.triple = index, triple
        super().__init__(f"record {index} has collinear points {triple}")


def _layout(n: int) -> tuple[np.dtype, int]:
    if not 3 <= n <= 10:
        raise ValueError("order-type files cover 3 <= n <= 10")
    dtype = np.dtype(np.uint8) if n <= 8 else np.dtype("<u2")
    return dtype, 2 * n * dtype.itemsize


def record_size(n: int) -> int:
    return _layout(n)[1]


def db_filename(n: int) -> str:
    return f"otypes{n:02d}.b{'08' if n <= 8 else '16'}"


def default_db_path(n: int) -> Path:
    return DATA_DIR / db_filename(n)


def read_order_type_coords(path, n: int) -> Iterator[tuple[tuple[int, int], ...]]:
    dtype, size = _layout(n)
    raw = Path(path).read_bytes()
    if len(raw) % size:
        raise TruncatedFile(f"{path}: {len(raw)} bytes is not a multiple of the {size}-byte record")
    values = np.frombuffer(raw, dtype=dtype).reshape(-1, n, 2)
    for index, rec in enumerate(values):
        coords = tuple((int(x), int(y)) for x, y in rec)
        triple = find_collinear_triple(orientation_table(coords))
        if triple is not None:
            raise NonGenericRecord(index, triple)
        yield coords


def read_order_type_db(path, n: int) -> Iterator[PointConfig]:
    """Stream the configurations of a database file; every record must be generic."""
    for coords in read_order_type_coords(path, n):
        yield PointConfig.from_coords(coords)


def write_order_type_db(path, configs: Iterable, n: int) -> int:
    """Write configurations (PointConfig or integer coordinate tuples); returns the record count."""
    dtype, _ = _layout(n)
    limit = np.iinfo(dtype).max
    rows = []
    for cfg in configs:
        coords = cfg.integer_coords if isinstance(cfg, PointConfig) else tuple(cfg)
        if len(coords) != n:
            raise ValueError(f"expected {n} points, got {len(coords)}")
        flat = [c for p in coords for c in p]
        if min(flat) < 0 or max(flat) > limit:
            raise ValueError(f"coordinates {coords} do not fit the {dtype} record")
        rows.append(flat)
    data = np.array(rows, dtype=dtype).reshape(-1, 2 * n)
    Path(path).write_bytes(data.tobytes())
    return len(rows)
