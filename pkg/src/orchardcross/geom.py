"""Exact planar primitives.

Coordinates are :class:`fractions.Fraction` values.  Every predicate is an
exact sign computation; there are no tolerances anywhere in the package.
Heavier routines work on an integer rescaling of a configuration (multiplying
all coordinates by a common positive denominator preserves every orientation)
and on a precomputed ``n x n x n`` orientation table.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

ExactScalar = Fraction

# |coordinate| below this bound keeps every 2x2 determinant inside int64
_INT64_SAFE = 1 << 30


class NonGenericError(ValueError):
    """Raised when a predicate meets three collinear points."""

    def __init__(self, triple, message=None):
        self.triple = tuple(triple)
        super().__init__(message or f"collinear triple {self.triple}")


class Orientation(enum.IntEnum):
    CW = -1
    COLLINEAR = 0
    CCW = 1


class Color(str, enum.Enum):
    BLACK = "B"
    WHITE = "W"


def to_scalar(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to an exact scalar.

    Floats are rejected: a binary float silently carries rounding into the
    geometry, which is exactly what this module exists to avoid.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact coordinate")


class Point(NamedTuple):
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x, y) -> "Point":
        return cls(to_scalar(x), to_scalar(y))


def orientation(a: Sequence, b: Sequence, c: Sequence) -> Orientation:
    """Sign of det(b - a, c - a)."""
    det = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    if det > 0:
        return Orientation.CCW
    if det < 0:
        return Orientation.CW
    return Orientation.COLLINEAR


def separates(a: Sequence, b: Sequence, p: Sequence, q: Sequence) -> bool:
    """True iff the line through ``a`` and ``b`` puts ``p`` and ``q`` on opposite sides.

    Raises :class:`NonGenericError` if ``p`` or ``q`` lies on the line.
    """
    sp = orientation(a, b, p)
    sq = orientation(a, b, q)
    if sp == 0:
        raise NonGenericError((tuple(a), tuple(b), tuple(p)))
    if sq == 0:
        raise NonGenericError((tuple(a), tuple(b), tuple(q)))
    return sp != sq


def _lcm(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


def orientation_table(coords: Sequence[tuple[int, int]]) -> np.ndarray:
    """``T[i, j, k] = orientation(p_i, p_j, p_k)`` for integer coordinates, as int8."""
    n = len(coords)
    if n == 0:
        return np.zeros((0, 0, 0), dtype=np.int8)
    bound = max(max(abs(x), abs(y)) for x, y in coords)
    dtype = np.int64 if bound < _INT64_SAFE else object
    xs = np.array([c[0] for c in coords], dtype=dtype)
    ys = np.array([c[1] for c in coords], dtype=dtype)
    dx = xs[None, :] - xs[:, None]  # dx[i, j] = x_j - x_i
    dy = ys[None, :] - ys[:, None]
    det = dx[:, :, None] * dy[:, None, :] - dy[:, :, None] * dx[:, None, :]
    return (det > 0).astype(np.int8) - (det < 0).astype(np.int8)


def find_collinear_triple(table: np.ndarray) -> tuple[int, int, int] | None:
    n = table.shape[0]
    if n < 3:
        return None
    zero = table == 0
    idx = np.arange(n)
    zero[idx, idx, :] = False
    zero[idx, :, idx] = False
    zero[:, idx, idx] = False
    hits = np.argwhere(zero)
    if len(hits) == 0:
        return None
    return tuple(sorted(int(v) for v in hits[0]))


@dataclass(frozen=True)
class PointConfig:
    """Ordered planar points; the index of a point is its id.

    Genericity is not enforced at construction (``is_generic`` must be able
    to answer ``False``); every counting routine calls :meth:`require_generic`.
    """

    points: tuple[Point, ...]
    colors: tuple[Color, ...] | None = None

    def __post_init__(self):
        pts = tuple(p if isinstance(p, Point) else Point.of(*p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise ValueError("a configuration needs at least one point")
        if self.colors is not None:
            cols = tuple(Color(c) for c in self.colors)
            if len(cols) != len(pts):
                raise ValueError("colors must be parallel to points")
            object.__setattr__(self, "colors", cols)

    @classmethod
    def from_coords(cls, coords: Iterable[Sequence], colors=None) -> "PointConfig":
        return cls(tuple(Point.of(x, y) for x, y in coords), None if colors is None else tuple(colors))

    def __len__(self) -> int:
        return len(self.points)

    def with_colors(self, colors) -> "PointConfig":
        return PointConfig(self.points, None if colors is None else tuple(colors))

    @cached_property
    def integer_coords(self) -> tuple[tuple[int, int], ...]:
        """Coordinates scaled by the common denominator; same orientations."""
        scale = _lcm(c.denominator for p in self.points for c in p)
        return tuple((int(p.x * scale), int(p.y * scale)) for p in self.points)

    @cached_property
    def orientations(self) -> np.ndarray:
        table = orientation_table(self.integer_coords)
        table.flags.writeable = False
        return table

    @cached_property
    def collinear_triple(self) -> tuple[int, int, int] | None:
        return find_collinear_triple(self.orientations)

    def require_generic(self) -> None:
        triple = self.collinear_triple
        if triple is not None:
            raise NonGenericError(triple, f"points {triple} are collinear")

    @cached_property
    def separations(self) -> np.ndarray:
        """``S[i, j] = n(p_i, p_j)``, the number of lines through other pairs separating them."""
        self.require_generic()
        return separation_matrix(self.orientations)


def is_generic(cfg: PointConfig) -> bool:
    return cfg.collinear_triple is None


def separation_matrix(table: np.ndarray) -> np.ndarray:
    """Separation counts for every pair, from an orientation table of a generic set.

    A line through ``k, l`` contributes to ``(i, j)`` when the signs of ``i``
    and ``j`` against it are opposite; the sign of ``k`` or ``l`` itself is 0,
    so pairs sharing a point with the line never count.
    """
    n = table.shape[0]
    if n < 4:
        return np.zeros((n, n), dtype=np.int64)
    ks, ls = np.triu_indices(n, 1)
    rows = table[ks, ls, :].astype(np.int8)
    return ((rows[:, :, None] * rows[:, None, :]) < 0).sum(axis=0, dtype=np.int64)


def separation_count(cfg: PointConfig, i: int, j: int) -> int:
    if i == j:
        raise ValueError("separation_count needs two distinct points")
    n = len(cfg)
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"point id out of range for {n} points")
    return int(cfg.separations[i, j])


def separation_count_naive(cfg: PointConfig, i: int, j: int) -> int:
    """Direct loop over all lines; used as an oracle for :func:`separation_count`."""
    if i == j:
        raise ValueError("separation_count needs two distinct points")
    pts = cfg.points
    others = [k for k in range(len(pts)) if k not in (i, j)]
    return sum(
        separates(pts[k], pts[l], pts[i], pts[j]) for k, l in itertools.combinations(others, 2)
    )


def convex_hull(coords: Sequence[Sequence]) -> list[int]:
    """Indices of hull vertices in counter-clockwise order (monotone chain).

    Assumes no three input points are collinear.
    """
    order = sorted(range(len(coords)), key=lambda i: (coords[i][0], coords[i][1]))
    if len(order) <= 2:
        return order

    def chain(ids):
        out: list[int] = []
        for i in ids:
            while len(out) >= 2 and orientation(coords[out[-2]], coords[out[-1]], coords[i]) <= 0:
                out.pop()
            out.append(i)
        return out

    lower = chain(order)
    upper = chain(reversed(order))
    return lower[:-1] + upper[:-1]


def hull_indices(cfg: PointConfig) -> list[int]:
    return convex_hull(cfg.integer_coords)


def in_convex_position(cfg: PointConfig) -> bool:
    return len(hull_indices(cfg)) == len(cfg)


def affine_image(cfg: PointConfig, matrix, offset=(0, 0)) -> PointConfig:
    """Apply ``p -> M p + t`` with exact entries; colors carry over."""
    (a, b), (c, d) = [[to_scalar(v) for v in row] for row in matrix]
    tx, ty = (to_scalar(v) for v in offset)
    pts = tuple(Point(a * p.x + b * p.y + tx, c * p.x + d * p.y + ty) for p in cfg.points)
    return PointConfig(pts, cfg.colors)
