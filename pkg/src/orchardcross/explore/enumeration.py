"""Order-type enumeration.

Two generators share one engine: every ``(k+1)``-point order type arises by
adding a point to some ``k``-point configuration, and the new order type only
depends on which cell of the line arrangement spanned by the ``k`` points the
new point falls in.

* :func:`enumerate_order_types_grid` restricts new points to an integer grid.
* :func:`enumerate_order_types_extension` places one exact rational point in
  every cell of the arrangement.

Neither is complete by construction (a class may only be reachable from a
realization of its parent that is not among the stored representatives), so
both certify their result against the known class counts and raise
:class:`IncompleteEnumeration` when short.
"""

from __future__ import annotations

import functools
import itertools
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np

from ..geom import PointConfig, find_collinear_triple, orientation_table
from .chirotope import Chirotope, canonical_form

log = logging.getLogger(__name__)

# Number of realizable order types of n points in general position
# (Aichholzer, Aurenhammer, Krasser, "Enumerating order types for small point
# sets with applications", 2002).  Used as completeness certificates.
KNOWN_ORDER_TYPE_COUNTS = {3: 1, 4: 2, 5: 3, 6: 16, 7: 135, 8: 3315, 9: 158817, 10: 14309547}


class IncompleteEnumeration(RuntimeError):
    def __init__(self, n, found, expected):
        self.n, self.found, self.expected = n, found, expected
        super().__init__(
            f"found {found} order types of {n} points, expected {expected}; enlarge the search"
        )


Coords = tuple[tuple[int, int], ...]


@dataclass
class OrderTypeCatalog:
    """Canonical chirotope -> representative integer coordinates, for one ``n``."""

    n: int
    reps: dict[Chirotope, Coords] = field(default_factory=dict)
    # extra realizations per class, only used to seed further extension
    extra: dict[Chirotope, list[Coords]] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.reps)

    @property
    def expected(self) -> int | None:
        return KNOWN_ORDER_TYPE_COUNTS.get(self.n)

    @property
    def complete(self) -> bool:
        return self.expected is not None and len(self) == self.expected

    def certify(self) -> None:
        if not self.complete:
            raise IncompleteEnumeration(self.n, len(self), self.expected)

    def add(self, coords: Coords, keep: int = 1) -> Chirotope:
        """Record a realization; returns its class."""
        table = orientation_table(coords)
        code, labeling, mirror = canonical_form(table, coords)
        key = Chirotope(self.n, code)
        if key not in self.reps:
            self.reps[key] = canonical_coords(coords, labeling, mirror)
            self.extra[key] = []
        else:
            bucket = self.extra[key]
            if len(bucket) + 1 < keep:
                bucket.append(coords)
        return key

    def realizations(self, chi: Chirotope) -> list[Coords]:
        return [self.reps[chi], *self.extra.get(chi, [])]

    def items(self):
        """``(chirotope, PointConfig)`` pairs in canonical-code order."""
        for chi in sorted(self.reps):
            yield chi, PointConfig.from_coords(self.reps[chi])


def canonical_coords(coords: Coords, labeling, mirror: bool) -> Coords:
    """Relabel (and mirror) so the stored representative realizes the canonical code."""
    pts = [coords[i] for i in labeling]
    if mirror:
        pts = [(-x, y) for x, y in pts]
    return normalize(pts)


def normalize(pts) -> Coords:
    """Translate to the non-negative quadrant and divide out a common factor."""
    minx = min(x for x, _ in pts)
    miny = min(y for _, y in pts)
    pts = [(x - minx, y - miny) for x, y in pts]
    g = 0
    for x, y in pts:
        g = gcd(g, gcd(x, y))
    if g > 1:
        pts = [(x // g, y // g) for x, y in pts]
    return tuple(pts)


def _lines(coords):
    return list(itertools.combinations(range(len(coords)), 2))


def cell_signatures(coords, candidates: np.ndarray) -> np.ndarray:
    """Sign of each candidate point against each spanned line, shape (m, lines).

    Zero entries mark candidates lying on a line.
    """
    pts = np.array(coords, dtype=object)
    out = []
    for k, l in _lines(coords):
        (x1, y1), (x2, y2) = pts[k], pts[l]
        det = (x2 - x1) * (candidates[:, 1] - y1) - (y2 - y1) * (candidates[:, 0] - x1)
        out.append((det > 0).astype(np.int8) - (det < 0).astype(np.int8))
    return np.stack(out, axis=1) if out else np.zeros((len(candidates), 0), dtype=np.int8)


def _line_coeffs(coords):
    """Integer ``(a, b, c)`` with ``a x + b y + c`` = orientation determinant of ``(p_k, p_l, (x, y))``."""
    out = []
    for k, l in _lines(coords):
        (x1, y1), (x2, y2) = coords[k], coords[l]
        out.append((y1 - y2, x2 - x1, x1 * y2 - x2 * y1))
    return out


def _direction_half(d):
    x, y = d
    return 0 if (y > 0 or (y == 0 and x > 0)) else 1


def _sort_directions(dirs):
    def cmp(a, b):
        ha, hb = _direction_half(a), _direction_half(b)
        if ha != hb:
            return ha - hb
        c = a[0] * b[1] - a[1] * b[0]
        return -1 if c > 0 else (1 if c < 0 else 0)

    return sorted(dirs, key=functools.cmp_to_key(cmp))


def cell_points(coords) -> list[tuple[int, int, int]]:
    """One point strictly inside every cell of the arrangement, homogeneous ``(X, Y, W)``, ``W > 0``.

    Every cell of an arrangement of non-parallel lines has a vertex, so it is
    enough to step from each vertex into each angular sector around it, by
    an amount small enough not to cross any line avoiding that vertex.
    """
    lines = _line_coeffs(coords)
    if len(lines) < 2:
        raise ValueError("need at least three points")

    vertices = set()
    for (a1, b1, c1), (a2, b2, c2) in itertools.combinations(lines, 2):
        w = a1 * b2 - a2 * b1
        if w == 0:
            continue
        x, y = b1 * c2 - b2 * c1, c1 * a2 - c2 * a1
        if w < 0:
            x, y, w = -x, -y, -w
        g = gcd(gcd(x, y), w)
        vertices.add((x // g, y // g, w // g))

    found = {}
    for x, y, w in sorted(vertices):
        values = [a * x + b * y + c * w for a, b, c in lines]
        dirs = _sort_directions(
            [d for (a, b, _), f in zip(lines, values) if f == 0 for d in ((b, -a), (-b, a))]
        )
        for d1, d2 in zip(dirs, dirs[1:] + dirs[:1]):
            dx, dy = d1[0] + d2[0], d1[1] + d2[1]
            # candidate = vertex + (dx, dy) / scale
            scale = 1
            for (a, b, _), f in zip(lines, values):
                g = a * dx + b * dy
                if f != 0 and g != 0 and (g > 0) != (f > 0):
                    scale = max(scale, (w * abs(g)) // abs(f) + 1)
            cand = (x * scale + w * dx, y * scale + w * dy, w * scale)
            sig = tuple(a * cand[0] + b * cand[1] + c * cand[2] > 0 for a, b, c in lines)
            found.setdefault(sig, cand)
    return list(found.values())


def extend_coords(coords, cand) -> Coords:
    x, y, w = cand
    return (*((px * w, py * w) for px, py in coords), (x, y))


def compact(coords: Coords, max_bits: int = 24) -> Coords:
    """A small integer realization with the same labeled orientations, if rounding finds one."""
    target = orientation_table(coords)
    arr = np.array([[float(Fraction(c)) for c in p] for p in coords])
    arr = arr - arr.min(axis=0)
    span = arr.max()
    if span == 0:
        return normalize(coords)
    for bits in range(3, max_bits + 1):
        scale = ((1 << bits) - 1) / span
        cand = tuple((int(round(x * scale)), int(round(y * scale))) for x, y in arr)
        if len(set(cand)) == len(cand) and np.array_equal(orientation_table(cand), target):
            return normalize(cand)
    return normalize(coords)


def _seed_triangles(grid_size: int | None) -> list[Coords]:
    if grid_size is None:
        return [((0, 0), (1, 0), (0, 1))]
    g = grid_size - 1
    seeds = {((0, 0), (g, 0), (0, g)), ((0, 0), (g, 1), (1, g)), ((0, 0), (g, g // 2), (g // 2, g))}
    return [s for s in seeds if find_collinear_triple(orientation_table(s)) is None]


def _grid_points(grid_size: int) -> np.ndarray:
    xs, ys = np.meshgrid(np.arange(grid_size), np.arange(grid_size), indexing="ij")
    return np.stack([xs.ravel(), ys.ravel()], axis=1).astype(object)


def extend_catalog(parent: OrderTypeCatalog, grid_size: int | None = None, keep: int = 1) -> OrderTypeCatalog:
    """All order types reachable by adding one point to a stored realization."""
    child = OrderTypeCatalog(parent.n + 1)
    grid = None if grid_size is None else _grid_points(grid_size)
    for chi in sorted(parent.reps):
        for coords in parent.realizations(chi):
            if grid is None:
                for cand in cell_points(coords):
                    child.add(compact(extend_coords(coords, cand)), keep)
            else:
                sig = cell_signatures(coords, grid)
                ok = np.all(sig != 0, axis=1)
                pts = grid[ok]
                _, first, cell_of = np.unique(sig[ok], axis=0, return_index=True, return_inverse=True)
                cell_of = np.asarray(cell_of).ravel()
                for cell, idx in enumerate(first):
                    x, y = pts[idx]
                    chi = child.add(normalize((*coords, (int(x), int(y)))), keep)
                    # other grid points of the same cell realize the same labeled order type
                    bucket = child.extra[chi]
                    members = np.flatnonzero(cell_of == cell)
                    for m in members[1 :: max(1, len(members) // 4)]:
                        if len(bucket) + 1 >= keep:
                            break
                        x, y = pts[m]
                        bucket.append(normalize((*coords, (int(x), int(y)))))
    return child


def random_walk(coords: Coords, steps: int, rng, spread: int = 64) -> Coords:
    """Another realization of the same labeled order type, by random single-point moves."""
    pts = [(x * spread, y * spread) for x, y in coords]
    target = orientation_table(pts)
    reach = spread * max(max(p) for p in coords) // 4 + 1
    for _ in range(steps):
        i = rng.randrange(len(pts))
        old = pts[i]
        pts[i] = (old[0] + rng.randint(-reach, reach), old[1] + rng.randint(-reach, reach))
        if not np.array_equal(orientation_table(pts), target):
            pts[i] = old
    return compact(tuple(pts))


def saturate(parent: OrderTypeCatalog, child: OrderTypeCatalog, rounds: int = 8, seed: int = 0) -> OrderTypeCatalog:
    """Extend fresh random realizations of every parent class until ``child`` is certified.

    Stops early once the known count is reached; deterministic for a given seed.
    """
    rng = random.Random(seed)
    for r in range(rounds):
        if child.complete:
            break
        for chi in sorted(parent.reps):
            coords = random_walk(parent.reps[chi], 200, rng)
            for cand in cell_points(coords):
                child.add(compact(extend_coords(coords, cand)))
        log.info("n=%d after saturation round %d: %d order types", child.n, r, len(child))
    return child


def _enumerate(n: int, grid_size: int | None, keep: int, rounds: int = 0, seed: int = 0) -> OrderTypeCatalog:
    if n < 3:
        raise ValueError("order types are enumerated for n >= 3")
    cat = OrderTypeCatalog(3)
    for tri in _seed_triangles(grid_size):
        cat.add(tri, keep=max(keep, 4))
    while cat.n < n:
        parent = cat
        cat = extend_catalog(parent, grid_size, keep)
        if grid_size is None and rounds:
            saturate(parent, cat, rounds, seed)
        log.info("n=%d: %d order types", cat.n, len(cat))
    return cat


def enumerate_order_types_grid(n: int, grid_size: int, keep: int = 256, certify: bool = True) -> OrderTypeCatalog:
    """Distinct order types of ``n`` points on the ``grid_size x grid_size`` grid.

    Raises :class:`IncompleteEnumeration` if ``certify`` and the count falls
    short of the known total.
    """
    if grid_size < n:
        raise ValueError("grid_size must be at least n")
    cat = _enumerate(n, grid_size, keep)
    if certify:
        cat.certify()
    return cat


def enumerate_order_types_extension(
    n: int, keep: int = 1, certify: bool = True, rounds: int = 8, seed: int = 0
) -> OrderTypeCatalog:
    """Order types by exact insertion into every arrangement cell.

    Levels that come up short are topped up by :func:`saturate`.
    """
    cat = _enumerate(n, None, keep, rounds, seed)
    if certify:
        cat.certify()
    return cat
