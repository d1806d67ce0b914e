"""Extremal drawings with exact rational coordinates, plus the closed forms they realize.

Each builder checks the combinatorial predicates its count depends on (convex
position, balanced splits around a hub, colored quadruple classes) right
after building and raises :class:`ConstructionVerificationFailed` if the
rational realization misses one.  Regular polygons have no rational
realization in general, so polygon vertices are rational points of the unit
circle ``((1 - t^2)/(1 + t^2), 2t/(1 + t^2))`` with ``t`` a dyadic
approximation of ``tan(theta / 2)``; only the order type matters.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from math import comb

from .geom import Color, Point, PointConfig, hull_indices, is_generic
from .graphs import Graph, complete_bipartite, cycle, wheel
from .orchard import (
    Drawing,
    QuadrupleClass,
    balanced_split_sizes,
    classify_quadruple,
    star_split_profile,
)

RETRY_DOUBLINGS = 8

# rectilinear crossing numbers of K_n for n <= 12, used as constants
RECTILINEAR_CROSSING_KN = {4: 0, 5: 1, 6: 3, 7: 9, 8: 19, 9: 36, 10: 62, 11: 102, 12: 153}


class ConstructionVerificationFailed(RuntimeError):
    pass


# -- closed forms -------------------------------------------------------------


def ocn_complete(n: int) -> int:
    return 2 * comb(n, 4)


def ocn_star(n: int) -> int:
    """OCN of ``K_{n,1}``."""
    if n % 2:
        return n * (n - 1) * (n - 3) // 8
    return n * (n - 2) ** 2 // 8


def ocn_wheel(n: int) -> int:
    """OCN of ``W_{n,1}``; ``W_3 = K_4`` is the one exception to the polygon formula."""
    if n < 3:
        raise ValueError("wheels need n >= 3")
    if n == 3:
        return ocn_complete(4)
    if n % 2:
        return n * (n * n - 4 * n + 11) // 8
    return n * (n * n - 4 * n + 12) // 8


def ocn_knn(n: int) -> int:
    return 4 * n * comb(n, 3)


def mocn_bipartite(n: int, m: int) -> int:
    return 2 * comb(n, 2) * comb(m, 2) + 2 * m * comb(n, 3) + 2 * n * comb(m, 3)


def mocn_complete(n: int) -> int:
    """A quadruple scores 3 minus its edge crossings, so the maximum pairs with the fewest crossings."""
    return 3 * comb(n, 4) - RECTILINEAR_CROSSING_KN[n]


def star_odd_recount(n: int) -> int:
    """Convex mixed quadruples when the hub sits at the center of an odd polygon."""
    return n * comb((n - 1) // 2, 2)


def star_even_recount(n: int) -> int:
    """Same count for even ``n``: triples avoiding antipodal pairs plus half of those using one."""
    return n * (n - 2) * (n - 4) // 8 + n * (n - 2) // 4


# -- helpers ------------------------------------------------------------------


def _fail(msg):
    raise ConstructionVerificationFailed(msg)


def _circle_point(theta: float, denominator: int) -> Point:
    t = Fraction(round(math.tan(theta / 2) * denominator), denominator)
    d = 1 + t * t
    return Point((1 - t * t) / d, 2 * t / d)


def _polygon(n: int, denominator: int, phase: float) -> list[Point]:
    return [_circle_point(phase + 2 * math.pi * k / n, denominator) for k in range(n)]


def bipartite_drawing(cfg: PointConfig, n: int, m: int) -> tuple[Drawing, Graph]:
    """Drawing of ``K_{n,m}`` sending the left block to black points and the right block to white."""
    if cfg.colors is None:
        raise ValueError("configuration has no colors")
    black = [i for i, c in enumerate(cfg.colors) if c is Color.BLACK]
    white = [i for i, c in enumerate(cfg.colors) if c is Color.WHITE]
    if (len(black), len(white)) != (n, m):
        raise ValueError(f"expected {n} black and {m} white points")
    g, _ = complete_bipartite(n, m)
    return Drawing(cfg, tuple(black + white)), g


# -- constructions --------------------------------------------------------------


def convex_position(n: int) -> PointConfig:
    """``n`` points on the parabola ``(t, t^2)``, ``t = 0..n-1``; hull order is index order."""
    if n < 1:
        raise ValueError("n must be positive")
    return PointConfig.from_coords([(t, t * t) for t in range(n)])


def _check_star(cfg: PointConfig, n: int) -> None:
    if not is_generic(cfg):
        _fail("star polygon is not generic")
    leaves = PointConfig(cfg.points[:n])
    hull = hull_indices(leaves)
    if len(hull) != n:
        _fail("leaves are not in convex position")
    if sorted(hull_indices(cfg)) != list(range(n)):
        _fail("hub is not strictly inside the leaf polygon")
    lo, _ = balanced_split_sizes(n)
    split = star_split_profile(Drawing.identity(cfg), n)
    if any(k != lo for k in split.splits.values()):
        _fail(f"unbalanced split around the hub: {split.splits}")


def star_polygon(n: int) -> PointConfig:
    """Black leaves ``0..n-1`` around a near-regular polygon (counter-clockwise), white hub ``n``.

    The hub is the center for odd ``n`` and a small offset from it for even
    ``n``, so that no hub-leaf line runs through a second leaf.
    """
    if n < 3:
        raise ValueError("star polygons need n >= 3")
    phase = math.pi / (2 * n) + 0.1 / n
    last = None
    for g in range(RETRY_DOUBLINGS + 1):
        den = 1 << (10 + g)
        leaves = _polygon(n, den, phase)
        if n % 2:
            hub = Point(Fraction(0), Fraction(0))
        else:
            # between two neighbouring diameters, well inside the central cell
            phi = phase + math.pi / n
            r = Fraction(1, 8 * n)
            hub = Point(r * Fraction(round(math.cos(phi) * den), den), r * Fraction(round(math.sin(phi) * den), den))
        colors = (Color.BLACK,) * n + (Color.WHITE,)
        cfg = PointConfig(tuple(leaves) + (hub,), colors)
        try:
            _check_star(cfg, n)
            return cfg
        except ConstructionVerificationFailed as exc:
            last = exc
    raise ConstructionVerificationFailed(f"star_polygon({n}): {last}")


def star_drawing(n: int) -> tuple[Drawing, Graph]:
    cfg = star_polygon(n)
    return bipartite_drawing(cfg, n, 1)


def wheel_polygon(n: int) -> tuple[Drawing, Graph]:
    """Optimal wheel drawing: the rim follows the polygon, the hub sits inside.

    ``W_3`` is ``K_4``, whose optimum is four points in convex position rather
    than a triangle around its hub.
    """
    g = wheel(n)
    if n == 3:
        return Drawing.identity(convex_position(4)), g
    cfg = star_polygon(n)
    return Drawing.identity(cfg), g


def alternating_polygon(n: int) -> PointConfig:
    """``2n`` points in convex position whose colors alternate around the hull."""
    if n < 1:
        raise ValueError("n must be positive")
    base = convex_position(2 * n)
    colors = tuple(Color.BLACK if i % 2 == 0 else Color.WHITE for i in range(2 * n))
    cfg = base.with_colors(colors)
    hull = hull_indices(cfg)
    ring = [cfg.colors[i] for i in hull]
    if any(ring[i] == ring[(i + 1) % len(ring)] for i in range(len(ring))):
        _fail("colors do not alternate around the hull")
    return cfg


def _arc_coords(count: int, sign: int, shift: Fraction, bulge: Fraction):
    if count == 1:
        xs = [Fraction(0) + shift]
    else:
        xs = [Fraction(2 * i, count - 1) - 1 + shift for i in range(count)]
    # sign=-1: lower arc bulging up; sign=+1: upper arc bulging down
    return [(x, sign * (1 - bulge * (1 - x * x))) for x in xs]


def _check_two_arcs(cfg: PointConfig) -> None:
    if not is_generic(cfg):
        _fail("two arcs configuration is not generic")
    want = {2: QuadrupleClass.CONVEX_BLOCKED}
    for quad in itertools.combinations(range(len(cfg)), 4):
        blacks = sum(cfg.colors[i] is Color.BLACK for i in quad)
        if blacks in (0, 4):
            continue
        cls = classify_quadruple(cfg, quad)
        expected = want.get(blacks, QuadrupleClass.BLACK_INSIDE_MIXED_HULL)
        if cls is not expected:
            _fail(f"quadruple {quad} is {cls.value}, expected {expected.value}")


def two_arcs(n: int, m: int) -> PointConfig:
    """``n`` black points on a lower arc and ``m`` white points on an upper arc, bulging towards each other.

    Every two-two quadruple comes out convex with the colors blocked, and every
    three-one quadruple has a majority-color point inside.
    """
    if n < 1 or m < 1:
        raise ValueError("both arcs need at least one point")
    last = None
    for g in range(RETRY_DOUBLINGS + 1):
        shift = Fraction(1, 7 * (2 ** g) * (n + m + 1))
        bulge = Fraction(1, 8)
        coords = _arc_coords(n, -1, Fraction(0), bulge) + _arc_coords(m, 1, shift, bulge)
        colors = (Color.BLACK,) * n + (Color.WHITE,) * m
        cfg = PointConfig.from_coords(coords, colors)
        try:
            _check_two_arcs(cfg)
            return cfg
        except ConstructionVerificationFailed as exc:
            last = exc
    raise ConstructionVerificationFailed(f"two_arcs({n}, {m}): {last}")


def convex_cycle_plus_vertex(n: int, variant: str = "convex") -> tuple[Drawing, Graph]:
    """Cycle ``C_n`` on vertices ``0..n-1`` plus isolated vertex ``n``.

    ``variant="convex"``: all ``n + 1`` points convex, the isolated point cut
    off by the closing edge (``n - 2`` separations).  ``variant="center"``:
    the cycle follows a polygon and the isolated point sits inside (``n``).
    """
    if n < 3:
        raise ValueError("cycles need n >= 3")
    g = cycle(n, n + 1)
    if variant == "convex":
        return Drawing.identity(convex_position(n + 1)), g
    if variant == "center":
        return Drawing.identity(star_polygon(n).with_colors(None)), g
    raise ValueError(f"unknown variant {variant!r}")


def interior_points(cfg: PointConfig) -> list[int]:
    """Points not on the hull (convenience for audits)."""
    hull = set(hull_indices(cfg))
    return [i for i in range(len(cfg)) if i not in hull]

