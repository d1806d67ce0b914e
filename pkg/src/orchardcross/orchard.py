"""Orchard crossing counts of straight-line drawings.

For a drawing of ``G`` on a generic point set, every edge ``(s, t)`` is
charged the number of lines through two *other* points that separate ``s``
from ``t``.  The sum over edges is the drawing's Orchard count; its minimum
and maximum over drawings are OCN and MOCN.

Each separating incidence involves exactly four points (the edge and the
line), so the count also splits over 4-point subsets.  Both routes are
implemented independently: :func:`drawing_crossing_number` sums rows of the
separation matrix, :func:`quadruple_decomposition` walks the 4-subsets.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .geom import Color, PointConfig
from .graphs import Edge, Graph


class OrchardRelationError(AssertionError):
    """The computed relation is not an equivalence with at most two classes."""


@dataclass(frozen=True)
class Drawing:
    """A point configuration plus ``placement[v]`` = point id of vertex ``v``."""

    config: PointConfig
    placement: tuple[int, ...]

    def __post_init__(self):
        placement = tuple(int(p) for p in self.placement)
        if sorted(placement) != list(range(len(self.config))):
            raise ValueError("placement must be a bijection onto the configuration's points")
        object.__setattr__(self, "placement", placement)

    @classmethod
    def identity(cls, config: PointConfig) -> "Drawing":
        return cls(config, tuple(range(len(config))))

    @property
    def inverse(self) -> tuple[int, ...]:
        inv = [0] * len(self.placement)
        for v, p in enumerate(self.placement):
            inv[p] = v
        return tuple(inv)

    def check(self, g: Graph) -> None:
        if g.vertex_count != len(self.placement):
            raise ValueError(
                f"drawing has {len(self.placement)} points but graph has {g.vertex_count} vertices"
            )
        self.config.require_generic()


@dataclass
class CrossingReport:
    total: int
    per_edge: dict[Edge, int]
    # keyed by sorted vertex 4-tuples; filled by quadruple_decomposition only
    per_quadruple: dict[tuple[int, int, int, int], int] = field(default_factory=dict)


def drawing_crossing_number(d: Drawing, g: Graph) -> CrossingReport:
    d.check(g)
    sep = d.config.separations
    pl = d.placement
    per_edge = {e: int(sep[pl[e[0]], pl[e[1]]]) for e in g.sorted_edges()}
    return CrossingReport(sum(per_edge.values()), per_edge)


def orchard_count(d: Drawing, g: Graph) -> int:
    return drawing_crossing_number(d, g).total


def _pairings(q):
    a, b, c, e = q
    return (((a, b), (c, e)), ((a, c), (b, e)), ((a, e), (b, c)))


def quadruple_decomposition(d: Drawing, g: Graph) -> CrossingReport:
    """Split the Orchard count over 4-point subsets.

    A subset contributes one for each of its three pairings ``{s,t}|{k,l}``
    where ``st`` is an edge and the line ``kl`` separates ``s`` and ``t``.
    """
    d.check(g)
    table = d.config.orientations
    inv = d.inverse
    edges = g.edges
    per_edge = {e: 0 for e in g.sorted_edges()}
    per_quad = {}
    for quad in itertools.combinations(range(len(inv)), 4):
        contrib = 0
        for (s, t), (k, l) in _pairings(quad):
            for (p, q), (u, v) in (((s, t), (k, l)), ((k, l), (s, t))):
                e = tuple(sorted((inv[p], inv[q])))
                if e in edges and table[u, v, p] != table[u, v, q]:
                    contrib += 1
                    per_edge[e] += 1
        per_quad[tuple(sorted(inv[p] for p in quad))] = contrib
    return CrossingReport(sum(per_quad.values()), per_edge, per_quad)


def orchard_relation(cfg: PointConfig) -> list[frozenset[int]]:
    """Blocks of ``P ~ Q  <=>  n(P, Q) = n - 3 (mod 2)``, ordered by smallest member."""
    n = len(cfg)
    if n < 3:
        raise ValueError("the Orchard relation needs at least 3 points")
    sep = cfg.separations
    related = (sep - (n - 3)) % 2 == 0
    blocks: list[frozenset[int]] = []
    seen = set()
    for i in range(n):
        if i in seen:
            continue
        block = frozenset([i, *(j for j in range(n) if j != i and related[i, j])])
        blocks.append(block)
        seen |= block
    for a, b in itertools.combinations(range(n), 2):
        same = any(a in blk and b in blk for blk in blocks)
        if bool(related[a, b]) != same:
            raise OrchardRelationError(f"relation is not transitive at points {a}, {b}")
    if sum(len(b) for b in blocks) != n or len(blocks) > 2:
        raise OrchardRelationError(f"relation produced {len(blocks)} classes")
    return blocks


class QuadrupleClass(enum.Enum):
    """Combinatorial type of four points.

    The colored names follow three black points and one white point; for one
    black and three white the colors swap (``WHITE_INSIDE`` then means the
    lone black point is interior).
    """

    CONVEX = "convex"
    NON_CONVEX = "non-convex"
    WHITE_INSIDE = "white-inside"
    CONVEX_MIXED = "convex-mixed"
    BLACK_INSIDE_MIXED_HULL = "black-inside-mixed-hull"
    CONVEX_ALTERNATING = "convex-alternating"
    CONVEX_BLOCKED = "convex-blocked"
    NON_CONVEX_22 = "non-convex-2-2"


# contribution of a quadruple when the drawn graph is K_n (uncolored classes)
# or the complete bipartite graph between the two colors (colored classes)
CLASS_CONTRIBUTION = {
    QuadrupleClass.CONVEX: 2,
    QuadrupleClass.NON_CONVEX: 3,
    QuadrupleClass.WHITE_INSIDE: 0,
    QuadrupleClass.CONVEX_MIXED: 1,
    QuadrupleClass.BLACK_INSIDE_MIXED_HULL: 2,
    QuadrupleClass.CONVEX_ALTERNATING: 0,
    QuadrupleClass.CONVEX_BLOCKED: 2,
    QuadrupleClass.NON_CONVEX_22: 2,
}


def interior_point(table: np.ndarray, ids) -> int | None:
    """The one point of a 4-set inside the triangle of the other three, if any."""
    for x in ids:
        a, b, c = (y for y in ids if y != x)
        s = table[a, b, c]
        if table[a, b, x] == s and table[b, c, x] == s and table[c, a, x] == s:
            return x
    return None


def classify_quadruple(cfg: PointConfig, ids) -> QuadrupleClass:
    ids = tuple(ids)
    if len(set(ids)) != 4:
        raise ValueError("need four distinct point ids")
    cfg.require_generic()
    table = cfg.orientations
    inner = interior_point(table, ids)
    if cfg.colors is None:
        return QuadrupleClass.CONVEX if inner is None else QuadrupleClass.NON_CONVEX
    black = [i for i in ids if cfg.colors[i] is Color.BLACK]
    white = [i for i in ids if cfg.colors[i] is Color.WHITE]
    if not black or not white:
        return QuadrupleClass.CONVEX if inner is None else QuadrupleClass.NON_CONVEX
    if len(black) == 2:
        if inner is not None:
            return QuadrupleClass.NON_CONVEX_22
        w1, w2 = white
        b1, b2 = black
        # in a convex quadrilateral the diagonals are the separated pairs
        alternating = table[w1, w2, b1] != table[w1, w2, b2]
        return QuadrupleClass.CONVEX_ALTERNATING if alternating else QuadrupleClass.CONVEX_BLOCKED
    lone = black[0] if len(black) == 1 else white[0]
    if inner is None:
        return QuadrupleClass.CONVEX_MIXED
    if inner == lone:
        return QuadrupleClass.WHITE_INSIDE
    return QuadrupleClass.BLACK_INSIDE_MIXED_HULL


def segments_cross_count(table: np.ndarray, edges_pts: np.ndarray) -> int:
    """Proper crossings among segments given as point-id pairs (rows of ``edges_pts``)."""
    m = len(edges_pts)
    if m < 2:
        return 0
    i, j = np.triu_indices(m, 1)
    a1, b1 = edges_pts[i, 0], edges_pts[i, 1]
    a2, b2 = edges_pts[j, 0], edges_pts[j, 1]
    # a shared endpoint yields a zero orientation, so such pairs never count
    s1 = table[a1, b1, a2].astype(np.int8) * table[a1, b1, b2]
    s2 = table[a2, b2, a1].astype(np.int8) * table[a2, b2, b1]
    return int(np.count_nonzero((s1 < 0) & (s2 < 0)))


def rectilinear_crossings(d: Drawing, g: Graph) -> int:
    """Pairs of vertex-disjoint edges whose straight segments properly cross."""
    d.check(g)
    pl = d.placement
    pts = np.array([(pl[u], pl[v]) for u, v in g.sorted_edges()], dtype=np.intp).reshape(-1, 2)
    return segments_cross_count(d.config.orientations, pts)


def rectilinear_crossings_naive(d: Drawing, g: Graph) -> int:
    """Oracle: explicit segment intersection test on exact coordinates."""
    from .geom import orientation

    d.check(g)
    pts = d.config.points
    pl = d.placement
    count = 0
    for (a, b), (c, e) in itertools.combinations(g.sorted_edges(), 2):
        if {a, b} & {c, e}:
            continue
        p, q, r, s = (pts[pl[v]] for v in (a, b, c, e))
        if orientation(p, q, r) != orientation(p, q, s) and orientation(r, s, p) != orientation(r, s, q):
            count += 1
    return count


@dataclass(frozen=True)
class StarSplit:
    hub: int
    # leaf vertex -> min(side counts) of the line through hub and that leaf
    splits: dict[int, int]
    bound: int


def star_split_profile(d: Drawing, hub: int) -> StarSplit:
    """Leaf splits around the hub and the resulting lower bound on a star's Orchard count.

    Every hub/three-leaf quadruple with the hub outside the leaf triangle is
    seen from exactly two of its leaves' lines, hence the halving.
    """
    d.config.require_generic()
    table = d.config.orientations
    h = d.placement[hub]
    leaves = [v for v in range(len(d.placement)) if v != hub]
    leaf_count = len(leaves)
    splits = {}
    twice = 0
    for v in leaves:
        p = d.placement[v]
        left = sum(1 for u in leaves if u != v and table[h, p, d.placement[u]] > 0)
        right = leaf_count - 1 - left
        splits[v] = min(left, right)
        twice += comb(left, 2) + comb(right, 2)
    assert twice % 2 == 0
    return StarSplit(hub, splits, twice // 2)


def balanced_split_sizes(leaf_count: int) -> tuple[int, int]:
    rest = leaf_count - 1
    return rest // 2, rest - rest // 2
