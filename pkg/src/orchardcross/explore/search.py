"""Minimum / maximum Orchard counts over every drawing of a small graph.

A drawing is an order-type class plus a placement of the vertices on its
points.  Classes come from a *source*: the grid enumerator, an order-type
database file, or seeded random samples.  Placements are reduced by the
symmetries of recognized families (complete, complete bipartite, wheel,
cycle plus isolated vertices); any other graph gets all ``n!`` placements
with a hard cap of seven vertices.

Every class is relabeled to its canonical labeling before evaluation, so the
witness tie-break (smallest chirotope, then smallest placement) does not
depend on which realization a source happened to return.
"""

from __future__ import annotations

import enum
import itertools
import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from pathlib import Path

import numpy as np

from ..constructions import RECTILINEAR_CROSSING_KN, ocn_star
from ..geom import Color, PointConfig, find_collinear_triple, orientation_table, separation_matrix
from ..graphs import Graph, union_disjoint_edges
from ..orchard import Drawing, drawing_crossing_number
from .chirotope import Chirotope, canonical_form
from .db import default_db_path, db_filename, read_order_type_coords
from .enumeration import (
    KNOWN_ORDER_TYPE_COUNTS,
    IncompleteEnumeration,
    canonical_coords,
    enumerate_order_types_grid,
)

log = logging.getLogger(__name__)

MAX_GENERAL_VERTICES = 7
# below this many classes a process pool costs more than it saves
PARALLEL_MIN_CLASSES = 512
RANDOM_SPAN = 1 << 20


class Mode(enum.Enum):
    MIN = "min"
    MAX = "max"


class LowerBoundViolation(AssertionError):
    """A drawing scored below a proven lower bound: the evaluator is broken."""


class PlacementLimitExceeded(ValueError):
    pass


# -- sources ------------------------------------------------------------------


@dataclass(frozen=True)
class ClassSet:
    n: int
    # (chirotope, canonically labeled integer coordinates), sorted by chirotope
    classes: tuple[tuple[Chirotope, tuple[tuple[int, int], ...]], ...]
    exhaustive: bool
    description: str

    def __len__(self):
        return len(self.classes)

    def configs(self):
        for chi, coords in self.classes:
            yield chi, PointConfig.from_coords(coords)


def _canonical(coords):
    table = orientation_table(coords)
    code, labeling, mirror = canonical_form(table, coords)
    return Chirotope(len(coords), code), canonical_coords(coords, labeling, mirror)


def _collect(n, stream, description, claim_complete):
    found = {}
    for coords in stream:
        chi, canon = _canonical(coords)
        found.setdefault(chi, canon)
    classes = tuple(sorted(found.items()))
    exhaustive = claim_complete and len(classes) == KNOWN_ORDER_TYPE_COUNTS.get(n, -1)
    return ClassSet(n, classes, exhaustive, description)


@dataclass(frozen=True)
class GridSource:
    """Order types realized on the ``grid_size x grid_size`` grid (certified against known counts)."""

    grid_size: int

    def classes(self, n: int) -> ClassSet:
        return _grid_classes(n, self.grid_size)


@lru_cache(maxsize=None)
def _grid_classes(n, grid_size):
    if n < 3:
        return ClassSet(n, _tiny(n), True, f"grid {grid_size}")
    cat = enumerate_order_types_grid(n, max(grid_size, n), certify=False)
    classes = tuple(sorted(cat.reps.items()))
    return ClassSet(n, classes, cat.complete, f"grid {grid_size}")


@dataclass(frozen=True)
class DbSource:
    """Order-type database: a file, or a directory holding ``otypesNN.b08``-style files."""

    path: str | None = None

    def resolve(self, n: int) -> Path:
        if self.path is None:
            return default_db_path(n)
        p = Path(self.path)
        return p / db_filename(n) if p.is_dir() else p

    def classes(self, n: int) -> ClassSet:
        if n < 3:
            return ClassSet(n, _tiny(n), True, "db")
        return _db_classes(n, str(self.resolve(n)))


@lru_cache(maxsize=None)
def _db_classes(n, path):
    return _collect(n, read_order_type_coords(path, n), f"db {path}", True)


@dataclass(frozen=True)
class RandomSource:
    """``count`` seeded samples on the ``2^20`` grid; never exhaustive."""

    count: int
    seed: int

    def classes(self, n: int) -> ClassSet:
        if n < 3:
            return ClassSet(n, _tiny(n), False, "random")
        return _collect(n, random_configs(n, self.count, self.seed), f"random {self.count} seed {self.seed}", False)


def _tiny(n):
    return ((Chirotope(n, b""), tuple((i, i * i) for i in range(n))),)


def random_configs(n: int, count: int, seed: int, span: int = RANDOM_SPAN):
    """Uniform integer points in ``[0, span)^2``, rejecting non-generic samples."""
    rng = random.Random(seed)
    made = 0
    while made < count:
        coords = tuple((rng.randrange(span), rng.randrange(span)) for _ in range(n))
        if len(set(coords)) < n or find_collinear_triple(orientation_table(coords)) is not None:
            continue
        made += 1
        yield coords


# -- placements -------------------------------------------------------------------


def _adjacency(g):
    adj = [set() for _ in range(g.vertex_count)]
    for u, v in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def _cycle_walk(adj, vertices):
    """Vertices of a single cycle in walk order, or ``None`` if they do not form one."""
    vertices = sorted(vertices)
    if len(vertices) < 3 or any(len(adj[v] & set(vertices)) != 2 for v in vertices):
        return None
    walk = [vertices[0]]
    prev = None
    while True:
        cur = walk[-1]
        nxt = min(w for w in adj[cur] if w in vertices and w != prev)
        if nxt == walk[0]:
            break
        prev = cur
        walk.append(nxt)
    return walk if len(walk) == len(vertices) else None


def _two_coloring(adj, n):
    color = [-1] * n
    for s in range(n):
        if color[s] >= 0:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    stack.append(w)
                elif color[w] == color[u]:
                    return None
    return color


def _cyclic_orders(points):
    """Cyclic sequences of ``points`` up to rotation and reflection."""
    first, rest = points[0], points[1:]
    for perm in itertools.permutations(rest):
        if len(perm) < 2 or perm[0] < perm[-1]:
            yield (first, *perm)


@dataclass(frozen=True)
class PlacementPlan:
    family: str
    placements: np.ndarray  # rows: placement[v] = point id of vertex v
    # complete bipartite only: vertex ids of the two blocks
    blocks: tuple[tuple[int, ...], tuple[int, ...]] | None = None


def placement_plan(g: Graph) -> PlacementPlan:
    """Placements that cover every drawing of ``g`` up to its automorphisms."""
    n = g.vertex_count
    adj = _adjacency(g)
    m = len(g.edges)

    def plan(family, rows, blocks=None):
        arr = np.array(sorted(set(map(tuple, rows))), dtype=np.intp).reshape(-1, n)
        return PlacementPlan(family, arr, blocks)

    if m == 0 or m == comb(n, 2):
        return plan("empty" if m == 0 else "complete", [tuple(range(n))])

    deg = [len(a) for a in adj]
    color = _two_coloring(adj, n)
    if color is not None and 0 not in deg:
        left = tuple(v for v in range(n) if color[v] == color[0])
        right = tuple(v for v in range(n) if color[v] != color[0])
        if m == len(left) * len(right):
            rows = []
            for chosen in itertools.combinations(range(n), len(left)):
                rest = [p for p in range(n) if p not in chosen]
                row = [0] * n
                for v, p in zip(left, chosen):
                    row[v] = p
                for v, p in zip(right, rest):
                    row[v] = p
                rows.append(row)
            return plan("complete-bipartite", rows, (left, right))

    hubs = [v for v in range(n) if deg[v] == n - 1]
    if n >= 5 and len(hubs) == 1:
        hub = hubs[0]
        rim = _cycle_walk(adj, [v for v in range(n) if v != hub])
        if rim is not None and m == 2 * (n - 1):
            rows = []
            for h in range(n):
                others = [p for p in range(n) if p != h]
                for order in _cyclic_orders(others):
                    row = [0] * n
                    row[hub] = h
                    for v, p in zip(rim, order):
                        row[v] = p
                    rows.append(row)
            return plan("wheel", rows)

    isolated = [v for v in range(n) if deg[v] == 0]
    ring = _cycle_walk(adj, [v for v in range(n) if deg[v]])
    if ring is not None and m == len(ring):
        rows = []
        for chosen in itertools.combinations(range(n), len(isolated)):
            others = [p for p in range(n) if p not in chosen]
            for order in _cyclic_orders(others):
                row = [0] * n
                for v, p in zip(isolated, chosen):
                    row[v] = p
                for v, p in zip(ring, order):
                    row[v] = p
                rows.append(row)
        return plan("cycle", rows)

    return plan("general", all_placements(n))


def all_placements(n: int) -> np.ndarray:
    if n > MAX_GENERAL_VERTICES:
        raise PlacementLimitExceeded(
            f"{n} vertices without a recognized family would need {n}! placements (limit {MAX_GENERAL_VERTICES})"
        )
    return np.array(list(itertools.permutations(range(n))), dtype=np.intp).reshape(-1, n)


def lower_bound(g: Graph, plan: PlacementPlan) -> int | None:
    """Proven lower bound on every drawing of a recognized family, else ``None``."""
    n = g.vertex_count
    if plan.family == "complete":
        return 2 * comb(n, 4)
    if plan.family == "complete-bipartite" and plan.blocks and 1 in map(len, plan.blocks):
        return ocn_star(n - 1)
    return None


# -- evaluation -----------------------------------------------------------------


def _edge_arrays(g):
    edges = g.sorted_edges()
    us = np.array([u for u, _ in edges], dtype=np.intp)
    vs = np.array([v for _, v in edges], dtype=np.intp)
    return us, vs


def _disjoint_edge_pairs(g):
    edges = g.sorted_edges()
    pairs = [(e, f) for e, f in itertools.combinations(edges, 2) if not set(e) & set(f)]
    return np.array([[*e, *f] for e, f in pairs], dtype=np.intp).reshape(-1, 4)


def orchard_scores(table: np.ndarray, placements: np.ndarray, edges) -> np.ndarray:
    """Orchard count of every placement row."""
    us, vs = edges
    if len(us) == 0:
        return np.zeros(len(placements), dtype=np.int64)
    S = separation_matrix(table)
    return S[placements[:, us], placements[:, vs]].sum(axis=1, dtype=np.int64)


def crossing_scores(table: np.ndarray, placements: np.ndarray, pairs: np.ndarray) -> np.ndarray:
    """Proper crossings of vertex-disjoint edge pairs for every placement row."""
    if len(pairs) == 0:
        return np.zeros(len(placements), dtype=np.int64)
    a1, b1, a2, b2 = (placements[:, pairs[:, k]] for k in range(4))
    t = table.astype(np.int8)
    s1 = t[a1, b1, a2] * t[a1, b1, b2]
    s2 = t[a2, b2, a1] * t[a2, b2, b1]
    return ((s1 < 0) & (s2 < 0)).sum(axis=1, dtype=np.int64)


def _best_row(scores, placements, mode):
    target = scores.min() if mode is Mode.MIN else scores.max()
    rows = placements[scores == target]
    # lexicographically smallest placement among the ties
    order = np.lexsort(rows.T[::-1])
    return int(target), tuple(int(x) for x in rows[order[0]])


def _evaluate_chunk(chunk, placements, spec, mode, measure):
    out = []
    for chi, coords in chunk:
        table = orientation_table(coords)
        if measure == "orchard":
            scores = orchard_scores(table, placements, spec)
        else:
            scores = crossing_scores(table, placements, spec)
        value, row = _best_row(scores, placements, mode)
        out.append((chi, coords, value, row, int(scores.min())))
    return out


@dataclass
class ClassOutcome:
    chirotope: Chirotope
    value: int
    placement: tuple[int, ...]
    min_value: int


def evaluate_classes(
    g: Graph, mode: Mode, class_set: ClassSet, plan: PlacementPlan | None = None, measure: str = "orchard", jobs: int = 1
) -> list[tuple[ClassOutcome, tuple[tuple[int, int], ...]]]:
    """Per-class extremum (value, smallest extremal placement), in chirotope order."""
    plan = plan or placement_plan(g)
    spec = _edge_arrays(g) if measure == "orchard" else _disjoint_edge_pairs(g)
    items = list(class_set.classes)
    if jobs > 1 and len(items) >= PARALLEL_MIN_CLASSES:
        size = -(-len(items) // (4 * jobs))
        chunks = [items[i : i + size] for i in range(0, len(items), size)]
        with ProcessPoolExecutor(jobs) as pool:
            parts = pool.map(
                _evaluate_chunk,
                chunks,
                itertools.repeat(plan.placements),
                itertools.repeat(spec),
                itertools.repeat(mode),
                itertools.repeat(measure),
            )
            raw = [r for part in parts for r in part]
    else:
        raw = _evaluate_chunk(items, plan.placements, spec, mode, measure)
    return [(ClassOutcome(chi, value, row, lo), coords) for chi, coords, value, row, lo in raw]


@dataclass
class SearchResult:
    mode: Mode
    value: int
    witness: Drawing
    classes_examined: int
    exhaustive: bool
    extremal_classes: list[Chirotope] = field(default_factory=list)
    family: str = ""

    @property
    def witness_chirotope(self) -> Chirotope:
        return self.extremal_classes[0]


def _witness_config(coords, plan, placement):
    cfg = PointConfig.from_coords(coords)
    if plan.family == "complete-bipartite" and plan.blocks:
        colors = [Color.WHITE] * len(coords)
        for v in plan.blocks[0]:
            colors[placement[v]] = Color.BLACK
        cfg = cfg.with_colors(tuple(colors))
    return cfg


def _resolve_classes(n, source, require_exhaustive):
    class_set = source.classes(n)
    if require_exhaustive and not class_set.exhaustive:
        raise IncompleteEnumeration(n, len(class_set), KNOWN_ORDER_TYPE_COUNTS.get(n))
    if not class_set.classes:
        raise IncompleteEnumeration(n, 0, KNOWN_ORDER_TYPE_COUNTS.get(n))
    return class_set


def search_ocn(g: Graph, mode: Mode | str, source, require_exhaustive: bool = False, jobs: int = 1) -> SearchResult:
    """Extremal Orchard count of ``g`` over the source's classes and all inequivalent placements."""
    mode = Mode(mode)
    n = g.vertex_count
    class_set = _resolve_classes(n, source, require_exhaustive)
    plan = placement_plan(g)
    outcomes = evaluate_classes(g, mode, class_set, plan, "orchard", jobs)

    bound = lower_bound(g, plan)
    if bound is not None:
        worst = min(o.min_value for o, _ in outcomes)
        if worst < bound:
            raise LowerBoundViolation(f"{g!r}: a drawing scored {worst} < proven bound {bound}")

    pick = min if mode is Mode.MIN else max
    best = pick(o.value for o, _ in outcomes)
    extremal = [(o, c) for o, c in outcomes if o.value == best]
    top, coords = min(extremal, key=lambda oc: (oc[0].chirotope, oc[0].placement))
    witness = Drawing(_witness_config(coords, plan, top.placement), top.placement)
    # the witness is re-scored by the reference evaluator
    if drawing_crossing_number(witness, g).total != best:
        raise AssertionError("witness does not reproduce the searched value")
    return SearchResult(
        mode, best, witness, len(class_set), class_set.exhaustive, [o.chirotope for o, _ in extremal], plan.family
    )


def search_rectilinear(g: Graph, source, require_exhaustive: bool = False, jobs: int = 1) -> SearchResult:
    """Minimum number of proper edge crossings over the source's straight-line drawings."""
    n = g.vertex_count
    class_set = _resolve_classes(n, source, require_exhaustive)
    plan = placement_plan(g)
    outcomes = evaluate_classes(g, Mode.MIN, class_set, plan, "crossings", jobs)
    best = min(o.value for o, _ in outcomes)
    extremal = [(o, c) for o, c in outcomes if o.value == best]
    top, coords = extremal[0]
    witness = Drawing(PointConfig.from_coords(coords), top.placement)
    return SearchResult(
        Mode.MIN, best, witness, len(class_set), class_set.exhaustive, [o.chirotope for o, _ in extremal], plan.family
    )


# -- reports ------------------------------------------------------------------------


@dataclass
class CoincidenceReport:
    n: int
    mocn: int
    crossing_min: int
    maximizers: list[Chirotope]
    minimizers: list[Chirotope]
    exhaustive: bool
    expected_crossing_min: int | None

    @property
    def same_classes(self) -> bool:
        return self.maximizers == self.minimizers

    @property
    def identity_holds(self) -> bool:
        ok = self.mocn == 3 * comb(self.n, 4) - self.crossing_min
        if self.expected_crossing_min is not None:
            ok = ok and self.crossing_min == self.expected_crossing_min
        return ok

    @property
    def ok(self) -> bool:
        return self.same_classes and self.identity_holds


def mocn_cr_coincidence(n: int, source, require_exhaustive: bool = False, jobs: int = 1) -> CoincidenceReport:
    """Compare the classes maximizing the Orchard count of ``K_n`` with those minimizing crossings."""
    from ..graphs import complete

    g = complete(n)
    top = search_ocn(g, Mode.MAX, source, require_exhaustive, jobs)
    low = search_rectilinear(g, source, require_exhaustive, jobs)
    return CoincidenceReport(
        n,
        top.value,
        low.value,
        sorted(top.extremal_classes),
        sorted(low.extremal_classes),
        top.exhaustive and low.exhaustive,
        RECTILINEAR_CROSSING_KN.get(n),
    )


@dataclass
class UnionReport:
    ocn_g: int
    ocn_h: int
    ocn_union: int
    # a drawing minimizing G and H at once, if one exists among the searched drawings
    common_minimizer: Drawing | None
    exhaustive: bool

    @property
    def additive(self) -> bool:
        return self.ocn_union == self.ocn_g + self.ocn_h


def union_additivity(g: Graph, h: Graph, source, require_exhaustive: bool = False) -> UnionReport:
    """Searched optima of ``G``, ``H`` and ``G u H`` on one vertex set.

    Whenever some drawing minimizes both graphs, that drawing must also be
    optimal for the union with the two optima adding up; this is asserted.
    All placements are scanned, so the vertex count is capped.
    """
    n = g.vertex_count
    union = union_disjoint_edges(g, h)
    class_set = _resolve_classes(n, source, require_exhaustive)
    placements = all_placements(n)
    eg, eh = _edge_arrays(g), _edge_arrays(h)
    per_class = []
    for chi, coords in class_set.classes:
        table = orientation_table(coords)
        per_class.append((coords, orchard_scores(table, placements, eg), orchard_scores(table, placements, eh)))
    best_g = min(int(sg.min()) for _, sg, _ in per_class)
    best_h = min(int(sh.min()) for _, _, sh in per_class)
    best_union = min(int((sg + sh).min()) for _, sg, sh in per_class)

    common = None
    for coords, sg, sh in per_class:
        hit = np.flatnonzero((sg == best_g) & (sh == best_h))
        if len(hit):
            common = Drawing(PointConfig.from_coords(coords), tuple(int(x) for x in placements[hit[0]]))
            break
    report = UnionReport(best_g, best_h, best_union, common, class_set.exhaustive)
    if common is not None:
        assert report.additive, "a common minimizer exists but the optima do not add up"
        assert drawing_crossing_number(common, union).total == best_union
    return report
