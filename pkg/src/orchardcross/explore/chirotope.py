"""Canonical chirotopes (order types up to relabeling and reflection).

A chirotope is stored as one sign per index triple ``i < j < k`` in
lexicographic triple order, encoded as bytes with ``+`` -> 0 and ``-`` -> 1.
The canonical form is the byte-wise minimum over all ``n!`` relabelings and
the reflection.

Because ``+`` sorts first, the minimum has an all-``+`` first row, which pins
label 0 to a hull vertex and the remaining labels to the angular order around
it (counter-clockwise, or clockwise for the mirror image).  Scanning those
``2h`` labelings therefore yields the exact global minimum;
:func:`canonical_signs_bruteforce` checks this against the full scan.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..geom import NonGenericError, PointConfig, convex_hull, find_collinear_triple


@lru_cache(maxsize=None)
def _triple_index(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    triples = np.array(list(itertools.combinations(range(n), 3)), dtype=np.intp).reshape(-1, 3)
    return triples[:, 0], triples[:, 1], triples[:, 2]


def _encode(signs: np.ndarray) -> bytes:
    return (signs < 0).astype(np.uint8).tobytes()


def signs_under(table: np.ndarray, labeling, mirror: bool = False) -> bytes:
    """Encoded signs of the configuration relabeled so new label ``a`` is old point ``labeling[a]``."""
    lab = np.asarray(labeling, dtype=np.intp)
    i, j, k = _triple_index(len(lab))
    signs = table[lab[i], lab[j], lab[k]]
    return _encode(-signs if mirror else signs)


def angular_order(table: np.ndarray, apex: int) -> list[int]:
    """Other points sorted counter-clockwise around the hull vertex ``apex``."""
    row = table[apex]
    # rank[a] = number of b with a counter-clockwise of b
    rank = (row > 0).sum(axis=0)
    others = [a for a in range(table.shape[0]) if a != apex]
    return sorted(others, key=lambda a: rank[a])


def canonical_labelings(table: np.ndarray, hull: list[int]):
    """Yield ``(labeling, mirror)`` for every hull-anchored candidate."""
    for apex in hull:
        order = angular_order(table, apex)
        yield [apex, *order], False
        yield [apex, *reversed(order)], True


@dataclass(frozen=True, order=True)
class Chirotope:
    n: int
    code: bytes

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(-1 if b else 1 for b in self.code)

    def __repr__(self) -> str:
        return f"Chirotope(n={self.n}, {''.join('-' if b else '+' for b in self.code)})"


def canonical_form(table: np.ndarray, coords) -> tuple[bytes, list[int], bool]:
    """Minimal code plus the labeling and mirror flag that produce it.

    Ties between labelings (symmetric configurations) are broken by the
    smallest labeling, so the witness is deterministic.
    """
    n = table.shape[0]
    if n < 3:
        return b"", list(range(n)), False
    best = None
    for labeling, mirror in canonical_labelings(table, convex_hull(coords)):
        key = (signs_under(table, labeling, mirror), labeling, mirror)
        if best is None or key < best:
            best = key
    return best


def chirotope(cfg: PointConfig) -> Chirotope:
    cfg.require_generic()
    code, _, _ = canonical_form(cfg.orientations, cfg.integer_coords)
    return Chirotope(len(cfg), code)


def chirotope_of_coords(coords) -> Chirotope:
    """Fast path for integer coordinate tuples; raises on collinear input."""
    from ..geom import orientation_table

    table = orientation_table(coords)
    triple = find_collinear_triple(table)
    if triple is not None:
        raise NonGenericError(triple)
    code, _, _ = canonical_form(table, coords)
    return Chirotope(len(coords), code)


def canonical_signs_bruteforce(cfg: PointConfig) -> bytes:
    """Minimum over every relabeling and both orientations; O(n! n^3)."""
    cfg.require_generic()
    table = cfg.orientations
    n = len(cfg)
    if n < 3:
        return b""
    return min(
        signs_under(table, perm, mirror)
        for perm in itertools.permutations(range(n))
        for mirror in (False, True)
    )


def relabel(cfg: PointConfig, labeling) -> PointConfig:
    """New configuration whose point ``a`` is ``cfg``'s point ``labeling[a]``."""
    pts = tuple(cfg.points[i] for i in labeling)
    cols = None if cfg.colors is None else tuple(cfg.colors[i] for i in labeling)
    return PointConfig(pts, cols)
