"""Small-coordinate realizations of a labeled order type.

Extension by arrangement cells produces valid but huge integer coordinates.
The order-type database format wants 8-bit coordinates for up to 8 points, so
representatives are pulled back onto a small grid in stages, each checked
exactly against the target orientation table:

1. plain rescale-and-round;
2. log-barrier ascent (maximize the sum of log triangle areas inside the unit
   box), then rescale-and-round at growing precision;
3. random affine images of that centered realization;
4. integer local search minimizing the number of wrong triple signs.

Floats only steer the search; acceptance is always the exact table check.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

import numpy as np

from ..geom import orientation_table


@lru_cache(maxsize=None)
def _triples(n):
    return tuple(np.array(list(itertools.combinations(range(n), 3)), dtype=np.intp).T)


class RealizationNotFound(RuntimeError):
    pass


def _signs(coords, n):
    i, j, k = _triples(n)
    return orientation_table(coords)[i, j, k]


def _round(P, top):
    return tuple((int(round(x * top)), int(round(y * top))) for x, y in P)


def _accept(cand, target, n):
    return len(set(cand)) == n and np.array_equal(_signs(cand, n), target)


def _unit_box(coords):
    P = np.array([[float(x), float(y)] for x, y in coords])
    P -= P.min(axis=0)
    span = P.max()
    return P / span if span > 0 else P


def _barrier(P, target, I, J, K):
    xi, yi, xj, yj, xk, yk = P[I, 0], P[I, 1], P[J, 0], P[J, 1], P[K, 0], P[K, 1]
    d = ((xj - xi) * (yk - yi) - (yj - yi) * (xk - xi)) * target
    if np.any(d <= 0) or np.any(P <= 0) or np.any(P >= 1):
        return -np.inf, None
    value = np.log(d).sum() + 0.5 * (np.log(P).sum() + np.log(1 - P).sum())
    w = target / d
    g = np.zeros_like(P)
    np.add.at(g[:, 0], I, w * (yj - yk))
    np.add.at(g[:, 1], I, w * (xk - xj))
    np.add.at(g[:, 0], J, w * (yk - yi))
    np.add.at(g[:, 1], J, w * (xi - xk))
    np.add.at(g[:, 0], K, w * (yi - yj))
    np.add.at(g[:, 1], K, w * (xj - xi))
    g += 0.5 * (1 / P - 1 / (1 - P))
    return value, g


def centered(coords, iters: int = 5000, bits: int | None = None):
    """Barrier-ascent realization in the unit box (floats), or an early small rounding.

    Returns ``(P, rounded)`` where ``rounded`` is the first exact integer
    realization with at most ``bits`` bits found along the way, else ``None``.
    """
    n = len(coords)
    I, J, K = _triples(n)
    target = _signs(coords, n)
    tf = target.astype(float)
    P = 0.05 + 0.9 * _unit_box(coords)
    value, grad = _barrier(P, tf, I, J, K)
    if grad is None:
        # float rounding already broke a sign; the later stages start from P anyway
        return P, None
    lr = 1e-3
    for it in range(iters):
        while True:
            Q = P + lr * grad
            vq, gq = _barrier(Q, tf, I, J, K)
            if vq > value or lr < 1e-14:
                break
            lr *= 0.5
        if not vq > value:
            break
        P, value, grad = Q, vq, gq
        lr *= 1.5
        if bits is not None and it % 20 == 19:
            for b in range(3, bits + 1):
                cand = _round(P, (1 << b) - 1)
                if _accept(cand, target, n):
                    return P, cand
    return P, None


def _affine_attempts(P, target, top, tries, rng):
    n = len(P)
    for _ in range(tries):
        th = rng.uniform(0, 2 * np.pi)
        s = np.exp(rng.normal(0, 0.3))
        sh = rng.normal(0, 0.3)
        rot = np.array([[np.cos(th), -np.sin(th)], [np.sin(th), np.cos(th)]])
        Q = P @ (rot @ np.array([[s, sh], [0, 1 / s]])).T
        Q -= Q.min(axis=0)
        Q /= Q.max()
        cand = _round(Q, top)
        if _accept(cand, target, n):
            return cand
    return None


def _repair(P, target, top, iters, seed):
    n = len(P)
    I, J, K = _triples(n)
    rnd = random.Random(seed)
    Q = P - P.min(axis=0)
    Q = Q / Q.max() * top
    pts = [[int(round(x)), int(round(y))] for x, y in Q]

    def wrong(pts):
        return int(np.count_nonzero(orientation_table([tuple(p) for p in pts])[I, J, K] != target))

    bad = wrong(pts)
    for _ in range(iters):
        if bad == 0 and len({tuple(p) for p in pts}) == n:
            return tuple(tuple(p) for p in pts)
        i = rnd.randrange(n)
        old = pts[i][:]
        pts[i] = [min(top, max(0, old[0] + rnd.randint(-3, 3))), min(top, max(0, old[1] + rnd.randint(-3, 3)))]
        nb = wrong(pts)
        if nb <= bad:
            bad = nb
        else:
            pts[i] = old
    return None


def small_realization(coords, bits: int = 8, seed: int = 0, effort: int = 20):
    """Integer coordinates in ``[0, 2**bits)`` with the same labeled orientations.

    Raises :class:`RealizationNotFound` when every stage fails.
    """
    n = len(coords)
    target = _signs(coords, n)
    top = (1 << bits) - 1
    base = _unit_box(coords)
    for b in range(3, bits + 1):
        cand = _round(base, (1 << b) - 1)
        if _accept(cand, target, n):
            return cand
    P, found = centered(coords, bits=bits)
    if found is not None:
        return found
    rng = np.random.default_rng(seed)
    cand = _affine_attempts(P, target, top, 200 * effort, rng)
    if cand is not None:
        return cand
    for s in range(effort):
        cand = _repair(P, target, top, 20000, seed * 1000 + s)
        if cand is not None:
            return cand
    raise RealizationNotFound(f"no {bits}-bit realization found for {coords!r}")
