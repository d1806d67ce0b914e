"""Simple undirected graphs and the families used throughout the package."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

Edge = tuple[int, int]


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: frozenset[Edge]
    name: str = ""

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge ({u}, {v}) out of range for {self.vertex_count} vertices")
            norm.add(_edge(u, v))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge], name: str = "") -> "Graph":
        edges = list(edges)
        seen = set()
        for u, v in edges:
            e = _edge(u, v)
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
        return cls(n, frozenset(seen), name)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def degree(self, v: int) -> int:
        return sum(v in e for e in self.edges)

    def __repr__(self) -> str:
        label = self.name or "Graph"
        return f"<{label}: {self.vertex_count} vertices, {len(self.edges)} edges>"


@dataclass(frozen=True)
class Bipartition:
    left: frozenset[int]
    right: frozenset[int]

    def __post_init__(self):
        if self.left & self.right:
            raise ValueError("bipartition blocks overlap")


def empty(n: int) -> Graph:
    return Graph(n, frozenset(), f"E{n}")


def complete(n: int) -> Graph:
    if n < 0:
        raise ValueError("n must be non-negative")
    return Graph(n, frozenset(itertools.combinations(range(n), 2)), f"K{n}")


def complete_bipartite(n: int, m: int) -> tuple[Graph, Bipartition]:
    """``K_{n,m}`` with the left block on ids ``0..n-1``."""
    if n < 0 or m < 0:
        raise ValueError("block sizes must be non-negative")
    left, right = range(n), range(n, n + m)
    g = Graph(n + m, frozenset((u, v) for u in left for v in right), f"K{n},{m}")
    return g, Bipartition(frozenset(left), frozenset(right))


def star(n: int) -> tuple[Graph, Bipartition]:
    """``K_{n,1}``: leaves ``0..n-1``, hub ``n``."""
    return complete_bipartite(n, 1)


def cycle(n: int, vertex_count: int | None = None) -> Graph:
    """Cycle through ``0..n-1`` in index order; extra ids up to ``vertex_count`` stay isolated."""
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    total = n if vertex_count is None else vertex_count
    if total < n:
        raise ValueError("vertex_count smaller than the cycle")
    name = f"C{n}" if total == n else f"C{n}+{total - n}"
    return Graph(total, frozenset(_edge(i, (i + 1) % n) for i in range(n)), name)


def wheel(n: int) -> Graph:
    """``W_{n,1}``: rim cycle on ``0..n-1`` plus hub ``n`` joined to every rim vertex."""
    if n < 3:
        raise ValueError("a wheel needs a rim of at least 3 vertices")
    rim = cycle(n, n + 1)
    spokes, _ = star(n)
    g = union_disjoint_edges(rim, spokes)
    return Graph(g.vertex_count, g.edges, f"W{n}")


def union_disjoint_edges(g: Graph, h: Graph) -> Graph:
    if g.vertex_count != h.vertex_count:
        raise ValueError("graphs must share the vertex set")
    common = g.edges & h.edges
    if common:
        raise ValueError(f"edge sets intersect: {sorted(common)}")
    return Graph(g.vertex_count, g.edges | h.edges)


def permute(g: Graph, perm) -> Graph:
    """Rename vertex ``v`` to ``perm[v]``."""
    return Graph(g.vertex_count, frozenset(_edge(perm[u], perm[v]) for u, v in g.edges), g.name)


_SPEC = re.compile(r"^(?:K(\d+)(?:,(\d+))?|C(\d+)|W(\d+))$")


def parse_graph_spec(spec: str) -> Graph:
    """``K<n>``, ``K<n>,<m>``, ``C<n>``, ``W<n>`` or ``@path`` to an edge-list file."""
    spec = spec.strip()
    if spec.startswith("@"):
        return read_graph(spec[1:])
    m = _SPEC.match(spec.replace(" ", ""))
    if not m:
        raise ValueError(f"unrecognized graph spec {spec!r}")
    kn, km, cn, wn = m.groups()
    if kn is not None and km is not None:
        return complete_bipartite(int(kn), int(km))[0]
    if kn is not None:
        return complete(int(kn))
    if cn is not None:
        return cycle(int(cn))
    return wheel(int(wn))


class GraphFormatError(ValueError):
    pass


def loads_graph(text: str) -> Graph:
    """Parse ``n <count>`` followed by ``e <u> <v>`` lines; ``#`` starts a comment line."""
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            if parts[0] == "n" and len(parts) == 2 and n is None:
                n = int(parts[1])
            elif parts[0] == "e" and len(parts) == 3 and n is not None:
                edges.append((int(parts[1]), int(parts[2])))
            else:
                raise ValueError
        except ValueError:
            raise GraphFormatError(f"line {lineno}: cannot parse {raw!r}") from None
    if n is None:
        raise GraphFormatError("missing 'n <vertex_count>' header")
    try:
        return Graph.from_edges(n, edges)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def dumps_graph(g: Graph) -> str:
    lines = [f"n {g.vertex_count}"] + [f"e {u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph:
    return loads_graph(Path(path).read_text())


def write_graph(g: Graph, path) -> None:
    Path(path).write_text(dumps_graph(g))
