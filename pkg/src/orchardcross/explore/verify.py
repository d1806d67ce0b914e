"""Cross-check closed forms, constructions and exhaustive search over a parameter range.

Mismatches are report content, never exceptions: every cell records the
values that were available and whether they agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .. import constructions as C
from ..graphs import complete, complete_bipartite, wheel
from ..orchard import Drawing, drawing_crossing_number
from .search import DbSource, Mode, mocn_cr_coincidence, search_ocn

# OCN(K_{n,m}) for small unbalanced (and a few balanced) blocks, n <= m
TABLE1 = {
    (2, 2): 0,
    (2, 3): 4,
    (2, 4): 12,
    (2, 5): 26,
    (2, 6): 48,
    (3, 3): 12,
    (3, 4): 32,
    (3, 5): 63,
    (4, 4): 64,
}


@dataclass
class VerifyRange:
    complete: range = range(4, 13)
    star: range = range(3, 13)
    wheel: range = range(3, 13)
    knn: range = range(1, 6)
    two_arcs_max: int = 6
    table1: bool = True
    coincidence: bool = True
    # exhaustive search is attempted only up to this many points
    max_points: int = 7
    source: object = field(default_factory=DbSource)
    jobs: int = 1


@dataclass
class Cell:
    family: str
    params: tuple
    construction: int | None = None
    closed_form: int | None = None
    search: int | None = None
    exhaustive: bool | None = None
    note: str = ""
    failed: bool = False

    @property
    def values(self):
        return [v for v in (self.construction, self.closed_form, self.search) if v is not None]

    @property
    def ok(self) -> bool:
        vals = self.values
        return not self.failed and bool(vals) and len(set(vals)) == 1 and self.exhaustive is not False

    def line(self) -> str:
        def show(v):
            return "-" if v is None else str(v)

        params = ",".join(map(str, self.params))
        status = "ok" if self.ok else "MISMATCH"
        extra = f"  {self.note}" if self.note else ""
        return (
            f"{status:8} {self.family}({params}) construction={show(self.construction)} "
            f"closed={show(self.closed_form)} search={show(self.search)}{extra}"
        )


@dataclass
class VerifyReport:
    cells: list[Cell]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.cells)

    @property
    def failures(self) -> list[Cell]:
        return [c for c in self.cells if not c.ok]

    def text(self) -> str:
        lines = [c.line() for c in self.cells]
        lines.append(f"{len(self.cells) - len(self.failures)}/{len(self.cells)} checks passed")
        return "\n".join(lines)


def _count(d: Drawing, g) -> int:
    return drawing_crossing_number(d, g).total


def _search(cell, g, mode, rs):
    if g.vertex_count > rs.max_points:
        return
    res = search_ocn(g, mode, rs.source, jobs=rs.jobs)
    cell.search = res.value
    cell.exhaustive = res.exhaustive
    if not res.exhaustive:
        cell.note = f"search over {res.classes_examined} classes is not exhaustive"


def verify_formulas(rs: VerifyRange | None = None) -> VerifyReport:
    rs = rs or VerifyRange()
    cells = []

    for n in rs.complete:
        g = complete(n)
        cell = Cell("OCN K_n", (n,), _count(Drawing.identity(C.convex_position(n)), g), C.ocn_complete(n))
        _search(cell, g, Mode.MIN, rs)
        cells.append(cell)

    for n in rs.star:
        d, g = C.star_drawing(n)
        cell = Cell("OCN K_n,1", (n,), _count(d, g), C.ocn_star(n))
        _search(cell, g, Mode.MIN, rs)
        cells.append(cell)

    for n in rs.wheel:
        d, g = C.wheel_polygon(n)
        cell = Cell("OCN W_n,1", (n,), _count(d, g), C.ocn_wheel(n))
        _search(cell, wheel(n), Mode.MIN, rs)
        cells.append(cell)

    for n in rs.knn:
        d, g = C.bipartite_drawing(C.alternating_polygon(n), n, n)
        cell = Cell("OCN K_n,n", (n,), _count(d, g), C.ocn_knn(n))
        _search(cell, g, Mode.MIN, rs)
        cells.append(cell)

    if rs.table1:
        for (n, m), value in sorted(TABLE1.items()):
            if n + m > rs.max_points:
                continue
            g, _ = complete_bipartite(n, m)
            cell = Cell("Table1 K_n,m", (n, m), closed_form=value)
            _search(cell, g, Mode.MIN, rs)
            cells.append(cell)

    for n in range(1, rs.two_arcs_max + 1):
        for m in range(1, rs.two_arcs_max + 1):
            d, g = C.bipartite_drawing(C.two_arcs(n, m), n, m)
            cell = Cell("MOCN K_n,m", (n, m), _count(d, g), C.mocn_bipartite(n, m))
            _search(cell, g, Mode.MAX, rs)
            cells.append(cell)

    if rs.coincidence:
        for n in range(4, rs.max_points + 1):
            rep = mocn_cr_coincidence(n, rs.source, jobs=rs.jobs)
            cell = Cell("MOCN K_n", (n,), closed_form=C.mocn_complete(n), search=rep.mocn, exhaustive=rep.exhaustive)
            if not rep.same_classes:
                cell.failed = True
                cell.note = "maximizing classes differ from crossing-minimizing classes"
            elif not rep.identity_holds:
                cell.failed = True
                cell.note = f"crossing minimum {rep.crossing_min} vs 3C(n,4) - MOCN = {3 * comb(n, 4) - rep.mocn}"
            cells.append(cell)

    return VerifyReport(cells)
