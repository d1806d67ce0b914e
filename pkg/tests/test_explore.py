import random
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from orchardcross import constructions as C
from orchardcross.geom import NonGenericError, PointConfig, affine_image
from orchardcross.graphs import complete, complete_bipartite, cycle, star, wheel, Graph
from orchardcross.orchard import orchard_count, rectilinear_crossings
from orchardcross.explore.chirotope import canonical_signs_bruteforce, chirotope, relabel
from orchardcross.explore.db import (
    NonGenericRecord,
    TruncatedFile,
    default_db_path,
    read_order_type_db,
    record_size,
    write_order_type_db,
)
from orchardcross.explore.enumeration import (
    KNOWN_ORDER_TYPE_COUNTS,
    IncompleteEnumeration,
    enumerate_order_types_extension,
    enumerate_order_types_grid,
)
from orchardcross.explore.realize import small_realization
from orchardcross.explore.search import (
    DbSource,
    GridSource,
    LowerBoundViolation,
    Mode,
    PlacementLimitExceeded,
    RandomSource,
    all_placements,
    mocn_cr_coincidence,
    placement_plan,
    search_ocn,
    search_rectilinear,
    union_additivity,
)
from orchardcross.explore.verify import VerifyRange, verify_formulas

from conftest import SQUARE, TRIANGLE_PLUS, random_generic_config


# -- chirotopes ----------------------------------------------------------------


def test_triangles_share_a_chirotope():
    a = PointConfig.from_coords([(0, 0), (1, 0), (0, 1)])
    b = PointConfig.from_coords([(5, 5), (-3, 2), (7, -11)])
    assert chirotope(a) == chirotope(b)


def test_four_point_types_differ():
    assert chirotope(SQUARE) != chirotope(TRIANGLE_PLUS)


def test_mirror_pentagon():
    cfg = PointConfig.from_coords([(0, 0), (4, 0), (5, 3), (2, 5), (-1, 3)])
    mirrored = affine_image(cfg, ((-1, 0), (0, 1)))
    assert chirotope(cfg) == chirotope(mirrored)


def test_collinear_has_no_chirotope():
    with pytest.raises(NonGenericError):
        chirotope(PointConfig.from_coords([(0, 0), (1, 1), (2, 2)]))


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 7), st.integers(0, 2**32 - 1), st.booleans())
def test_chirotope_relabel_and_reflect_invariant(n, seed, mirror):
    rng = random.Random(seed)
    cfg = random_generic_config(rng, n, span=200)
    perm = list(range(n))
    rng.shuffle(perm)
    other = relabel(cfg, perm)
    if mirror:
        other = affine_image(other, ((-1, 0), (0, 1)))
    assert chirotope(cfg) == chirotope(other)


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_fast_canonical_form_matches_bruteforce(rng, n):
    for _ in range(4 if n < 7 else 2):
        cfg = random_generic_config(rng, n, span=100)
        assert chirotope(cfg).code == canonical_signs_bruteforce(cfg)


def test_canonical_form_idempotent(rng):
    from orchardcross.explore.search import _canonical

    coords = random_generic_config(rng, 6, span=100).integer_coords
    chi, canon = _canonical(coords)
    assert _canonical(canon) == (chi, canon)


# -- enumeration ---------------------------------------------------------------


@pytest.mark.parametrize("n,grid", [(3, 3), (4, 4), (5, 5), (6, 8)])
def test_grid_enumeration_counts(n, grid):
    cat = enumerate_order_types_grid(n, grid)
    assert len(cat) == KNOWN_ORDER_TYPE_COUNTS[n]


def test_grid_enumeration_reports_shortfall():
    with pytest.raises(IncompleteEnumeration) as err:
        enumerate_order_types_grid(6, 6)
    assert err.value.found < err.value.expected == 16


def test_grid_rejects_tiny_grid():
    with pytest.raises(ValueError):
        enumerate_order_types_grid(5, 4)


def test_extension_enumeration_small():
    for n in (4, 5, 6):
        assert len(enumerate_order_types_extension(n)) == KNOWN_ORDER_TYPE_COUNTS[n]


def test_grid_and_extension_agree():
    grid = enumerate_order_types_grid(6, 8)
    ext = enumerate_order_types_extension(6)
    assert set(grid.reps) == set(ext.reps)


def test_small_realization_keeps_labeled_order_type(rng):
    from orchardcross.geom import orientation_table

    coords = random_generic_config(rng, 7, span=1 << 40).integer_coords
    small = small_realization(coords, bits=8)
    assert max(max(p) for p in small) < 256
    assert np.array_equal(orientation_table(coords), orientation_table(small))


# -- database ------------------------------------------------------------------


def test_db_roundtrip_n4(tmp_path):
    cat = enumerate_order_types_grid(4, 4)
    path = tmp_path / "otypes04.b08"
    write_order_type_db(path, [cat.reps[k] for k in sorted(cat.reps)], 4)
    assert path.stat().st_size == 2 * record_size(4) == 16
    configs = list(read_order_type_db(path, 4))
    assert len(configs) == 2
    assert len({chirotope(c) for c in configs}) == 2


def test_db_empty_file(tmp_path):
    path = tmp_path / "empty.b08"
    path.write_bytes(b"")
    assert list(read_order_type_db(path, 5)) == []


def test_db_truncated(tmp_path):
    path = tmp_path / "bad.b08"
    path.write_bytes(bytes(7))
    with pytest.raises(TruncatedFile):
        list(read_order_type_db(path, 4))


def test_db_non_generic_record(tmp_path):
    path = tmp_path / "bad.b08"
    write_order_type_db(path, [((0, 0), (5, 0), (0, 5)), ((0, 0), (1, 1), (2, 2))], 3)
    it = read_order_type_db(path, 3)
    next(it)
    with pytest.raises(NonGenericRecord) as err:
        next(it)
    assert err.value.index == 1


def test_db_16_bit_layout(tmp_path):
    rng = random.Random(3)
    configs = [random_generic_config(rng, 9, span=60000) for _ in range(3)]
    path = tmp_path / "otypes09.b16"
    write_order_type_db(path, configs, 9)
    assert path.stat().st_size == 3 * 36
    back = list(read_order_type_db(path, 9))
    assert [c.integer_coords for c in back] == [c.integer_coords for c in configs]


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8])
def test_shipped_db_complete(n):
    configs = list(read_order_type_db(default_db_path(n), n))
    assert len(configs) == KNOWN_ORDER_TYPE_COUNTS[n]
    assert DbSource().classes(n).exhaustive


@pytest.mark.parametrize("n,grid", [(4, 4), (5, 5), (6, 8)])
def test_db_and_grid_agree(n, grid):
    assert {c for c, _ in DbSource().classes(n).classes} == {c for c, _ in GridSource(grid).classes(n).classes}


# -- placements -------------------------------------------------------------------


def test_placement_plans():
    assert placement_plan(complete(6)).placements.shape == (1, 6)
    plan = placement_plan(complete_bipartite(2, 3)[0])
    assert plan.family == "complete-bipartite" and len(plan.placements) == comb(5, 2)
    assert len(placement_plan(star(5)[0]).placements) == 6
    plan = placement_plan(wheel(5))
    assert plan.family == "wheel" and len(plan.placements) == 6 * 12
    plan = placement_plan(cycle(5, 6))
    assert plan.family == "cycle" and len(plan.placements) == 6 * 12
    assert placement_plan(wheel(3)).family == "complete"


def test_general_placements_capped():
    path = Graph.from_edges(8, [(i, i + 1) for i in range(7)])
    with pytest.raises(PlacementLimitExceeded):
        placement_plan(path)
    assert len(all_placements(4)) == 24


@pytest.mark.parametrize("g", [wheel(5), cycle(5, 6), complete_bipartite(2, 3)[0]], ids=repr)
def test_family_reduction_matches_all_placements(g):
    """Reduced placements reach the same optima as the full n! scan."""
    from orchardcross.explore import search as S

    classes = GridSource(8).classes(g.vertex_count)
    reduced = S.evaluate_classes(g, Mode.MIN, classes)
    full_plan = S.PlacementPlan("general", all_placements(g.vertex_count))
    full = S.evaluate_classes(g, Mode.MIN, classes, full_plan)
    assert [o.value for o, _ in reduced] == [o.value for o, _ in full]
    reduced = S.evaluate_classes(g, Mode.MAX, classes)
    full = S.evaluate_classes(g, Mode.MAX, classes, full_plan)
    assert [o.value for o, _ in reduced] == [o.value for o, _ in full]


# -- search --------------------------------------------------------------------


GRID = GridSource(12)


@pytest.mark.parametrize(
    "g,mode,expected",
    [
        (complete(5), "min", 10),
        (complete_bipartite(3, 3)[0], "min", 12),
        (complete(4), "max", 3),
        (wheel(4), "min", 6),
        (wheel(3), "min", 2),
        (complete_bipartite(2, 2)[0], "min", 0),
        (complete_bipartite(2, 2)[0], "max", 2),
    ],
    ids=lambda x: repr(x) if isinstance(x, Graph) else str(x),
)
def test_search_examples(g, mode, expected):
    res = search_ocn(g, mode, GRID)
    assert res.value == expected
    assert res.exhaustive
    assert orchard_count(res.witness, g) == expected


def test_random_source_never_exhaustive():
    res = search_ocn(complete(4), "max", RandomSource(1000, 7))
    assert res.value == 3 and not res.exhaustive


def test_random_source_reproducible():
    a = search_ocn(complete(5), "max", RandomSource(200, 11))
    b = search_ocn(complete(5), "max", RandomSource(200, 11))
    assert a.value == b.value and a.witness == b.witness


def test_require_exhaustive():
    with pytest.raises(IncompleteEnumeration):
        search_ocn(complete(6), "min", GridSource(6), require_exhaustive=True)
    res = search_ocn(complete(6), "min", GridSource(6))
    assert not res.exhaustive


def test_witness_tie_break_is_source_independent():
    g, _ = complete_bipartite(2, 4)
    a = search_ocn(g, "min", GRID)
    b = search_ocn(g, "min", DbSource())
    assert a.value == b.value == 12
    assert a.extremal_classes == b.extremal_classes
    assert a.witness.placement == b.witness.placement


def test_lower_bound_guard(monkeypatch):
    from orchardcross.explore import search as S

    monkeypatch.setattr(S, "lower_bound", lambda g, plan: 10**6)
    with pytest.raises(LowerBoundViolation):
        search_ocn(complete(5), "min", GRID)


def test_parallel_matches_serial():
    from orchardcross.explore import search as S

    g, _ = complete_bipartite(3, 5)
    classes = DbSource().classes(8)
    serial = S.evaluate_classes(g, Mode.MIN, classes, jobs=1)
    parallel = S.evaluate_classes(g, Mode.MIN, classes, jobs=2)
    assert [(o.chirotope, o.value, o.placement) for o, _ in serial] == [
        (o.chirotope, o.value, o.placement) for o, _ in parallel
    ]


def test_rectilinear_search():
    res = search_rectilinear(complete(6), GRID)
    assert res.value == 3
    assert rectilinear_crossings(res.witness, complete(6)) == 3


@pytest.mark.parametrize("n,mocn,cr", [(4, 3, 0), (5, 14, 1), (6, 42, 3)])
def test_coincidence(n, mocn, cr):
    rep = mocn_cr_coincidence(n, GRID)
    assert (rep.mocn, rep.crossing_min) == (mocn, cr)
    assert rep.ok and rep.exhaustive


def test_coincidence_n4_is_triangle_with_interior_point():
    rep = mocn_cr_coincidence(4, GRID)
    assert rep.maximizers == [chirotope(TRIANGLE_PLUS)]


@pytest.mark.parametrize("n", [5, 6])
def test_wheel_lower_bound_over_all_drawings(n):
    """Every drawing of the wheel scores at least the star optimum plus n."""
    from orchardcross.explore import search as S

    g = wheel(n)
    outcomes = S.evaluate_classes(g, Mode.MIN, DbSource().classes(n + 1))
    assert min(o.min_value for o, _ in outcomes) >= C.ocn_star(n) + n


def test_union_wheel_is_not_additive():
    for n in (5, 6):
        rep = union_additivity(star(n)[0], cycle(n, n + 1), GRID)
        assert rep.common_minimizer is None
        assert (rep.ocn_g, rep.ocn_h) == (C.ocn_star(n), n - 2)
        assert rep.ocn_union == C.ocn_wheel(n)
        assert not rep.additive


def test_union_additive_when_common_minimizer_exists():
    # two triangles sharing vertex 0 (a bowtie)
    g = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2)])
    h = Graph.from_edges(5, [(0, 3), (0, 4), (3, 4)])
    rep = union_additivity(g, h, GRID)
    assert rep.common_minimizer is not None
    assert (rep.ocn_g, rep.ocn_h) == (2, 2)
    assert rep.additive and rep.ocn_union == 4


# -- verify --------------------------------------------------------------------


def test_verify_small_range():
    rs = VerifyRange(
        complete=range(4, 7), star=range(3, 6), wheel=range(3, 6), knn=range(1, 4), two_arcs_max=3, max_points=6
    )
    report = verify_formulas(rs)
    assert report.ok, report.text()
    assert "MISMATCH" not in report.text()


def test_verify_flags_mismatch(monkeypatch):
    from orchardcross.explore import verify as V

    monkeypatch.setitem(V.TABLE1, (2, 3), 5)
    rs = VerifyRange(complete=range(0), star=range(0), wheel=range(0), knn=range(0), two_arcs_max=0,
                     coincidence=False, max_points=5)
    report = verify_formulas(rs)
    assert not report.ok
    assert [c.params for c in report.failures] == [(2, 3)]
