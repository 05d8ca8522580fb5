import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arcspine.core import (
    EmptyArcSystem,
    InvalidSpec,
    NonIntegerGenus,
    Piece,
    PieceKind,
    SplitPresentation,
    SurfaceSpec,
    classify_piece,
    derive_invariants,
    doubled_euler,
    fills_up,
    is_maximal,
    rank,
    validate,
)
from arcspine.constructions import explicit_maximal
from arcspine.enumeration import valid_subsystems
from arcspine.formulas import arc_complex_dim
from helpers import B, F, make


def disc(n, ell, interior=()):
    return Piece(0, n, frozenset(interior), ([(i, 0) for i in range(ell)],))


@pytest.mark.parametrize("n, ell, expected", [
    (0, 3, -1),  # triangle
    (0, 1, 1),   # monogon
    (0, 2, 0),   # bigon
    (1, 1, -1),  # once-punctured monogon
])
def test_doubled_euler_canonical_pieces(n, ell, expected):
    assert doubled_euler(disc(n, ell)) == expected


def test_doubled_euler_ignores_interior_marked_points():
    assert doubled_euler(disc(0, 1, interior=[2])) == 1


def test_surface_spec_guards():
    SurfaceSpec(0, 3, 1)
    for bad in [(0, 2, 1), (1, 1, 2), (1, 0, 0), (-1, 4, 1), (1, 2, 0)]:
        with pytest.raises(InvalidSpec):
            SurfaceSpec(*bad)


def test_validate_torus_loop(torus_loop):
    assert validate(torus_loop).valid


def test_validate_torus_loop_with_wrong_genus(torus_loop):
    bad = make((1, 1, 1), [(1, 1)], [(1, 0, (), [[(0, F)], [(0, B)]])])
    report = validate(bad)
    assert not report.valid
    assert "euler_genus" in report.checks


def test_validate_sphere_single_loop(sphere_loop):
    assert validate(sphere_loop).valid


def test_validate_reports_arc_appearing_once():
    sp = make((0, 3, 1), [(1, 1), (1, 1)], [(0, 1, (), [[(0, F)]]), (0, 1, (), [[(0, B), (1, F)]])])
    assert "arc_incidence" in validate(sp).checks


def test_validate_reports_same_direction_sides():
    sp = make((0, 3, 1), [(1, 1)], [(0, 1, (), [[(0, F)]]), (0, 1, (), [[(0, F)]])])
    assert "arc_incidence" in validate(sp).checks


def test_validate_reports_corner_mismatch():
    sp = make((0, 3, 2), [(1, 2)], [(0, 1, (), [[(0, F)]]), (0, 0, (), [[(0, B)]])])
    assert "corner_consistency" in validate(sp).checks


def test_validate_reports_split_vertex():
    # the (0,3,2) maximal system with its degree-one vertex relabelled 1
    sp = make((0, 3, 2), [(1, 1), (1, 1)], [
        (0, 0, (), [[(1, F), (0, F), (0, B)]]),
        (0, 1, (), [[(1, B)]]),
    ])
    checks = validate(sp).checks
    assert "vertex_links" in checks
    assert "delta_partition" in checks


def test_validate_reports_disconnected_gluing():
    sp = make((0, 3, 1), [(1, 1), (1, 1)], [
        (0, 1, (), [[(0, F)]]), (0, 0, (), [[(0, B)]]),
        (0, 0, (), [[(1, F)]]), (0, 1, (), [[(1, B)]]),
    ])
    assert "connectivity" in validate(sp).checks


def test_validate_reports_label_both_incident_and_interior(sphere_loop):
    sp = make((0, 3, 1), [(1, 1)], [(0, 1, {1}, [[(0, F)]]), (0, 1, (), [[(0, B)]])])
    assert "delta_partition" in validate(sp).checks


def test_validate_reports_puncture_count():
    sp = make((0, 3, 1), [(1, 1)], [(0, 1, (), [[(0, F)]]), (0, 0, (), [[(0, B)]])])
    assert "puncture_count" in validate(sp).checks


def test_validate_reports_bigon(nested_loops_bigon):
    report = validate(nested_loops_bigon)
    assert report.checks == {"doubled_euler"}
    assert report.failures[0].indices == (1,)


def test_validate_reports_empty_system():
    sp = SplitPresentation(SurfaceSpec(0, 3, 1), (), (disc(2, 0),))
    assert not validate(sp).valid


def test_validate_unknown_arc_is_structural():
    sp = make((0, 3, 1), [(1, 1)], [(0, 1, (), [[(0, F)]]), (0, 1, (), [[(5, B)]])])
    assert validate(sp).checks == {"structure"}


def test_validate_is_pure(torus_max):
    assert validate(torus_max) == validate(torus_max)


def test_derive_invariants_torus_max(torus_max):
    inv = derive_invariants(torus_max)
    assert inv.genus == 1 and inv.punctures == 0 and inv.incident_delta == {1}


def test_derive_invariants_sphere(sphere_loop):
    assert derive_invariants(sphere_loop)[:2] == (0, 2)


def test_derive_invariants_empty():
    with pytest.raises(EmptyArcSystem):
        derive_invariants(SplitPresentation(SurfaceSpec(0, 3, 1), (), (disc(2, 0),)))


def test_derive_invariants_odd_euler():
    sp = make((1, 1, 1), [(1, 1)], [(0, 0, (), [[(0, F), (0, B)]])])
    with pytest.raises(NonIntegerGenus):
        derive_invariants(sp)


def test_rank(torus_max, sphere_loop):
    assert rank(torus_max) == 2
    assert rank(sphere_loop) == 0
    assert rank(explicit_maximal(SurfaceSpec(1, 1, 1))) == 2


def test_classify_piece():
    assert classify_piece(disc(0, 3)).kind is PieceKind.TRIANGLE
    assert classify_piece(disc(1, 1)).kind is PieceKind.ONCE_PUNCTURED_MONOGON
    annulus = Piece(0, 0, frozenset(), ([(0, 0)], [(0, 1)]))
    cls = classify_piece(annulus)
    assert cls.kind is PieceKind.OTHER and (cls.h, cls.b, cls.n, cls.ell) == (0, 2, 0, 2)
    assert classify_piece(disc(0, 3, interior=[2])).kind is PieceKind.OTHER


def test_fills_up(torus_square, sphere_loop, torus_loop):
    assert fills_up(torus_square)
    assert fills_up(sphere_loop)
    assert not fills_up(torus_loop)


def test_is_maximal(torus_square):
    assert is_maximal(explicit_maximal(SurfaceSpec(1, 1, 1)))
    assert not is_maximal(torus_square)


SMALL_SPECS = [(0, 3, 1), (0, 3, 2), (0, 3, 3), (0, 4, 1), (0, 4, 2), (1, 1, 1), (1, 2, 1)]
_POOL = {spec: list(valid_subsystems(SurfaceSpec(*spec)).values()) for spec in SMALL_SPECS}


@settings(max_examples=200, deadline=None)
@given(spec=st.sampled_from(SMALL_SPECS), data=st.data())
def test_maximality_three_way(spec, data):
    sp = data.draw(st.sampled_from(_POOL[spec]))
    by_rank = rank(sp) == arc_complex_dim(*spec)
    by_pieces = all(classify_piece(p).kind is not PieceKind.OTHER for p in sp.pieces)
    assert is_maximal(sp) == by_rank == by_pieces
    if is_maximal(sp):
        assert fills_up(sp)


def test_piece_with_puncture_and_interior_point_is_legal():
    # theta system whose first face holds a puncture and a decorated point
    sp = make((0, 5, 4), [(1, 2), (2, 3), (3, 1)], [
        (0, 1, {4}, [[(0, F), (1, F), (2, F)]]),
        (0, 0, (), [[(2, B), (1, B), (0, B)]]),
    ])
    assert validate(sp).valid
    assert not fills_up(sp)
