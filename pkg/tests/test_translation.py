import pytest
from hypothesis import given, settings, strategies as st

from equilat.eisenstein import Eisenstein
from equilat.surface import (
    GluedSurface,
    SurfaceError,
    euler_and_genus,
    random_surface,
    subdivide,
    vertex_orbits,
)
from equilat.translation import (
    MAX_LB_DEGREE,
    build_period_map,
    detect_structures,
    edge_path_period,
    face_types,
    flat_area,
    is_locally_bounded_tran,
)

SIXTH_ROOTS = {Eisenstein(1, 0), Eisenstein(0, 1), Eisenstein(-1, 1),
               Eisenstein(-1, 0), Eisenstein(0, -1), Eisenstein(1, -1)}


def test_torus_admits_six_structures(hex_torus):
    structures = detect_structures(hex_torus)
    assert len(structures) == 6
    weights = {tuple(w.k for w in s.weights) for s in structures}
    assert len(weights) == 6  # the six global rotations are distinct


def test_pillowcase_admits_no_structure(pillowcase):
    # its vertices have degree 2, which no flat directional weighting allows
    assert detect_structures(pillowcase) == []


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_zero_or_six_structures(seed):
    surface = random_surface(8, seed)
    structures = detect_structures(surface)
    assert len(structures) in (0, 6)
    for s in structures:
        for rep in vertex_orbits(surface):
            assert rep.degree % 6 == 0


def test_face_types_bipartition(hex_torus):
    st_ = detect_structures(hex_torus)[0]
    types = face_types(hex_torus, st_)
    for d, p in enumerate(hex_torus.gluing):
        assert types[d // 3] != types[p // 3]


def test_single_edge_periods_are_sixth_roots(hex_torus):
    st_ = detect_structures(hex_torus)[0]
    for d in range(hex_torus.dart_count):
        assert st_.period(d) in SIXTH_ROOTS
        assert st_.period(d) + st_.period(hex_torus.gluing[d]) == Eisenstein(0, 0)


def test_edge_path_period_closes_around_face(hex_torus):
    st_ = detect_structures(hex_torus)[0]
    assert edge_path_period(hex_torus, st_, (0, 1, 2)) == Eisenstein(0, 0)


def test_loop_periods_in_unit_lattice(census8):
    # every co-tree loop holonomy is an honest Eisenstein integer
    for T, classes in census8.items():
        for surface in classes:
            structures = detect_structures(surface)
            if not structures:
                continue
            pm = build_period_map(surface, structures[0])
            for _, h in pm.holonomies:
                assert isinstance(h, Eisenstein)


def test_torus_is_not_locally_bounded(hex_torus):
    st_ = detect_structures(hex_torus)[0]
    report = is_locally_bounded_tran(hex_torus, st_)
    assert not report.ok and report.degree_ok and not report.periods_ok
    assert "3Z+3wZ" in report.first_failure


def test_three_subdivision_is_locally_bounded(hex_torus):
    sub = subdivide(hex_torus, 3)
    st_ = detect_structures(sub)[0]
    report = is_locally_bounded_tran(sub, st_)
    assert report.ok and report.max_degree <= MAX_LB_DEGREE


def test_subdivision_scales_holonomies(hex_torus):
    # after 3-subdivision every essential loop period is scaled by 3:
    # all holonomies land in 3Z + 3wZ and the nonzero ones have norm 9
    sub = subdivide(hex_torus, 3)
    pm3 = build_period_map(sub, detect_structures(sub)[0])
    nonzero = [h for _, h in pm3.holonomies if h != Eisenstein(0, 0)]
    assert nonzero and all(h.in_sublattice(3) for h in nonzero)
    assert {h.norm() for h in nonzero} == {9}


def test_flat_area_counts_triangles(hex_torus):
    assert flat_area(hex_torus) == 2
    assert flat_area(subdivide(hex_torus, 4)) == 32


def test_detect_rejects_open_surface():
    from equilat.surface import BOUNDARY

    tri = GluedSurface(1, (BOUNDARY, BOUNDARY, BOUNDARY))
    with pytest.raises(SurfaceError):
        detect_structures(tri)
