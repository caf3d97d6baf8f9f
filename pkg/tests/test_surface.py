import random

import pytest
from hypothesis import given, settings, strategies as st

from equilat.surface import (
    BOUNDARY,
    GluedSurface,
    SurfaceError,
    canonical_form,
    conformal_double,
    connected_components,
    euler_and_genus,
    load_canonical_form,
    load_surface,
    random_surface,
    relabel,
    save_surface,
    subdivide,
    vertex_orbits,
)


def test_hexagonal_torus_stats(hex_torus):
    st_ = euler_and_genus(hex_torus)
    assert (st_.vertices, st_.edges, st_.faces) == (1, 3, 2)
    assert st_.chi == 0 and st_.genus == 1
    (rep,) = vertex_orbits(hex_torus)
    assert rep.degree == 6 and not rep.boundary


def test_pillowcase_stats(pillowcase):
    st_ = euler_and_genus(pillowcase)
    assert (st_.vertices, st_.edges, st_.faces) == (3, 3, 2)
    assert st_.chi == 2 and st_.genus == 0
    assert sorted(r.degree for r in vertex_orbits(pillowcase)) == [2, 2, 2]


def test_tsf_round_trip(hex_torus):
    text = save_surface(hex_torus)
    assert text.startswith("tsf v1\n")
    assert load_surface(text).gluing == hex_torus.gluing


def test_tsf_rejects_malformed():
    with pytest.raises(SurfaceError):
        load_surface("tsf v1\nT 2\ng 0 0\n")
    with pytest.raises(SurfaceError):
        load_surface("not a surface")


def test_single_triangle_boundary():
    tri = GluedSurface(1, (BOUNDARY, BOUNDARY, BOUNDARY))
    assert not tri.is_closed()
    assert len(tri.boundary_darts()) == 3
    reps = vertex_orbits(tri)
    assert all(r.boundary and r.degree == 2 for r in reps)


def test_subdivision_counts(hex_torus):
    for k in (2, 3, 5):
        sub = subdivide(hex_torus, k)
        assert sub.face_count == 2 * k * k
        assert euler_and_genus(sub).genus == 1


def test_subdivision_composes(hex_torus):
    a = subdivide(subdivide(hex_torus, 2), 3)
    b = subdivide(hex_torus, 6)
    assert canonical_form(a) == canonical_form(b)


def test_double_of_triangle_is_pillowcase(pillowcase):
    tri = GluedSurface(1, (BOUNDARY, BOUNDARY, BOUNDARY))
    doubled = conformal_double(tri)
    assert doubled.is_closed()
    assert canonical_form(doubled) == canonical_form(pillowcase)


def test_double_genus_formula():
    # genus h with b boundary components doubles to genus 2h + b - 1
    rng = random.Random(7)
    for _ in range(10):
        closed = random_surface(8, rng.randrange(10**6))
        open_gluing = list(closed.gluing)
        d = rng.randrange(24)
        p = open_gluing[d]
        open_gluing[d] = open_gluing[p] = BOUNDARY
        cut = GluedSurface(8, tuple(open_gluing))
        if not cut.is_connected():
            continue
        stats = euler_and_genus(cut)
        doubled = conformal_double(cut)
        assert euler_and_genus(doubled).genus == \
            2 * stats.genus + stats.boundary_components - 1


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10**6), st.randoms(use_true_random=False))
def test_canonical_form_is_relabeling_invariant(seed, rng):
    surface = random_surface(6, seed)
    perm = list(range(6))
    rng.shuffle(perm)
    rotations = [rng.randrange(3) for _ in range(6)]
    other = relabel(surface, perm, rotations)
    assert canonical_form(surface) == canonical_form(other)


def test_canonical_form_separates_torus_and_pillowcase(hex_torus, pillowcase):
    assert canonical_form(hex_torus) != canonical_form(pillowcase)


def test_canonical_form_round_trip(hex_torus):
    blob = canonical_form(hex_torus)
    rebuilt = load_canonical_form(blob)
    assert canonical_form(rebuilt) == blob


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_random_surface_is_closed_connected(seed):
    surface = random_surface(10, seed)
    assert surface.is_closed() and surface.is_connected()
    stats = euler_and_genus(surface)
    assert stats.chi % 2 == 0 and stats.genus >= 0


def test_random_surface_deterministic():
    assert random_surface(12, 5).gluing == random_surface(12, 5).gluing


def test_connected_components_split(hex_torus, pillowcase):
    gluing = list(hex_torus.gluing) + [p + 6 for p in pillowcase.gluing]
    both = GluedSurface(4, tuple(gluing))
    assert not both.is_connected()
    parts = connected_components(both)
    assert sorted(canonical_form(p) for p in parts) == \
        sorted([canonical_form(hex_torus), canonical_form(pillowcase)])


def test_gluing_validation():
    with pytest.raises(SurfaceError):
        GluedSurface(2, (3, 4, 5, 0, 1, 1))  # not an involution
    with pytest.raises(SurfaceError):
        GluedSurface(2, (0, 4, 5, 3, 1, 2))  # fixed point
