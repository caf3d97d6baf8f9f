import pytest

from equilat.eisenstein import ZERO
from equilat.surface import (
    GluedSurface,
    SurfaceError,
    euler_and_genus,
    random_surface,
    relabel,
    subdivide,
    vertex_orbits,
)
from equilat.translation import detect_structures
from equilat.parallelogram import (
    ALLOWED_CORNER_PAIRS,
    build_polytope,
    build_trajectories,
    decompose,
    develop_face,
)


def test_rejects_genus_one(hex_torus):
    st = detect_structures(hex_torus)[0]
    with pytest.raises(SurfaceError, match="genus-1"):
        build_trajectories(hex_torus, st)


def test_rejects_subdivided_torus(hex_torus):
    # still genus 1 after subdivision: no vertex of degree > 6 can exist
    sub = subdivide(hex_torus, 3)
    st = detect_structures(sub)[0]
    with pytest.raises(SurfaceError, match="genus-1"):
        build_trajectories(sub, st)


def test_trajectory_edges_carry_axis_weights(tran_lb_corpus):
    surface, st = tran_lb_corpus[0]
    A = build_trajectories(surface, st)
    for e in A.a0_edges:
        assert {st.weights[d].k for d in e} == {0, 3}
    for e in A.a1_edges | A.a2_edges:
        assert {st.weights[d].k for d in e} == {1, 4}
    assert A.a0_edges.isdisjoint(A.a1_edges | A.a2_edges)


def test_polytope_structure_on_corpus(tran_lb_corpus):
    for surface, st in tran_lb_corpus:
        g = euler_and_genus(surface).genus
        high = {r.vertex for r in vertex_orbits(surface) if r.degree > 6}
        B, geoms = decompose(surface, st)
        assert high <= B.vertices
        assert len(B.faces) <= 12 * (g - 1)
        assert sum(geom.triangle_count for geom in geoms) == surface.face_count
        for geom in geoms:
            assert geom.closes
            assert geom.length >= 3 and geom.width >= 3
            assert 2 * geom.length * geom.width == geom.triangle_count
            turns = [c[1] for c in geom.corner_vertices]
            assert sorted(turns) == [1, 1, 2, 2] and turns[0] != turns[1]
            assert all(c[2] in ALLOWED_CORNER_PAIRS for c in geom.corner_vertices)
            assert any(c[0] in high for c in geom.corner_vertices)


def test_edges_are_maximal_same_direction_runs(tran_lb_corpus):
    surface, st = tran_lb_corpus[0]
    A = build_trajectories(surface, st)
    B = build_polytope(surface, st, A)
    covered = set()
    for run in B.edges:
        ks = {st.weights[d].k for d in run.darts}
        assert len(ks) == 1 and run.weight_k in ks
        assert run.start in B.vertices and run.end in B.vertices
        for d in run.darts:
            covered.add(frozenset((d, surface.gluing[d])))
    assert covered == A.edges


def test_development_returns_to_origin(tran_lb_corpus):
    surface, st = tran_lb_corpus[0]
    B, geoms = decompose(surface, st)
    for geom in geoms:
        assert geom.development[-1] == ZERO


def test_decomposition_is_relabeling_invariant(tran_lb_corpus):
    import random as _random

    surface, st = tran_lb_corpus[0]
    _, geoms = decompose(surface, st)
    shapes = sorted((g.length, g.width) for g in geoms)
    rng = _random.Random(99)
    perm = list(range(surface.face_count))
    rng.shuffle(perm)
    rots = [rng.randrange(3) for _ in range(surface.face_count)]
    other = relabel(surface, perm, rots)
    st2 = detect_structures(other)[0]
    _, geoms2 = decompose(other, st2)
    shapes2 = sorted((g.length, g.width) for g in geoms2)
    assert shapes == shapes2


def test_all_six_structures_decompose(tran_lb_corpus):
    surface, _ = tran_lb_corpus[0]
    shapes = set()
    for st in detect_structures(surface):
        _, geoms = decompose(surface, st)
        shapes.add(tuple(sorted(g.triangle_count for g in geoms)))
    assert len(shapes) >= 1  # every rotation yields a valid decomposition
