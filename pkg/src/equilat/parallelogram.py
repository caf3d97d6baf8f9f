"""Parallelogram decomposition of a combinatorial translation surface.

Edge trajectories in direction 1 seeded at vertices of degree > 6 form a
1-complex A0; trajectories in directions e^{i*pi/3} and -e^{i*pi/3} form
A1 and A2 but stop on hitting A0.  The union A is the 1-skeleton of a
2-polytope B whose faces develop to flat parallelograms, each with a
corner vertex of degree > 6.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from equilat.eisenstein import ZERO
from equilat.surface import (
    GluedSurface,
    SurfaceError,
    _head_corner,
    corner_vertex_map,
    euler_and_genus,
    vertex_orbits,
)
from equilat.translation import TranslationStructure, build_period_map

__all__ = [
    "TrajectoryComplex",
    "PolytopeB",
    "Region",
    "Run",
    "FaceGeometry",
    "build_trajectories",
    "build_polytope",
    "develop_face",
    "decompose",
]

# Corner pairs (zeta(e1,v), zeta(e2,v)) that can occur where two boundary
# edges of a face meet, with the face clockwise from e1; stored as
# exponent pairs.  1 pairs with -e^{i*pi/3}, and so on around.
ALLOWED_CORNER_PAIRS = frozenset({(0, 4), (4, 3), (3, 1), (1, 0)})


@dataclass(frozen=True)
class TrajectoryComplex:
    a0_edges: frozenset  # edge = frozenset of its two darts
    a1_edges: frozenset
    a2_edges: frozenset
    a0_vertices: frozenset
    a1_vertices: frozenset
    a2_vertices: frozenset

    @property
    def edges(self) -> frozenset:
        return self.a0_edges | self.a1_edges | self.a2_edges


def _check_input(surface: GluedSurface) -> tuple:
    if not surface.is_closed() or not surface.is_connected():
        raise SurfaceError("decomposition needs a closed connected surface")
    stats = euler_and_genus(surface)
    if stats.genus == 1:
        raise SurfaceError("genus-1 translation surfaces have no vertices of degree > 6; "
                           "parallelogram decomposition is undefined")
    reports = vertex_orbits(surface)
    high = [r.vertex for r in reports if r.degree > 6]
    if not high:
        raise SurfaceError("no vertices of degree > 6; decomposition is undefined")
    return stats, reports, high


def build_trajectories(surface: GluedSurface, st: TranslationStructure) -> TrajectoryComplex:
    """Fixpoints of the three inductive trajectory rules."""
    _, reports, high = _check_input(surface)
    cv = corner_vertex_map(surface)
    nv = len(reports)
    out_darts = [[] for _ in range(nv)]
    for d in range(surface.dart_count):
        out_darts[cv[d]].append(d)
    high_set = set(high)

    def grow(weight_k: int, stop_at=None):
        vertices = set(high)
        edges = set()
        queue = list(high)
        while queue:
            v = queue.pop()
            for d in out_darts[v]:
                if st.weights[d].k != weight_k:
                    continue
                edges.add(frozenset((d, surface.gluing[d])))
                w = cv[_head_corner(d)]
                if w not in vertices:
                    vertices.add(w)
                    # trajectories stop on hitting A0, except at seeds
                    if stop_at is None or w not in stop_at or w in high_set:
                        queue.append(w)
        return frozenset(vertices), frozenset(edges)

    a0_v, a0_e = grow(0)
    a1_v, a1_e = grow(1, stop_at=a0_v)
    a2_v, a2_e = grow(4, stop_at=a0_v)
    return TrajectoryComplex(a0_e, a1_e, a2_e, a0_v, a1_v, a2_v)


@dataclass(frozen=True)
class Run:
    """A maximal same-direction chain of A-edges between polytope vertices."""

    start: int
    end: int
    darts: tuple  # consecutive darts from start to end
    weight_k: int  # direction exponent at every tail along the run


@dataclass(frozen=True)
class Region:
    """A face of the polytope: triangles of S bounded by trajectory edges."""

    region_id: int
    faces: tuple
    boundary_darts: tuple  # single closed walk, region on the left


@dataclass(frozen=True)
class PolytopeB:
    vertices: frozenset
    edges: tuple  # Run per polytope edge
    faces: tuple  # Region per polytope face
    complex: TrajectoryComplex


def build_polytope(surface: GluedSurface, st: TranslationStructure,
                   A: TrajectoryComplex) -> PolytopeB:
    """Vertices, maximal-run edges and complementary regions of A.

    Asserts the structural facts the construction guarantees: trajectory
    edge weights stay in {1, -1, w, -w}, every such edge end at a vertex
    of degree > 6 lies in A, runs cover A exactly, and relative periods
    between polytope vertices lie in 3Z + 3wZ.
    """
    stats, reports, high = _check_input(surface)
    cv = corner_vertex_map(surface)
    in_a = [False] * surface.dart_count
    for e in A.edges:
        for d in e:
            in_a[d] = True
    for e in A.a0_edges:
        for d in e:
            if st.weights[d].k not in (0, 3):
                raise SurfaceError("direction-1 trajectory edge with wrong weight")
    for e in A.a1_edges | A.a2_edges:
        for d in e:
            if st.weights[d].k not in (1, 4):
                raise SurfaceError("diagonal trajectory edge with wrong weight")
    nv = len(reports)
    out_darts = [[] for _ in range(nv)]
    for d in range(surface.dart_count):
        out_darts[cv[d]].append(d)
    high_set = set(high)
    for v in high:
        for d in out_darts[v]:
            if st.weights[d].k in (0, 1, 3, 4) and not in_a[d]:
                raise SurfaceError("axis-direction edge at a degree >6 vertex missed by A")
    # polytope vertices: an A-edge end of weight +-1 and one of weight +-w
    vb = set()
    for rep in reports:
        ks = {st.weights[d].k for d in out_darts[rep.vertex] if in_a[d]}
        if ks & {0, 3} and ks & {1, 4}:
            vb.add(rep.vertex)
    if not high_set <= vb:
        raise SurfaceError("a degree >6 vertex escaped the polytope vertex set")
    for v in vb:
        for d in out_darts[v]:
            if st.weights[d].k in (0, 3) and not in_a[d]:
                raise SurfaceError("horizontal edge at a polytope vertex missed by A")
    # maximal runs
    runs = []
    seen_starts = set()
    for v in sorted(vb):
        for d in sorted(out_darts[v]):
            if not in_a[d] or d in seen_starts:
                continue
            darts = [d]
            k = st.weights[d].k
            w = cv[_head_corner(d)]
            while w not in vb:
                nxt = [d2 for d2 in out_darts[w] if in_a[d2] and st.weights[d2].k == k]
                if len(nxt) != 1:
                    raise SurfaceError("trajectory run has no unique continuation")
                darts.append(nxt[0])
                w = cv[_head_corner(nxt[0])]
            reverse_start = surface.gluing[darts[-1]]
            seen_starts.add(reverse_start)
            runs.append(Run(v, w, tuple(darts), k))
    covered = set()
    for run in runs:
        for d in run.darts:
            covered.add(frozenset((d, surface.gluing[d])))
    if covered != A.edges:
        raise SurfaceError("maximal runs do not cover the trajectory complex exactly")
    # complementary regions: flood fill across non-A edges
    owner = [-1] * surface.face_count
    regions = []
    for f0 in range(surface.face_count):
        if owner[f0] != -1:
            continue
        rid = len(regions)
        faces = [f0]
        owner[f0] = rid
        stack = [f0]
        while stack:
            f = stack.pop()
            for s in range(3):
                d = 3 * f + s
                if in_a[d]:
                    continue
                f2 = surface.gluing[d] // 3
                if owner[f2] == -1:
                    owner[f2] = rid
                    faces.append(f2)
                    stack.append(f2)
        regions.append(faces)
    region_objs = []
    for rid, faces in enumerate(regions):
        boundary = _region_boundary(surface, in_a, faces)
        region_objs.append(Region(rid, tuple(sorted(faces)), boundary))
    # relative periods between polytope vertices lie in the index-9 sublattice
    pm = build_period_map(surface, st, base_vertex=min(vb))
    base = pm.potentials[min(vb)]
    for v in sorted(vb):
        if not (pm.potentials[v] - base).in_sublattice(3):
            raise SurfaceError(f"polytope vertex {v} at period outside 3Z+3wZ")
    return PolytopeB(frozenset(vb), tuple(runs), tuple(region_objs), A)


def _region_boundary(surface: GluedSurface, in_a, faces) -> tuple:
    """The closed boundary walk of a region, region faces on the left."""
    face_set = set(faces)
    boundary = [3 * f + s for f in faces for s in range(3) if in_a[3 * f + s]]
    if not boundary:
        raise SurfaceError("region without boundary; trajectory complex is empty here")
    remaining = set(boundary)
    start = min(remaining)
    walk = []
    d = start
    while True:
        walk.append(d)
        remaining.discard(d)
        f, s = divmod(d, 3)
        e = 3 * f + (s + 1) % 3
        while not in_a[e]:
            p = surface.gluing[e]
            if p // 3 not in face_set:
                raise SurfaceError("boundary walk left the region; inconsistent complex")
            f, s = divmod(p, 3)
            e = 3 * f + (s + 1) % 3
        d = e
        if d == start:
            break
    if remaining:
        raise SurfaceError("region boundary is not a single closed walk")
    return tuple(walk)


@dataclass(frozen=True)
class FaceGeometry:
    region_id: int
    closes: bool
    corner_vertices: tuple  # (vertex id, turn in units of pi/3, corner pair)
    length: Optional[int]  # side length in direction +-1
    width: Optional[int]  # side length in direction +-w
    triangle_count: int
    development: tuple  # partial period sums around the boundary


def develop_face(surface: GluedSurface, st: TranslationStructure,
                 region: Region) -> FaceGeometry:
    """Develop a region boundary in the plane and verify it is a parallelogram.

    Checks closure, exactly four direction changes alternating by pi/3 and
    2*pi/3, allowed corner weight pairs, and integral side lengths.
    """
    cv = corner_vertex_map(surface)
    walk = region.boundary_darts
    total = ZERO
    development = []
    for d in walk:
        total = total + st.period(d)
        development.append(total)
    closes = total == ZERO
    n = len(walk)
    # positions i where the direction changes between walk[i] and walk[i+1]
    change_pos = [i for i in range(n)
                  if st.weights[walk[i]].k != st.weights[walk[(i + 1) % n]].k]
    corners = []
    sides = []  # (weight exponent, length) per side, in walk order
    for j, i in enumerate(change_pos):
        k1 = st.weights[walk[i]].k
        k2 = st.weights[walk[(i + 1) % n]].k
        v = cv[_head_corner(walk[i])]
        # with the face on the left of the walk it lies clockwise from the
        # incoming edge, which carries the negated weight at v
        corners.append((v, (k2 - k1) % 6, ((k1 + 3) % 6, k2)))
        start = change_pos[j - 1]  # side ends at corner i, starts after previous
        sides.append((k1, (i - start) % n or n))
    ok = closes and len(corners) == 4
    if ok:
        turns = [c[1] for c in corners]
        ok = sorted(turns) == [1, 1, 2, 2] and turns[0] != turns[1] and turns[1] != turns[2]
        ok = ok and all(c[2] in ALLOWED_CORNER_PAIRS for c in corners)
        ok = ok and sides[0][1] == sides[2][1] and sides[1][1] == sides[3][1]
    if not ok:
        raise SurfaceError(f"region {region.region_id} does not develop to a parallelogram")
    horizontal = [ln for k, ln in sides if k in (0, 3)]
    diagonal = [ln for k, ln in sides if k in (1, 4)]
    length = horizontal[0] if horizontal else None
    width = diagonal[0] if diagonal else None
    return FaceGeometry(
        region_id=region.region_id,
        closes=closes,
        corner_vertices=tuple(corners),
        length=length,
        width=width,
        triangle_count=len(region.faces),
        development=tuple(development),
    )


def decompose(surface: GluedSurface, st: TranslationStructure) -> tuple:
    """Full pipeline: trajectories, polytope, developed face geometries."""
    A = build_trajectories(surface, st)
    B = build_polytope(surface, st, A)
    geoms = tuple(develop_face(surface, st, r) for r in B.faces)
    return B, geoms
