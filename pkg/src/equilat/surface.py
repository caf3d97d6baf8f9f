"""Surfaces glued from unit equilateral triangles.

A surface with T faces has darts 0..3T-1; dart 3f+s is side s of face f,
running counterclockwise from corner s to corner s+1 (mod 3).  A gluing is
a fixed-point-free partial involution on darts: glued darts a and b
identify a traversed forward with b traversed backward, so all gluings
preserve orientation.  Unmatched darts are boundary edges.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

__all__ = [
    "GluedSurface",
    "VertexReport",
    "SurfaceStats",
    "load_surface",
    "save_surface",
    "euler_and_genus",
    "vertex_orbits",
    "connected_components",
    "subdivide",
    "conformal_double",
    "canonical_form",
    "random_surface",
    "relabel",
]

BOUNDARY = -1


class SurfaceError(ValueError):
    """Raised for malformed gluing data or violated preconditions."""


@dataclass(frozen=True)
class GluedSurface:
    """An oriented surface built from unit equilateral triangles.

    gluing[d] is the partner dart of d, or -1 when d is a boundary edge.
    Instances are immutable after validation; all operations on them are
    pure functions.
    """

    face_count: int
    gluing: tuple
    provenance: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        T = self.face_count
        if T < 1:
            raise SurfaceError("face count must be positive")
        g = self.gluing
        if len(g) != 3 * T:
            raise SurfaceError(f"gluing must list all {3 * T} darts")
        for d, p in enumerate(g):
            if p == BOUNDARY:
                continue
            if not 0 <= p < 3 * T:
                raise SurfaceError(f"dart {d}: partner {p} out of range")
            if p == d:
                raise SurfaceError(f"dart {d} glued to itself")
            if g[p] != d:
                raise SurfaceError(f"gluing is not an involution at dart {d}")

    @property
    def dart_count(self) -> int:
        return 3 * self.face_count

    def partner(self, dart: int) -> int:
        return self.gluing[dart]

    def is_closed(self) -> bool:
        return BOUNDARY not in self.gluing

    def boundary_darts(self) -> list:
        return [d for d, p in enumerate(self.gluing) if p == BOUNDARY]

    def is_connected(self) -> bool:
        return len(_face_components(self)) == 1

    def with_provenance(self, provenance: tuple) -> "GluedSurface":
        return GluedSurface(self.face_count, self.gluing, provenance)


@dataclass(frozen=True)
class VertexReport:
    """One vertex orbit: its corners in rotation order and its degree.

    The degree counts edge ends at the vertex; for a boundary vertex this
    is the number of faces in its fan plus one.
    """

    vertex: int
    degree: int
    boundary: bool
    corners: tuple


@dataclass(frozen=True)
class SurfaceStats:
    vertices: int
    edges: int
    faces: int
    chi: int
    genus: Optional[int]
    boundary_components: int


def _head_corner(dart: int) -> int:
    f, s = divmod(dart, 3)
    return 3 * f + (s + 1) % 3


def _incoming_dart(corner: int) -> int:
    f, s = divmod(corner, 3)
    return 3 * f + (s + 2) % 3


def _rotate_corner(surface: GluedSurface, corner: int) -> int:
    """Next corner around the same vertex, through the outgoing dart."""
    p = surface.gluing[corner]
    return _head_corner(p) if p != BOUNDARY else BOUNDARY


def vertex_orbits(surface: GluedSurface) -> list:
    """Vertex orbits of corners, each listed in rotation order.

    A corner orbit is a cycle (interior vertex) or a path whose first
    corner has an unmatched incoming dart (boundary vertex).
    """
    n = surface.dart_count
    seen = [False] * n
    raw = []
    for c0 in range(n):
        if seen[c0]:
            continue
        # Rewind to the start of the fan: follow incoming darts backwards
        # until hitting the boundary or coming full circle.
        start = c0
        while True:
            p = surface.gluing[_incoming_dart(start)]
            if p == BOUNDARY:
                break
            prev = p  # incoming dart glued to p, so the previous corner is p's tail
            if prev == c0:
                start = c0
                break
            start = prev
        corners = []
        c = start
        boundary = False
        while True:
            corners.append(c)
            seen[c] = True
            c = _rotate_corner(surface, c)
            if c == BOUNDARY:
                boundary = True
                break
            if c == start:
                break
        raw.append((boundary, corners))
    raw.sort(key=lambda item: min(item[1]))
    reports = []
    for v, (boundary, corners) in enumerate(raw):
        degree = len(corners) + 1 if boundary else len(corners)
        reports.append(VertexReport(v, degree, boundary, tuple(corners)))
    return reports


def corner_vertex_map(surface: GluedSurface) -> list:
    """corner -> vertex id, consistent with vertex_orbits numbering."""
    out = [0] * surface.dart_count
    for rep in vertex_orbits(surface):
        for c in rep.corners:
            out[c] = rep.vertex
    return out


def _boundary_cycles(surface: GluedSurface) -> list:
    """Boundary components as cycles of boundary darts."""
    pending = set(surface.boundary_darts())
    cycles = []
    while pending:
        d0 = min(pending)
        cycle = []
        d = d0
        while True:
            cycle.append(d)
            pending.discard(d)
            # Walk the fan at the head of d to the corner whose outgoing
            # dart is unmatched; that dart continues the boundary.
            c = _head_corner(d)
            while surface.gluing[c] != BOUNDARY:
                c = _rotate_corner(surface, c)
            d = c
            if d == d0:
                break
        cycles.append(cycle)
    return cycles


def euler_and_genus(surface: GluedSurface) -> SurfaceStats:
    """Vertex/edge counts, Euler characteristic and genus.

    Requires a connected surface.  For closed surfaces the genus comes
    from chi = 2 - 2g; with boundary it comes from chi = 2 - 2g - b.
    """
    if not surface.is_connected():
        raise SurfaceError("surface is disconnected; split it first")
    T = surface.face_count
    matched = sum(1 for p in surface.gluing if p != BOUNDARY)
    unmatched = 3 * T - matched
    E = matched // 2 + unmatched
    V = len(vertex_orbits(surface))
    chi = V - E + T
    b = len(_boundary_cycles(surface))
    genus2 = 2 - chi - b
    if genus2 % 2 != 0 or genus2 < 0:
        raise SurfaceError(f"inconsistent Euler data: chi={chi}, boundary={b}")
    g = genus2 // 2
    if unmatched == 0:
        if T % 2 != 0:
            warnings.warn(f"closed surface with odd face count T={T}")
        if T < 4 * g - 4:
            warnings.warn(f"T={T} violates T >= 4g-4 for g={g}")
        if 2 * g > T:
            warnings.warn(f"g/T={g}/{T} exceeds 1/2")
    return SurfaceStats(V, E, T, chi, g, b)


def _face_components(surface: GluedSurface) -> list:
    T = surface.face_count
    comp = [-1] * T
    comps = []
    for f0 in range(T):
        if comp[f0] != -1:
            continue
        faces = [f0]
        comp[f0] = len(comps)
        stack = [f0]
        while stack:
            f = stack.pop()
            for s in range(3):
                p = surface.gluing[3 * f + s]
                if p == BOUNDARY:
                    continue
                f2 = p // 3
                if comp[f2] == -1:
                    comp[f2] = len(comps)
                    faces.append(f2)
                    stack.append(f2)
        comps.append(sorted(faces))
    return comps


def connected_components(surface: GluedSurface) -> list:
    """Split into connected surfaces, faces renumbered in ascending order."""
    parts = []
    for faces in _face_components(surface):
        index = {f: i for i, f in enumerate(faces)}
        gluing = []
        for f in faces:
            for s in range(3):
                p = surface.gluing[3 * f + s]
                if p == BOUNDARY:
                    gluing.append(BOUNDARY)
                else:
                    gluing.append(3 * index[p // 3] + p % 3)
        parts.append(GluedSurface(len(faces), tuple(gluing)))
    return parts


# --- TSF format ------------------------------------------------------------

def load_surface(text) -> GluedSurface:
    """Parse the TSF text format.

    Line 1 is `tsf v1`, line 2 is `T <count>`, then `g <a> <b>` lines with
    a < b sorted ascending by a.  `#` starts a comment.
    """
    if isinstance(text, bytes):
        text = text.decode("ascii")
    lines = []
    for ln, rawline in enumerate(text.splitlines(), start=1):
        stripped = rawline.split("#", 1)[0].strip()
        if stripped:
            lines.append((ln, stripped))
    if not lines or lines[0][1] != "tsf v1":
        raise SurfaceError("line 1: expected header 'tsf v1'")
    if len(lines) < 2 or not lines[1][1].startswith("T "):
        raise SurfaceError("line 2: expected 'T <count>'")
    try:
        T = int(lines[1][1][2:])
    except ValueError as exc:
        raise SurfaceError(f"line {lines[1][0]}: bad face count") from exc
    if T < 1:
        raise SurfaceError(f"line {lines[1][0]}: face count must be positive")
    gluing = [BOUNDARY] * (3 * T)
    prev_a = -1
    for ln, line in lines[2:]:
        parts = line.split()
        if len(parts) != 3 or parts[0] != "g":
            raise SurfaceError(f"line {ln}: expected 'g <dartA> <dartB>'")
        try:
            a, b = int(parts[1]), int(parts[2])
        except ValueError as exc:
            raise SurfaceError(f"line {ln}: darts must be integers") from exc
        if not (0 <= a < 3 * T and 0 <= b < 3 * T):
            raise SurfaceError(f"line {ln}: dart out of range")
        if a == b:
            raise SurfaceError(f"line {ln}: dart {a} glued to itself")
        if a >= b:
            raise SurfaceError(f"line {ln}: darts must satisfy dartA < dartB")
        if a <= prev_a:
            raise SurfaceError(f"line {ln}: gluing lines must ascend by dartA")
        if gluing[a] != BOUNDARY or gluing[b] != BOUNDARY:
            raise SurfaceError(f"line {ln}: dart glued twice")
        gluing[a] = b
        gluing[b] = a
        prev_a = a
    return GluedSurface(T, tuple(gluing))


def save_surface(surface: GluedSurface) -> str:
    """Serialize to TSF; canonical for the given labeling."""
    out = ["tsf v1", f"T {surface.face_count}"]
    for a, b in enumerate(surface.gluing):
        if b != BOUNDARY and a < b:
            out.append(f"g {a} {b}")
    return "\n".join(out) + "\n"


# --- subdivision ------------------------------------------------------------

def _subdivision_layout(k: int):
    """Index maps for the k-subdivision of one face.

    Upward cell (x,y) has corners (x,y),(x+1,y),(x,y+1); downward cell
    (x,y) has corners (x+1,y),(x+1,y+1),(x,y+1), both counterclockwise.
    """
    up = {}
    for y in range(k):
        for x in range(k - y):
            up[(x, y)] = len(up)
    down = {}
    for y in range(k - 1):
        for x in range(k - 1 - y):
            down[(x, y)] = len(down)
    return up, down


def _side_cell(k: int, s: int, t: int):
    """Upward cell and its side carrying sub-edge t of original side s."""
    if s == 0:
        return (t, 0), 0
    if s == 1:
        return (k - 1 - t, t), 1
    return (0, k - 1 - t), 2


def subdivide(surface: GluedSurface, k: int) -> GluedSurface:
    """Split every face into k^2 unit triangles.

    Original vertices persist with unchanged degree; new vertices are flat
    (interior degree 6) or lie on the boundary.
    """
    if k < 2:
        raise SurfaceError("subdivision factor must be at least 2")
    T = surface.face_count
    up, down = _subdivision_layout(k)
    per = k * k
    n_up = len(up)

    def up_dart(f, x, y, s):
        return 3 * (f * per + up[(x, y)]) + s

    def down_dart(f, x, y, s):
        return 3 * (f * per + n_up + down[(x, y)]) + s

    gluing = [BOUNDARY] * (3 * per * T)

    def glue(a, b):
        gluing[a] = b
        gluing[b] = a

    for f in range(T):
        for (x, y) in up:
            if x + y <= k - 2:
                glue(up_dart(f, x, y, 1), down_dart(f, x, y, 2))
            if y > 0:
                glue(up_dart(f, x, y, 0), down_dart(f, x, y - 1, 1))
            if x > 0:
                glue(up_dart(f, x, y, 2), down_dart(f, x - 1, y, 0))
    for d, p in enumerate(surface.gluing):
        if p == BOUNDARY or p < d:
            continue
        f, s = divmod(d, 3)
        f2, s2 = divmod(p, 3)
        for t in range(k):
            (x, y), side = _side_cell(k, s, t)
            (x2, y2), side2 = _side_cell(k, s2, k - 1 - t)
            glue(up_dart(f, x, y, side), up_dart(f2, x2, y2, side2))
    return GluedSurface(
        per * T, tuple(gluing), provenance=("subdivide", k, save_surface(surface))
    )


# --- conformal double -------------------------------------------------------

def mirror_dart(face_count: int, dart: int) -> int:
    """Dart of the mirror copy traversing the same edge backwards."""
    f, s = divmod(dart, 3)
    return 3 * (face_count + f) + (2 - s) % 3


def conformal_double(surface: GluedSurface) -> GluedSurface:
    """Glue the surface to its mirror image along the boundary.

    A connected surface of genus h with b boundary components doubles to a
    closed surface of genus 2h + b - 1.
    """
    if surface.is_closed():
        raise SurfaceError("surface is closed; nothing to double")
    T = surface.face_count
    gluing = [BOUNDARY] * (6 * T)
    for d, p in enumerate(surface.gluing):
        if p == BOUNDARY:
            m = mirror_dart(T, d)
            gluing[d] = m
            gluing[m] = d
        else:
            gluing[d] = p
            m, mp = mirror_dart(T, d), mirror_dart(T, p)
            gluing[m] = mp
    return GluedSurface(2 * T, tuple(gluing), provenance=("double", save_surface(surface)))


# --- canonical form ---------------------------------------------------------

def _bfs_code(surface: GluedSurface, start: int, best=None):
    """Partner sequence under BFS dart relabeling from `start`.

    Returns None early if the code provably exceeds `best`.
    """
    T = surface.face_count
    face_of = {start // 3: (0, start % 3)}  # old face -> (new face, base side)
    new_faces = [start // 3]
    code = []
    n = 0
    while n < 3 * len(new_faces):
        nf, i = divmod(n, 3)
        old_face = new_faces[nf]
        old = 3 * old_face + (face_of[old_face][1] + i) % 3
        p = surface.gluing[old]
        if p == BOUNDARY:
            entry = 3 * T  # sorts after every real dart
        else:
            pf = p // 3
            if pf in face_of:
                npf, pbs = face_of[pf]
                entry = 3 * npf + (p % 3 - pbs) % 3
            else:
                face_of[pf] = (len(new_faces), p % 3)
                new_faces.append(pf)
                entry = 3 * (len(new_faces) - 1)
        code.append(entry)
        if best is not None:
            prior = best[n]
            if entry > prior:
                return None
            if entry < prior:
                best = None  # now strictly smaller; stop comparing
        n += 1
    return code


def canonical_form(surface: GluedSurface) -> bytes:
    """Relabeling-invariant encoding.

    Two connected surfaces are orientation-preserving simplicially
    isomorphic exactly when their canonical forms agree.
    """
    if not surface.is_connected():
        raise SurfaceError("canonical form requires a connected surface")
    best = None
    for start in range(surface.dart_count):
        code = _bfs_code(surface, start, best)
        if code is not None and (best is None or code < best):
            best = code
    header = f"cf1 {surface.face_count}:".encode()
    return header + b",".join(str(x).encode() for x in best)


def surface_from_code(face_count: int, code: Sequence) -> GluedSurface:
    """Rebuild the labeled surface encoded by a BFS partner sequence."""
    gluing = [BOUNDARY] * (3 * face_count)
    for d, p in enumerate(code):
        if p != 3 * face_count:
            gluing[d] = p
            gluing[p] = d
    return GluedSurface(face_count, tuple(gluing))


def load_canonical_form(blob: bytes) -> GluedSurface:
    head, _, body = blob.partition(b":")
    if not head.startswith(b"cf1 "):
        raise SurfaceError("not a canonical form blob")
    T = int(head[4:])
    return surface_from_code(T, [int(x) for x in body.split(b",")])


def relabel(surface: GluedSurface, face_perm: Sequence, rotations: Sequence) -> GluedSurface:
    """Apply an orientation-preserving relabeling (for tests and search).

    Face f becomes face_perm[f]; its sides rotate by rotations[f].
    """
    T = surface.face_count
    new = [BOUNDARY] * (3 * T)

    def image(d):
        f, s = divmod(d, 3)
        return 3 * face_perm[f] + (s + rotations[f]) % 3

    for d, p in enumerate(surface.gluing):
        if p != BOUNDARY:
            new[image(d)] = image(p)
    return GluedSurface(T, tuple(new))


# --- random model -----------------------------------------------------------

def random_surface(T: int, seed: int, max_retries: int = 100000) -> GluedSurface:
    """Uniform closed gluing of T triangles, conditioned on connectivity.

    Draws a uniform fixed-point-free involution on the 3T darts and
    resamples until the result is connected.  Deterministic per seed.
    """
    if T < 2 or T % 2 != 0:
        raise SurfaceError("T must be even and at least 2")
    rng = random.Random(seed)
    for _ in range(max_retries):
        darts = list(range(3 * T))
        gluing = [BOUNDARY] * (3 * T)
        while darts:
            a = darts.pop(0)
            b = darts.pop(rng.randrange(len(darts)))
            gluing[a] = b
            gluing[b] = a
        surface = GluedSurface(T, tuple(gluing))
        if surface.is_connected():
            return surface
    raise SurfaceError("exceeded retry limit while sampling a connected surface")
