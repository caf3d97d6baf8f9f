"""Exhaustive census of closed connected glued surfaces for small T.

Surfaces are generated directly in canonical-code space: darts are
processed in order, each unmatched dart either glues to a later unmatched
dart of an already-opened face or opens the next face at its side 0.  The
resulting gluing equals the breadth-first code of the surface read from
dart 0, so a leaf is kept exactly when no other start dart yields a
lexicographically smaller code.  Each isomorphism class then appears
exactly once, and connectivity is automatic.
"""

from __future__ import annotations

import csv
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

from equilat.surface import (
    GluedSurface,
    SurfaceError,
    _bfs_code,
    euler_and_genus,
    vertex_orbits,
)
from equilat.translation import detect_structures
from equilat.degree_bound import check_tri_lb

__all__ = [
    "CensusRow",
    "enumerate_surfaces",
    "count_table",
    "write_table",
    "brute_force_classes",
    "DEFAULT_MAX_T",
]

DEFAULT_MAX_T = 10


def _max_t_limit() -> int:
    value = os.environ.get("EQUILAT_MAX_T")
    return int(value) if value else DEFAULT_MAX_T


def _is_minimal(surface: GluedSurface) -> bool:
    code = list(surface.gluing)
    for start in range(1, surface.dart_count):
        other = _bfs_code(surface, start, code)
        if other is not None and other < code:
            return False
    return True


def _search(T: int, prefix: tuple, collect: Callable) -> None:
    """Depth-first completion of a partial canonical-code gluing."""
    n_darts = 3 * T
    gluing = [-1] * n_darts
    opened = 1
    for n, p in prefix:
        gluing[n] = p
        gluing[p] = n
        opened = max(opened, p // 3 + 1)
    stack = [(gluing, opened, _next_unset(gluing, 0))]
    while stack:
        gluing, opened, n = stack.pop()
        if n == n_darts:
            if opened == T:
                surface = GluedSurface(T, tuple(gluing))
                if _is_minimal(surface):
                    collect(surface)
            continue
        if n >= 3 * opened:
            # every dart of the opened faces is matched internally, so the
            # unopened faces can never connect; dead branch
            continue
        choices = []
        if opened < T:
            choices.append(3 * opened)
        for p in range(n + 1, 3 * opened):
            if gluing[p] == -1:
                choices.append(p)
        for p in choices:
            g2 = list(gluing)
            g2[n] = p
            g2[p] = n
            stack.append((g2, max(opened, p // 3 + 1), _next_unset(g2, n + 1)))


def _next_unset(gluing, start: int) -> int:
    n = start
    while n < len(gluing) and gluing[n] != -1:
        n += 1
    return n


def _frontier(T: int, depth: int) -> list:
    """Partial gluings after deciding the first `depth` darts."""
    tasks = [()]
    for _ in range(depth):
        grown = []
        for prefix in tasks:
            gluing = [-1] * (3 * T)
            opened = 1
            for n, p in prefix:
                gluing[n] = p
                gluing[p] = n
                opened = max(opened, p // 3 + 1)
            n = _next_unset(gluing, 0)
            if n == 3 * T:
                grown.append(prefix)
                continue
            if n >= 3 * opened:
                continue
            if opened < T:
                grown.append(prefix + ((n, 3 * opened),))
            for p in range(n + 1, 3 * opened):
                if gluing[p] == -1:
                    grown.append(prefix + ((n, p),))
        tasks = grown
    return tasks


def _run_task(args) -> list:
    T, prefix = args
    out = []
    _search(T, prefix, out.append)
    return [s.gluing for s in out]


def enumerate_surfaces(T: int, filter: Optional[Callable] = None,
                       workers: int = 1) -> list:
    """All closed connected gluings of T triangles up to isomorphism.

    Returns one canonically labeled representative per class, in sorted
    code order, optionally filtered by a predicate on the surface.
    """
    if T % 2 != 0:
        raise SurfaceError("no closed surface has an odd number of faces")
    if not 2 <= T <= _max_t_limit():
        raise SurfaceError(
            f"T={T} outside the configured census range 2..{_max_t_limit()} "
            "(set EQUILAT_MAX_T to raise the cap)")
    if workers <= 1:
        found = []
        _search(T, (), found.append)
    else:
        tasks = [(T, prefix) for prefix in _frontier(T, 3)]
        found = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for gluings in pool.map(_run_task, tasks, chunksize=1):
                found.extend(GluedSurface(T, g) for g in gluings)
    found.sort(key=lambda s: s.gluing)
    if filter is not None:
        found = [s for s in found if filter(s)]
    return found


def brute_force_classes(T: int) -> list:
    """Independent oracle: all fixed-point-free involutions on 3T darts,
    connected ones only, deduplicated by exhaustive relabeling search."""
    from equilat.surface import canonical_form

    n = 3 * T
    classes = {}

    def pairings(remaining):
        if not remaining:
            yield []
            return
        a = remaining[0]
        for i in range(1, len(remaining)):
            b = remaining[i]
            rest = remaining[1:i] + remaining[i + 1:]
            for tail in pairings(rest):
                yield [(a, b)] + tail

    for pairing in pairings(list(range(n))):
        gluing = [0] * n
        for a, b in pairing:
            gluing[a] = b
            gluing[b] = a
        surface = GluedSurface(T, tuple(gluing))
        if not surface.is_connected():
            continue
        key = canonical_form(surface)
        classes.setdefault(key, surface)
    return [classes[k] for k in sorted(classes)]


@dataclass(frozen=True)
class CensusRow:
    T: int
    genus: int
    count: int
    tran_count: int  # classes admitting a translation structure
    lb_count: int  # classes passing the locally bounded triangulation check
    max_degree_hist: tuple  # sorted (max vertex degree, class count) pairs
    loop_count: int  # diagnostic: classes with a self-glued face or doubled edge


def _has_loop_or_multiedge(surface: GluedSurface) -> bool:
    from equilat.surface import corner_vertex_map, _head_corner

    cv = corner_vertex_map(surface)
    seen = set()
    for d in range(surface.dart_count):
        p = surface.gluing[d]
        if d > p:
            continue
        v, w = cv[d], cv[_head_corner(d)]
        if v == w or (min(v, w), max(v, w)) in seen:
            return True
        seen.add((min(v, w), max(v, w)))
    return False


def count_table(T_max: int, workers: int = 1) -> list:
    """Census rows for all even T up to T_max, split by genus."""
    rows = []
    for T in range(2, T_max + 1, 2):
        buckets = {}
        for surface in enumerate_surfaces(T, workers=workers):
            g = euler_and_genus(surface).genus
            b = buckets.setdefault(g, {"count": 0, "tran": 0, "lb": 0,
                                       "hist": {}, "loops": 0})
            b["count"] += 1
            if detect_structures(surface):
                b["tran"] += 1
            if check_tri_lb(surface).ok:
                b["lb"] += 1
            md = max(r.degree for r in vertex_orbits(surface))
            b["hist"][md] = b["hist"].get(md, 0) + 1
            if _has_loop_or_multiedge(surface):
                b["loops"] += 1
        for g in sorted(buckets):
            b = buckets[g]
            rows.append(CensusRow(T, g, b["count"], b["tran"], b["lb"],
                                  tuple(sorted(b["hist"].items())), b["loops"]))
    return rows


def write_table(rows, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["T", "genus", "count", "tran_count", "lb_count"])
        for row in rows:
            writer.writerow([row.T, row.genus, row.count,
                             row.tran_count, row.lb_count])
