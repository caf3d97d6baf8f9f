"""Acceptance suite: nine exact combinatorial checks, one line each.

Every check prints a single machine-readable line
`ACCEPTANCE <n>: pass|fail <summary>` and asserts the pass condition.
"""

import sys

from equilat.eisenstein import Eisenstein
from equilat.surface import (
    GluedSurface,
    canonical_form,
    euler_and_genus,
    save_surface,
    subdivide,
    vertex_orbits,
)
from equilat.translation import (
    build_period_map,
    detect_structures,
    face_types,
    flat_area,
)
from equilat.degree_bound import (
    bounded_degree_map,
    build_TH,
    check_tri_lb,
    recover_original,
    separation_check,
    th_layer_sizes,
)
from equilat.parallelogram import decompose
from equilat.cover import canonical_cover, verify_cover
from equilat.census import brute_force_classes, enumerate_surfaces

SIXTH_ROOTS = {Eisenstein(1, 0), Eisenstein(0, 1), Eisenstein(-1, 1),
               Eisenstein(-1, 0), Eisenstein(0, -1), Eisenstein(1, -1)}


def report(n, ok, summary):
    line = f"ACCEPTANCE {n}: {'pass' if ok else 'fail'} {summary}"
    print("\n" + line)
    if sys.stdout is not sys.__stdout__:  # also show through pytest capture
        print(line, file=sys.__stdout__)
    assert ok, f"acceptance criterion {n} failed: {summary}"


def test_acceptance_1_euler_genus(census8):
    checked = 0
    ok = True
    for T, classes in census8.items():
        for s in classes:
            stats = euler_and_genus(s)
            ok = ok and stats.vertices - 3 * T // 2 + T == 2 - 2 * stats.genus
            ok = ok and stats.genus >= 0 and T >= 4 * stats.genus - 4
            checked += 1
    report(1, ok, f"Euler formula and T >= 4g-4 on {checked} census classes")


def test_acceptance_2_six_structure_law(census8):
    checked = with_structure = 0
    ok = True
    for classes in census8.values():
        for s in classes:
            structures = detect_structures(s)
            ok = ok and len(structures) in (0, 6)
            if structures:
                with_structure += 1
                types = face_types(s, structures[0])
                ok = ok and all(types[d // 3] != types[p // 3]
                                for d, p in enumerate(s.gluing))
            checked += 1
    report(2, ok, f"0-or-6 structures on {checked} classes "
                  f"({with_structure} admit one, all bipartite)")


def test_acceptance_3_period_lattice(census8):
    generators = 0
    ok = True
    for classes in census8.values():
        for s in classes:
            structures = detect_structures(s)
            if not structures:
                continue
            st = structures[0]
            for d in range(s.dart_count):
                ok = ok and st.period(d) in SIXTH_ROOTS
            pm = build_period_map(s, st)
            for _, h in pm.holonomies:
                ok = ok and h.in_sublattice(1)
                generators += 1
    report(3, ok, f"edge periods are sixth roots; {generators} loop "
                  "holonomies lie in Z + wZ")


def test_acceptance_4_th_suite():
    # exhaustive for small d, then a deterministic geometric sample up to 10^4
    sample = list(range(8, 320)) + [400, 500, 640, 1000, 1600, 2500, 5000, 10**4]
    ok = True
    for d in sample:
        th = build_TH(d)
        stats = euler_and_genus(th.surface)
        deg = {r.vertex: (r.degree, r.boundary) for r in vertex_orbits(th.surface)}
        ok = ok and len(th.boundary_darts) == d
        ok = ok and stats.chi == 1 and stats.vertices <= 3 * d
        ok = ok and all(dg <= (4 if b else 7) for dg, b in deg.values())
        sizes = th_layer_sizes(d)
        for i in range(1, len(sizes) - 1):  # outer ring of each annulus past the first
            ok = ok and any(deg[v][0] == 7 for v in th.layers[i])
    report(4, ok, f"layered disk invariants for {len(sample)} values of d up to 10^4")


def test_acceptance_5_degree_bound(corpus200):
    ok = True
    mu_values = []
    for s in corpus200:
        result = bounded_degree_map(s)
        b = result.surface
        ok = ok and max(r.degree for r in vertex_orbits(b)) <= 7
        ok = ok and euler_and_genus(b).genus == euler_and_genus(s).genus
        cert = check_tri_lb(b)
        ok = ok and cert.ok and separation_check(b, cert).ok
        ok = ok and save_surface(recover_original(b)) == save_surface(s)
        if result.mu is not None:
            mu_values.append(result.mu)
    mu_max = max(mu_values)
    ok = ok and mu_max <= 8.0  # frozen from the measured corpus maximum 7.43
    report(5, ok, f"bounded-degree map on {len(corpus200)} surfaces, "
                  f"measured mu max {mu_max:.2f}")


def test_acceptance_6_parallelograms(tran_lb_corpus):
    ok = True
    faces_total = 0
    for surface, st in tran_lb_corpus:
        g = euler_and_genus(surface).genus
        high = {r.vertex for r in vertex_orbits(surface) if r.degree > 6}
        B, geoms = decompose(surface, st)
        ok = ok and len(B.faces) <= 12 * (g - 1)
        ok = ok and sum(geo.triangle_count for geo in geoms) == surface.face_count
        for geo in geoms:
            turns = [c[1] for c in geo.corner_vertices]
            ok = ok and geo.closes and len(turns) == 4
            ok = ok and sorted(turns) == [1, 1, 2, 2] and turns[0] != turns[1]
            ok = ok and geo.length >= 3 and geo.width >= 3
            ok = ok and any(c[0] in high for c in geo.corner_vertices)
            faces_total += 1
    report(6, ok, f"{faces_total} parallelogram faces verified on "
                  f"{len(tran_lb_corpus)} locally bounded surfaces")


def test_acceptance_7_covers(corpus200):
    ok = True
    for s in corpus200:
        cover = canonical_cover(s)
        rep = verify_cover(s, cover, base_locally_bounded=check_tri_lb(s).ok)
        ok = ok and rep.ok and rep.component_count <= 6
        ok = ok and sum(rep.component_degrees) == 6
        if detect_structures(s):
            base = canonical_form(s)
            ok = ok and len(cover.components) == 6
            ok = ok and all(canonical_form(c.surface) == base
                            for c in cover.components)
    report(7, ok, f"canonical covers verified on {len(corpus200)} surfaces")


def test_acceptance_8_census_oracle():
    ok = True
    for T in (2, 4):
        fast = sorted(canonical_form(s) for s in enumerate_surfaces(T))
        brute = sorted(canonical_form(s) for s in brute_force_classes(T))
        ok = ok and fast == brute
    seq = [s.gluing for s in enumerate_surfaces(6, workers=1)]
    par = [s.gluing for s in enumerate_surfaces(6, workers=8)]
    ok = ok and seq == par
    report(8, ok, "T=2,4 match the brute-force oracle; 1 and 8 workers agree")


def test_acceptance_9_area_identity(tran_lb_corpus):
    # flat_area counts unit triangles, each of area sqrt(3)/4; the
    # decomposition must tile exactly: each ell x w face holds 2*ell*w units
    ok = True
    for surface, st in tran_lb_corpus:
        ok = ok and flat_area(surface) == surface.face_count
        _, geoms = decompose(surface, st)
        ok = ok and sum(2 * g.length * g.width for g in geoms) == flat_area(surface)
    hexes = subdivide(GluedSurface(2, (3, 4, 5, 0, 1, 2)), 5)
    ok = ok and flat_area(hexes) == 50
    report(9, ok, "flat area equals sqrt(3)/4 per triangle and the "
                  "parallelogram tiles sum to it")
