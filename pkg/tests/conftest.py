import pytest

from equilat.census import enumerate_surfaces
from equilat.surface import GluedSurface, random_surface


@pytest.fixture(scope="session")
def census8():
    """All isomorphism classes of closed connected gluings, T = 2..8."""
    return {T: enumerate_surfaces(T) for T in (2, 4, 6, 8)}


@pytest.fixture(scope="session")
def hex_torus():
    return GluedSurface(2, (3, 4, 5, 0, 1, 2))


@pytest.fixture(scope="session")
def pillowcase():
    return GluedSurface(2, (3, 5, 4, 0, 2, 1))


@pytest.fixture(scope="session")
def corpus200(census8):
    """Census classes plus random surfaces with T up to 40, 200 total."""
    surfaces = []
    surfaces.extend(census8[4])
    surfaces.extend(census8[6])
    surfaces.extend(census8[8][:78])
    for i, T in enumerate([10] * 12 + [14] * 8 + [20] * 6 + [28] * 2 + [40] * 2):
        surfaces.append(random_surface(T, seed=1000 + i))
    assert len(surfaces) == 200
    return surfaces


@pytest.fixture(scope="session")
def tran_lb_corpus(census8):
    """3-subdivisions of the genus >= 2 translation-admitting census classes
    (subdividing by 3 scales all periods into 3Z + 3wZ)."""
    from equilat.surface import euler_and_genus, subdivide
    from equilat.translation import detect_structures, is_locally_bounded_tran

    out = []
    for T in (6, 8):
        for s in census8[T]:
            structures = detect_structures(s)
            if structures and euler_and_genus(s).genus >= 2:
                sub = subdivide(s, 3)
                st = detect_structures(sub)[0]
                assert is_locally_bounded_tran(sub, st).ok
                out.append((sub, st))
    assert out
    return out
