import numpy as np
import pytest

from imexdde import imex_bdf_coefficients


@pytest.fixture(scope="session")
def bdf2():
    return imex_bdf_coefficients(2)


@pytest.fixture(scope="session")
def bdf3():
    return imex_bdf_coefficients(3)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def hull_distance(points: np.ndarray, query: complex) -> float:
    """Distance from a complex point to the convex hull of complex points."""
    from shapely.geometry import MultiPoint, Point

    hull = MultiPoint([(p.real, p.imag) for p in points]).convex_hull
    return Point(query.real, query.imag).distance(hull)
