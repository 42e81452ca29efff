"""Shared fixtures and frozen reference values for the test suite."""

import math

import pytest

from geophase import Radii, example_gallery

PI = math.pi

# the standard radius pairs exercised throughout
TABLE_RADII = Radii(2.0, 1.0)
COIN_RADII = Radii(1.0, 1.0)

# gallery name -> extra kwargs needed to build it
GALLERY_KWARGS = {
    "i": {},
    "ii": {},
    "iii": {},
    "iv": {"beta0": PI / 3.0},
    "v": {},
    "vi": {},
}

# name -> (delta_d factor of a/b, A_plus, 2 pi I_plus, delta_g, winding n)
# delta_d is the a/b multiple of the swept angle; the rest are radius-free.
FROZEN = {
    "i":   (2.0 * PI,  4.0 * PI, 2.0 * PI,  2.0 * PI,  1),
    "ii":  (2.0 * PI,  2.0 * PI, 2.0 * PI,  0.0,       1),
    "iii": (2.0 * PI,  0.0,      2.0 * PI, -2.0 * PI,  1),
    "iv":  (2.0 * PI,  3.0 * PI, 2.0 * PI,  PI,        1),
    "v":   (0.0,       0.5 * PI, 0.0,       0.5 * PI,  0),
    "vi":  (-2.0 * PI, 0.5 * PI, 2.0 * PI, -1.5 * PI, -1),
}


def gallery(name, radii=COIN_RADII):
    return example_gallery(name, radii=radii, **GALLERY_KWARGS[name])


@pytest.fixture(scope="session")
def gallery_paths():
    """All six stock motions with a = b = 1."""
    return {name: gallery(name) for name in GALLERY_KWARGS}


@pytest.fixture(scope="session")
def table_paths():
    """All six stock motions with a = 2, b = 1."""
    return {name: gallery(name, TABLE_RADII) for name in GALLERY_KWARGS}
