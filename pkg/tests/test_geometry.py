import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from corrlab import CylGeometry, ParameterError, UraGeometry
from corrlab.geometry import (
    cyl_azimuth_phase,
    default_radius,
    most_square_factorization,
    ura_azimuth_phase,
    zenith_phase,
)


def test_zenith_phase_examples():
    assert zenith_phase(0, 0.5, 1.234) == 0.0
    assert zenith_phase(1, 0.5, math.pi / 2) == pytest.approx(0.0, abs=1e-15)
    assert zenith_phase(2, 0.5, 0.0875) == pytest.approx(6.259147830709063, rel=1e-12)


def test_ura_azimuth_phase_examples():
    assert ura_azimuth_phase(0, 0.5, 0.3, 0.4) == 0.0
    assert ura_azimuth_phase(3, 0.5, 0.3, 0.0) == 0.0
    assert ura_azimuth_phase(1, 0.5, 0.0875, 0.0875) == pytest.approx(0.27348842299712095, rel=1e-12)


def test_cyl_phase_examples():
    assert cyl_azimuth_phase(0, 1.0, 0.2, 0.3, 0.4) == 0.0
    assert cyl_azimuth_phase(5, 1.0, 0.2, math.pi / 2, 0.4) == pytest.approx(0.0, abs=1e-14)


@given(
    b=st.integers(0, 64),
    d=st.floats(0.05, 2.0),
    phi=st.floats(-math.pi, math.pi),
    theta=st.floats(0.01, 3.1),
)
def test_cyl_reduces_to_ura(b, d, phi, theta):
    assert cyl_azimuth_phase(b, d, 0.0, phi, theta) == ura_azimuth_phase(b, d, phi, theta)


@given(a=st.integers(0, 64), d=st.floats(0.05, 2.0), theta=st.floats(0.0, math.pi))
def test_phases_linear_in_index(a, d, theta):
    assert zenith_phase(a, d, theta) == pytest.approx(a * zenith_phase(1, d, theta), rel=1e-12, abs=1e-12)
    assert ura_azimuth_phase(a, d, 0.3, theta) == pytest.approx(
        a * ura_azimuth_phase(1, d, 0.3, theta), rel=1e-12, abs=1e-12
    )


def test_ura_geometry():
    g = UraGeometry(4, 5)
    assert g.m == 20
    assert g.k_spacing_unit == pytest.approx(2 * math.pi)
    with pytest.raises(ParameterError):
        UraGeometry(0, 4)
    with pytest.raises(ParameterError):
        UraGeometry(2, 2, d1=0.0)


def test_cyl_geometry_defaults():
    g = CylGeometry(2, 8)
    assert len(g.anchor_angles) == 8
    np.testing.assert_allclose(g.anchor_angles, 2 * np.pi * np.arange(8) / 8)
    # adjacent chord of 0.5 wavelength
    chord = 2 * g.radius * math.sin(math.pi / 8)
    assert chord == pytest.approx(0.5)
    assert default_radius(8) == g.radius


def test_cyl_geometry_validation():
    with pytest.raises(ParameterError):
        CylGeometry(2, 3, anchor_angles=(0.0, 2.0, 1.0))
    with pytest.raises(ParameterError):
        CylGeometry(2, 3, anchor_angles=(0.0, 1.0))
    with pytest.raises(ParameterError):
        CylGeometry(2, 3, radius=-1.0)


@pytest.mark.parametrize(
    "m,expected", [(100, (10, 10)), (200, (10, 20)), (1000, (25, 40)), (7, (1, 7)), (64, (8, 8))]
)
def test_most_square(m, expected):
    assert most_square_factorization(m) == expected
