import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from movsig.channel import (
    SPEED_OF_LIGHT,
    TwoRayEnvironment,
    array_gain,
    cascaded_channel,
    fis_link_channel,
    los_channel,
    path_gain,
    radiation_pattern_los,
    radiation_pattern_nlos,
    steering_vector,
    two_ray_channel,
    wavelength,
)
from movsig.freqplan import coverage_nlos
from movsig.geometry import FarFieldLink, UlaGeometry

angles = st.floats(-np.pi / 2, np.pi / 2)
freqs = st.floats(1e9, 1e11)


def test_wavelength_uses_exact_c():
    assert SPEED_OF_LIGHT == 299_792_458.0
    assert wavelength(SPEED_OF_LIGHT) == 1.0


@pytest.mark.parametrize("fn", [los_channel, fis_link_channel])
def test_channel_trivial_examples(fn):
    lam = 0.01
    h = fn(UlaGeometry(2, lam), FarFieldLink(lam, 0.0), lam)
    np.testing.assert_allclose(h, [1, 1], atol=1e-12)
    h = fn(UlaGeometry(1, 0.3), FarFieldLink(lam / 2, np.pi / 4), lam)
    np.testing.assert_allclose(h, [-1], atol=1e-12)


@pytest.mark.parametrize("fn", [los_channel, fis_link_channel])
def test_channel_matches_scalar_reference(fn):
    # per-element cmath evaluation, frozen
    expected = [
        -0.8023350552371772 + 0.5968739055592528j,
        0.8036312853762757 - 0.595127513365392j,
        -0.8049237142605579 + 0.593378306159728j,
        0.8062123357764378 - 0.5916262922165482j,
    ]
    h = fn(UlaGeometry(4, 0.0375), FarFieldLink(10.0, np.pi / 6), wavelength(8e9))
    np.testing.assert_allclose(h, expected, rtol=0, atol=1e-12)


@given(st.integers(1, 64), angles, freqs, st.floats(1.0, 100.0))
def test_channel_unit_modulus_and_mirror(n, theta, f, d):
    geom = UlaGeometry(n, SPEED_OF_LIGHT / 8e9)
    wl = wavelength(f)
    h = los_channel(geom, FarFieldLink(d, theta), wl)
    np.testing.assert_allclose(np.abs(h), 1.0, atol=1e-12)
    h_mirror = los_channel(geom, FarFieldLink(d, -theta), wl)
    np.testing.assert_allclose(h, h_mirror[::-1], atol=1e-9)


def test_cascaded_examples():
    assert cascaded_channel([1], [np.pi], [1]) == pytest.approx(-2)
    assert cascaded_channel([1, 1j], [np.pi, np.pi], [1, 1]) == pytest.approx(-2 * (1 + 1j))
    rng = np.random.default_rng(1)
    h_r = np.exp(1j * rng.uniform(0, 2 * np.pi, 8))
    h_t = np.exp(1j * rng.uniform(0, 2 * np.pi, 8))
    assert abs(cascaded_channel(h_r, np.zeros(8), h_t)) < 1e-12


def test_cascaded_length_mismatch():
    with pytest.raises(ValueError, match="length mismatch"):
        cascaded_channel([1, 1], [0.0], [1, 1])


@given(st.integers(1, 32), st.integers(0, 2**32 - 1))
def test_cascaded_bounds(n, seed):
    rng = np.random.default_rng(seed)
    h_r = np.exp(1j * rng.uniform(0, 2 * np.pi, n))
    h_t = np.exp(1j * rng.uniform(0, 2 * np.pi, n))
    theta = rng.uniform(0, 2 * np.pi, n)
    assert abs(cascaded_channel(h_r, theta, h_t)) <= 2 * n * (1 + 1e-12)
    fis = cascaded_channel(h_r, np.full(n, np.pi), h_t)
    assert fis == pytest.approx(-2 * np.sum(h_r * h_t), abs=1e-12 * n)


def test_path_gain_examples():
    lam = 0.05
    assert path_gain(lam / (4 * np.pi), lam) == pytest.approx(1.0, rel=1e-15)
    assert path_gain(10.0, wavelength(8e9)) == pytest.approx(8.892865089286642e-08, rel=1e-12)
    assert path_gain(20.0, lam) == pytest.approx(path_gain(10.0, lam) / 4, rel=1e-14)


@given(st.floats(0.1, 1e3), freqs)
def test_path_gain_identity(d, f):
    wl = wavelength(f)
    assert path_gain(d, wl) * (4 * np.pi * d / wl) ** 2 == pytest.approx(1.0, rel=1e-12)
    assert path_gain(d, wavelength(f * 1.01)) < path_gain(d, wl)


def test_steering_vector_examples():
    lam = 0.02
    a = steering_vector(0.0, UlaGeometry(5, 0.013), lam)
    np.testing.assert_allclose(a, np.ones(5) / np.sqrt(5))
    a = steering_vector(np.pi / 2, UlaGeometry(2, lam / 2), lam)
    np.testing.assert_allclose(a, np.array([1, -1]) / np.sqrt(2), atol=1e-12)


@given(st.integers(1, 128), angles)
def test_steering_vector_normalised(n, theta):
    a = steering_vector(theta, UlaGeometry(n, 0.04), 0.03)
    assert np.linalg.norm(a) == pytest.approx(1.0, abs=1e-12)


def test_pattern_los_broadside_and_grating_lobe():
    geom = UlaGeometry(16, SPEED_OF_LIGHT / 8e9)
    w = np.ones(16) / 4
    assert radiation_pattern_los([0.0], w, geom, 0.05)[0] == pytest.approx(1.0, abs=1e-12)
    theta0 = np.deg2rad(40.0)
    wl = geom.spacing * abs(np.sin(theta0))  # grating lobe towards theta0
    assert radiation_pattern_los([theta0], w, geom, wl)[0] == pytest.approx(1.0, abs=1e-9)
    grid = np.linspace(-np.pi / 2, np.pi / 2, 2001)
    assert radiation_pattern_los(grid, w, geom, 0.021).max() <= 1 + 1e-12


def test_pattern_nlos_specular_and_coverage_edge():
    geom = UlaGeometry(16, 0.03)
    theta_t = np.deg2rad(-35.0)
    assert radiation_pattern_nlos([-theta_t], theta_t, geom, 0.017)[0] == pytest.approx(1.0, abs=1e-12)
    pattern = radiation_pattern_nlos(np.linspace(-1.5, 1.5, 7), 0.3, UlaGeometry(1, 0.03), 0.01)
    np.testing.assert_allclose(pattern, 1.0, atol=1e-12)

    theta_t = np.deg2rad(-50.0)
    f_min = 8e9
    geom = UlaGeometry(16, SPEED_OF_LIGHT / (f_min * (1 - np.sin(theta_t))))
    edge = coverage_nlos(1.8, theta_t).theta_minus
    r = radiation_pattern_nlos([edge], theta_t, geom, wavelength(1.8 * f_min))[0]
    assert r == pytest.approx(1.0, abs=1e-6)


@given(st.floats(-50, 50), st.integers(1, 128))
def test_array_gain_matches_direct_sum(psi, n):
    direct = abs(np.sum(np.exp(1j * psi * np.arange(n)))) ** 2
    assert array_gain(psi, n) == pytest.approx(direct, rel=1e-9, abs=1e-9 * n**2)


def test_array_gain_at_grating_lobes():
    for k in range(-3, 4):
        assert array_gain(2 * np.pi * k, 64) == pytest.approx(64**2, rel=1e-12)
        assert array_gain(2 * np.pi * k + 1e-8, 64) == pytest.approx(64**2, rel=1e-9)


def test_two_ray_examples():
    wl = wavelength(2.4e9)
    env = TwoRayEnvironment(10.0, 6.0, 8.0, 0.0)
    a_rt = wl / (4 * math.pi * 10.0)
    assert two_ray_channel(env, wl) == pytest.approx(a_rt * cmath.exp(-2j * math.pi * 10.0 / wl))

    env = TwoRayEnvironment(10.0, 4.0, 6.0, -1.0)
    a_rt = wl / (4 * math.pi * 10.0)
    a_rot = wl / (4 * math.pi * 10.0)
    expected = (a_rt - a_rot) * cmath.exp(-2j * math.pi * 10.0 / wl)
    assert two_ray_channel(env, wl) == pytest.approx(expected, abs=1e-15)


def test_two_ray_envelope_over_an_octave():
    env = TwoRayEnvironment(10.0, 7.0, 9.0, -0.7)
    f = np.linspace(2e9, 4e9, 200001)
    wl = wavelength(f)
    h = two_ray_channel(env, wl)
    a_rt = wl / (4 * np.pi * env.d_rt)
    a_rot = 0.7 * wl / (4 * np.pi * (env.d_ro + env.d_ot))
    assert np.all(np.abs(h) <= a_rt + a_rot + 1e-15)
    assert np.all(np.abs(h) >= np.abs(a_rt - a_rot) - 1e-15)
    # the phasor difference spans several turns over the octave, so both extremes are reached
    ratio = (np.abs(h) - np.abs(a_rt - a_rot)) / (2 * np.minimum(a_rt, a_rot))
    assert ratio.min() < 1e-4 and ratio.max() > 1 - 1e-4


@pytest.mark.parametrize("kwargs", [dict(d_rt=0.0), dict(gamma=1.5)])
def test_two_ray_validation(kwargs):
    base = dict(d_rt=1.0, d_ro=1.0, d_ot=1.0, gamma=0.5)
    base.update(kwargs)
    with pytest.raises(ValueError):
        TwoRayEnvironment(**base)
