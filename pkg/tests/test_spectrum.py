import math

import numpy as np
import pytest

from spdc_oam import (
    DegeneracyError,
    DomainError,
    PolarGrid,
    RadialMeasure,
    SpectralConfig,
    TransverseVec,
    angular_fourier_decompose,
    extrinsic_oam_spectrum,
    f_minus,
    parseval_relative_error,
    pm_weight,
)
from spdc_oam.phasematching import azimuth_grid

from conftest import kwiat, type_one

MONO = SpectralConfig()


@pytest.fixture(scope="module")
def small_grid():
    return PolarGrid.gauss_legendre(n_radial=48, p_max=2.0, n_phi=128)


def test_spectral_config_defaults_and_guards():
    assert MONO.samples == ((0.0, 1.0),)
    with pytest.raises(DomainError):
        SpectralConfig(monochromatic=True, samples=((0.01, 1.0),))
    with pytest.raises(DomainError):
        SpectralConfig(monochromatic=False, samples=((0.0, 0.0),))
    with pytest.raises(DomainError):
        SpectralConfig(monochromatic=False, samples=((0.0, -1.0), (0.1, 2.0)))


def test_f_minus_examples():
    c = kwiat()
    assert f_minus(c, MONO, TransverseVec(0.0, 0.0)) == 500.0
    x = (-1 / (4 * 14.38) - 0.034) * 250.0
    assert f_minus(c, MONO, TransverseVec(1.0, 0.0)) == pytest.approx(500 * math.sin(x) / x, rel=1e-13)
    delta = 0.004
    two = SpectralConfig(monochromatic=False, samples=((delta, 0.5), (-delta, 0.5)))
    p = TransverseVec(0.7, 0.2)
    w1 = pm_weight(c, -delta - (0.53) / (4 * 14.38) - 0.034 * 0.7)
    w2 = pm_weight(c, delta - (0.53) / (4 * 14.38) - 0.034 * 0.7)
    assert f_minus(c, two, p) == pytest.approx(0.5 * (w1 + w2), rel=1e-12)


def test_decompose_examples():
    phi = azimuth_grid(32)
    const = angular_fourier_decompose(np.ones(32), 4)
    assert const[0] == pytest.approx(1.0, abs=1e-15)
    assert all(abs(v) < 1e-15 for m, v in const.items() if m)
    cos = angular_fourier_decompose(np.cos(phi), 4)
    assert cos[1] == pytest.approx(0.5, abs=1e-14) and cos[-1] == pytest.approx(0.5, abs=1e-14)
    assert all(abs(v) < 1e-14 for m, v in cos.items() if abs(m) != 1)
    vortex = angular_fourier_decompose(np.exp(2j * phi), 4)
    assert vortex[2] == pytest.approx(1.0, abs=1e-14)
    assert all(abs(v) < 1e-14 for m, v in vortex.items() if m != 2)


def test_decompose_matches_direct_sum():
    rng = np.random.default_rng(3)
    samples = rng.normal(size=16) + 1j * rng.normal(size=16)
    phi = 2 * np.pi * np.arange(16) / 16
    coeffs = angular_fourier_decompose(samples, 7)
    for m in range(-7, 8):
        direct = np.mean(samples * np.exp(-1j * m * phi))
        assert coeffs[m] == pytest.approx(direct, abs=1e-14)


def test_decompose_guards():
    with pytest.raises(DomainError):
        angular_fourier_decompose(np.ones(16), 8)
    with pytest.raises(DomainError):
        angular_fourier_decompose(np.ones(24), 2)


def test_type_one_is_pure_zero_order(small_grid):
    for l_c in (10.0, 500.0, 5000.0):
        _, spec = extrinsic_oam_spectrum(type_one(l_c), MONO, small_grid, m_max=8)
        assert spec[0] == pytest.approx(1.0, abs=1e-12)
        assert all(spec[m] < 1e-12 for m in spec.orders if m)


def test_type_two_tail_and_symmetry(small_grid):
    angular, spec = extrinsic_oam_spectrum(kwiat(500.0), MONO, small_grid, m_max=8)
    assert spec.off_axis_weight() > 0.05
    for m in range(1, 9):
        assert spec[m] == pytest.approx(spec[-m], abs=1e-9)
        np.testing.assert_allclose(angular[m], angular[-m], atol=1e-12 * np.max(np.abs(angular[0])))
    assert np.max(np.abs(angular.coeffs.imag)) < 1e-12 * np.max(np.abs(angular[0]))
    assert sum(spec.probs.values()) == pytest.approx(1.0, abs=1e-9)
    assert min(spec.probs.values()) >= -1e-15


def test_thin_crystal_mostly_zero_order():
    g = PolarGrid.gauss_legendre(64, 2.0, 128)
    _, spec = extrinsic_oam_spectrum(kwiat(10.0), MONO, g, m_max=8)
    assert spec[0] > 0.99


def test_symmetry_breaking_grows_with_length(small_grid):
    tails = [extrinsic_oam_spectrum(kwiat(l), MONO, small_grid, m_max=16)[1].off_axis_weight()
             for l in (5000.0, 500.0, 100.0, 10.0)]
    assert tails == sorted(tails, reverse=True)


@pytest.mark.parametrize("measure", list(RadialMeasure))
def test_parseval(small_grid, measure):
    angular, _ = extrinsic_oam_spectrum(kwiat(500.0), MONO, small_grid, m_max=8, radial_measure=measure)
    assert parseval_relative_error(angular, small_grid, measure) < 1e-10
    # independent check from raw samples
    px, py = small_grid.mesh()
    samples = np.array([[f_minus(kwiat(500.0), MONO, TransverseVec(x, y)) for x, y in zip(rx, ry)]
                        for rx, ry in zip(px, py)])
    rhs = np.mean(samples**2, axis=1)
    np.testing.assert_allclose(angular.sample_power, rhs, rtol=1e-12)


def test_measures_differ(small_grid):
    a = extrinsic_oam_spectrum(kwiat(500.0), MONO, small_grid, m_max=8)[1]
    b = extrinsic_oam_spectrum(kwiat(500.0), MONO, small_grid, m_max=8, radial_measure="polar_jacobian")[1]
    assert b.off_axis_weight() > a.off_axis_weight()


def test_degenerate_grid_raises():
    g = PolarGrid(np.array([0.0]), np.array([1.0]), 16)
    with pytest.raises(DegeneracyError):
        extrinsic_oam_spectrum(kwiat(), MONO, g, m_max=4, radial_measure="polar_jacobian")


def test_m_max_guard(small_grid):
    with pytest.raises(DomainError):
        extrinsic_oam_spectrum(kwiat(), MONO, small_grid, m_max=64)


def test_worker_partition_is_bit_stable(small_grid):
    ref_a, ref_s = extrinsic_oam_spectrum(kwiat(500.0), MONO, small_grid, m_max=8, n_jobs=1)
    for workers in (2, 3, 7):
        a, s = extrinsic_oam_spectrum(kwiat(500.0), MONO, small_grid, m_max=8, n_jobs=workers)
        assert np.array_equal(a.coeffs, ref_a.coeffs)
        assert s.probs == ref_s.probs


def test_threads_env(monkeypatch, small_grid):
    monkeypatch.setenv("SPDC_OAM_THREADS", "4")
    ref = extrinsic_oam_spectrum(kwiat(), MONO, small_grid, m_max=4, n_jobs=1)[1]
    assert extrinsic_oam_spectrum(kwiat(), MONO, small_grid, m_max=4, n_jobs=None)[1].probs == ref.probs
