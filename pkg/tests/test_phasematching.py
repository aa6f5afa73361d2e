import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spdc_oam import (
    CrystalParams,
    CrystalType,
    DomainError,
    TransverseVec,
    delta_kz_full,
    delta_kz_reduced,
    pm_azimuthal_profile,
    pm_weight,
)

from conftest import KWIAT_K_BAR, kwiat, type_one

vectors = st.builds(TransverseVec, st.floats(-3, 3), st.floats(-3, 3))


def test_type_one_forces_zero_walkoff():
    assert CrystalParams(CrystalType.TYPE_I, 10.0, 14.38, N=-0.5).N == 0.0


@pytest.mark.parametrize("bad", [dict(l_c=0.0), dict(K_bar=-1.0), dict(N=float("nan"))])
def test_crystal_invariants(bad):
    args = dict(crystal_type="II", l_c=500.0, K_bar=14.38, N=-0.068)
    args.update(bad)
    with pytest.raises(DomainError):
        CrystalParams(**args)


def test_transverse_vec_polar():
    v = TransverseVec(-1.0, -0.0)
    assert v.azimuth == math.pi
    assert TransverseVec(3.0, 4.0).magnitude == 5.0


def test_reduced_examples():
    c = kwiat()
    assert delta_kz_reduced(c, TransverseVec(0.0, 0.0)) == 0.0
    assert delta_kz_reduced(c, TransverseVec(1.0, 0.0)) == pytest.approx(-1 / (4 * 14.38) - 0.034, abs=1e-15)
    assert delta_kz_reduced(c, TransverseVec(1.0, 0.0)) == pytest.approx(-0.051385, abs=5e-7)
    off_axis = delta_kz_reduced(c, TransverseVec(0.0, 1.0))
    assert off_axis == pytest.approx(-0.017385, abs=5e-7)
    assert -off_axis == pytest.approx(0.035 / 2, rel=0.01)


def test_full_examples():
    c = kwiat()
    assert delta_kz_full(c, TransverseVec(0.0, 0.0), TransverseVec(1.0, 0.0)) == pytest.approx(-0.051385, abs=5e-7)
    expected = -1 / (4 * 14.38) - 0.034 - 0.05**2 / (4 * 14.38) + 0.034 * 0.05
    value = delta_kz_full(c, TransverseVec(0.05, 0.0), TransverseVec(1.0, 0.0))
    assert value == pytest.approx(expected, abs=1e-15)
    assert value == pytest.approx(-0.049728, abs=1e-6)  # quoted value is truncated


def test_signal_swap_flips_walkoff():
    a = delta_kz_reduced(kwiat(), TransverseVec(1.0, 0.0))
    b = delta_kz_reduced(kwiat(signal_e_beam=False), TransverseVec(-1.0, 0.0))
    assert a == b


@given(vectors, vectors)
def test_type_one_full_is_azimuth_free(p_plus, p_minus):
    c = type_one()
    rot_p = TransverseVec.from_polar(p_plus.magnitude, 0.3)
    rot_m = TransverseVec.from_polar(p_minus.magnitude, -1.1)
    assert delta_kz_full(c, p_plus, p_minus) == pytest.approx(delta_kz_full(c, rot_p, rot_m), rel=1e-12, abs=1e-15)


@given(vectors)
def test_full_reduces_bit_for_bit(p_minus):
    for c in (kwiat(), type_one()):
        assert delta_kz_full(c, TransverseVec(0.0, 0.0), p_minus) == delta_kz_reduced(c, p_minus)


def test_pm_weight_examples():
    c = kwiat(l_c=500.0)
    assert pm_weight(c, 0.0) == 500.0
    assert abs(pm_weight(c, 2 * math.pi / 500.0)) < 1e-12 * 500.0
    x = -0.051385 * 500.0 / 2
    assert pm_weight(c, -0.051385) == pytest.approx(500.0 * math.sin(x) / x, rel=1e-14)


@given(st.floats(-10, 10))
def test_pm_weight_bounded(dk):
    assert abs(pm_weight(kwiat(), dk)) <= 500.0


def test_profile_type_one_constant():
    _, values = pm_azimuthal_profile(type_one(), 1.3, 16)
    assert values.size == 16
    assert np.ptp(values) <= 1e-15


def test_profile_symmetry_exact():
    phi, values = pm_azimuthal_profile(kwiat(), 1.7, 64)
    assert phi.min() > -math.pi and phi.max() == math.pi
    for j in range(1, 64):
        assert values[j] == values[64 - j]


def test_profile_thick_crystal_spread():
    _, values = pm_azimuthal_profile(kwiat(500.0), 1.0, 64)
    assert np.ptp(values) > 0.1
    assert values.min() >= -0.2172 and values.max() <= 1.0


def test_profile_thin_crystal_spread_matches_closed_form():
    # On the p- = 1 circle the mismatch runs through zero (W/l_c = 1) and
    # reaches its extreme -1/(4K) - 0.034 on the walk-off axis.
    _, values = pm_azimuthal_profile(kwiat(10.0), 1.0, 4096)
    x = (-1 / (4 * KWIAT_K_BAR) - 0.034) * 10.0 / 2
    assert np.ptp(values) == pytest.approx(1 - math.sin(x) / x, abs=1e-6)
    thinner = pm_azimuthal_profile(kwiat(10.0), 0.5, 64)[1]
    assert np.ptp(thinner) < 0.01


def test_profile_guards():
    with pytest.raises(DomainError):
        pm_azimuthal_profile(kwiat(), 1.0, 4)
    with pytest.raises(DomainError):
        pm_azimuthal_profile(kwiat(), -1.0, 16)
