import numpy as np
import pytest

from spdc_oam import Branch, DomainError, MaskConfig, TransverseVec, coincidence_projection, shifted_expansion_weights
from spdc_oam.measurement import charge_scan

P0 = TransverseVec(1.0, 0.0)


def masks(waist=0.1, q_s=1, q_i=0, same_side=False):
    idler_center = P0 if same_side else -P0
    return MaskConfig(P0, q_s, waist), MaskConfig(idler_center, q_i, waist)


def test_expansion_weights():
    assert shifted_expansion_weights(1, "intrinsic") == [(0, 1), (1, 1)]
    assert shifted_expansion_weights(2, Branch.INTRINSIC) == [(0, 1), (1, 2), (2, 1)]
    assert shifted_expansion_weights(1, "extrinsic") == [(0, -1), (1, 1)]
    with pytest.raises(DomainError):
        shifted_expansion_weights(21, "intrinsic")


def test_baseline_nonzero():
    s, i = masks(q_s=0)
    assert abs(coincidence_projection("intrinsic", 0, None, s, i)) > 0


def test_intrinsic_charge_selection():
    s, i = masks(q_s=1)
    amps = np.abs(charge_scan("intrinsic", 2, s, i, range(-3, 4)))
    assert int(np.argmax(amps)) - 3 == 1
    others = np.delete(amps, 4)
    assert np.all(others < 1e-4 * amps.max())
    assert amps[4] / np.max(np.abs(coincidence_projection("intrinsic", 2, None, s, i.with_charge(0)))) > 1e4


@pytest.mark.parametrize("l, q_s", [(1, 0), (1, 1), (3, 2), (2, 0)])
def test_intrinsic_peak_follows_conservation(l, q_s):
    s, i = masks(q_s=q_s)
    amps = np.abs(charge_scan("intrinsic", l, s, i, range(-3, 4)))
    assert int(np.argmax(amps)) - 3 == l - q_s


def test_extrinsic_escapes_opposed_detector():
    s, i = masks(q_s=0)
    _, same = masks(q_s=0, same_side=True)
    same_amp = np.abs(charge_scan("extrinsic", 1, s, same, range(-3, 4))).max()
    opposed = np.abs(charge_scan("extrinsic", 1, s, i, range(-3, 4)))
    assert same_amp > 0
    assert np.all(opposed < 1e-6 * same_amp)


def test_extrinsic_invisibility_improves_with_smaller_waist():
    ratios = []
    for waist in (0.1, 0.05):
        s, i = masks(waist, q_s=0)
        _, same = masks(waist, q_s=0, same_side=True)
        # envelope width 2.5 waists keeps both opposed amplitudes representable
        env = lambda r, w=waist: np.exp(-((r / (2.5 * w)) ** 2))
        same_amp = abs(coincidence_projection("extrinsic", 1, env, s, same.with_charge(1)))
        opp_amp = abs(coincidence_projection("extrinsic", 1, env, s, i.with_charge(1)))
        ratios.append(opp_amp / same_amp)
    assert 0 < ratios[1] < ratios[0] < 1e-6


def test_charge_conjugation():
    for branch, l in (("intrinsic", 2), ("extrinsic", 1), ("intrinsic", 3)):
        s, i = masks(q_s=1, q_i=1)
        a = coincidence_projection(branch, l, None, s, i)
        b = coincidence_projection(branch, -l, None, s.with_charge(-1), i.with_charge(-1))
        assert b == pytest.approx(np.conj(a), rel=1e-12, abs=1e-300)


def test_separation_guard():
    s = MaskConfig(TransverseVec(0.25, 0.0), 0, 0.1)
    with pytest.raises(DomainError):
        coincidence_projection("intrinsic", 1, None, s, MaskConfig(-P0, 0, 0.1))


def test_mask_validation():
    with pytest.raises(DomainError):
        MaskConfig(P0, 0, 0.0)
    with pytest.raises(DomainError):
        MaskConfig(P0, 0.5, 0.1)
