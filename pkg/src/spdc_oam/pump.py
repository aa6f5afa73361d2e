"""Transverse spectrum of a Laguerre-Gaussian pump.

The center-of-momentum factor of the pair amplitude is the pump's
spatial spectrum, so its winding number is inherited unchanged by the
pair (intrinsic OAM).
"""

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import DomainError
from .special import assoc_laguerre


@dataclass(frozen=True)
class PumpMode:
    """LG pump mode. ``z_R`` is derived as ``k_P * w0**2 / 2``.

    Only ``l >= 0`` is supported; the envelope carries ``|p+|**l`` and a
    negative winding would leave that power undefined.
    """

    l: int = 0
    p: int = 0
    k_P: float = 2.0 * math.pi / 0.351
    w0: float = 100.0
    amplitude: float = 1.0
    z_R: float = field(init=False)

    def __post_init__(self):
        if int(self.l) != self.l or self.l < 0:
            raise DomainError(f"pump winding l must be a non-negative integer, got {self.l}")
        if int(self.p) != self.p or self.p < 0:
            raise DomainError(f"pump radial index p must be a non-negative integer, got {self.p}")
        if not (self.k_P > 0 and math.isfinite(self.k_P)):
            raise DomainError(f"k_P must be positive, got {self.k_P}")
        if not (self.w0 > 0 and math.isfinite(self.w0)):
            raise DomainError(f"w0 must be positive, got {self.w0}")
        object.__setattr__(self, "l", int(self.l))
        object.__setattr__(self, "p", int(self.p))
        object.__setattr__(self, "z_R", self.k_P * self.w0**2 / 2.0)

    @property
    def prefactor(self):
        """Full complex prefactor ``B^(lp)`` of the pump spectrum."""
        l, p = self.l, self.p
        return (
            self.amplitude
            * (self.z_R * math.pi / self.k_P ** (l + 1))
            * (math.sqrt(2.0) * self.z_R / self.w0) ** l
            * cmath.exp(-0.5j * math.pi * (1 - l - p))
            * 2.0 ** (p - l + 1)
        )


def pump_radial_envelope(mode, p_plus_mag):
    """``L_p^l(z_R p^2 / k_P) * exp(-z_R p^2 / (2 k_P))``; accepts arrays."""
    s = mode.z_R / mode.k_P * np.square(p_plus_mag)
    return assoc_laguerre(mode.p, mode.l, s) * np.exp(-0.5 * s)


def f_plus(mode, p_plus, full_prefactor=False):
    """Center-of-momentum factor ``B p+^l envelope(p+) exp(i l phi+)``.

    ``B`` is 1 unless ``full_prefactor`` is set, since every quantity
    downstream is normalized.
    """
    r = p_plus.magnitude
    b = mode.prefactor if full_prefactor else 1.0
    radial = r**mode.l * pump_radial_envelope(mode, r)
    return complex(b * radial * cmath.exp(1j * mode.l * p_plus.azimuth))


def f_plus_xy(mode, px, py, full_prefactor=False):
    """Vectorized :func:`f_plus` over arrays of ``(px, py)``."""
    px = np.asarray(px, dtype=float)
    py = np.asarray(py, dtype=float)
    r = np.hypot(px, py)
    b = mode.prefactor if full_prefactor else 1.0
    z = (px + 1j * py) ** mode.l if mode.l else np.ones_like(r, dtype=complex)
    # (px + i py)^l == r^l exp(i l phi)
    return b * z * pump_radial_envelope(mode, r)
