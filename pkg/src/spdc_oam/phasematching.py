"""First-order phase mismatch and the phase-matching weight.

All transverse wavenumbers are in um^-1 and lengths in um. The walk-off
axis of a type-II crystal is the lab-frame +x axis.
"""

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import DomainError
from .special import sinc_u


class CrystalType(str, enum.Enum):
    TYPE_I = "I"
    TYPE_II = "II"


@dataclass(frozen=True)
class TransverseVec:
    """Transverse wavevector ``(x, y)`` in um^-1."""

    x: float
    y: float

    @classmethod
    def from_polar(cls, magnitude, azimuth):
        return cls(magnitude * math.cos(azimuth), magnitude * math.sin(azimuth))

    @property
    def magnitude(self):
        return math.hypot(self.x, self.y)

    @property
    def azimuth(self):
        """Angle from the walk-off axis, in (-pi, pi]."""
        phi = math.atan2(self.y, self.x)
        return math.pi if phi == -math.pi else phi

    def dot_x(self):
        return self.x

    def __neg__(self):
        return TransverseVec(-self.x, -self.y)


@dataclass(frozen=True)
class CrystalParams:
    """Phase-matching coefficients of the nonlinear medium.

    Parameters
    ----------
    crystal_type : CrystalType
        Type-I media are azimuthally invariant; ``N`` is forced to 0.
    l_c : float
        Medium length (um).
    K_bar : float
        Dispersion scale (um^-1) of the quadratic transverse term.
    N : float
        Walk-off parameter (dimensionless).
    nu_bar_D : float
        Detuning term (um^-1); 0 for the degenerate monochromatic case.
    signal_e_beam : bool
        ``True`` when the signal is the extraordinary beam. Swapping
        signal and idler flips the sign of the walk-off term.
    label : str
        Free-form metadata.
    """

    crystal_type: CrystalType
    l_c: float
    K_bar: float
    N: float = 0.0
    nu_bar_D: float = 0.0
    signal_e_beam: bool = True
    label: str = field(default="", compare=True)

    def __post_init__(self):
        object.__setattr__(self, "crystal_type", CrystalType(self.crystal_type))
        if not (self.l_c > 0 and math.isfinite(self.l_c)):
            raise DomainError(f"l_c must be positive, got {self.l_c}")
        if not (self.K_bar > 0 and math.isfinite(self.K_bar)):
            raise DomainError(f"K_bar must be positive, got {self.K_bar}")
        if not math.isfinite(self.N) or not math.isfinite(self.nu_bar_D):
            raise DomainError("N and nu_bar_D must be finite")
        if self.crystal_type is CrystalType.TYPE_I:
            object.__setattr__(self, "N", 0.0)

    @property
    def walkoff(self):
        """Signed walk-off coefficient entering the mismatch."""
        return self.N if self.signal_e_beam else -self.N

    def replace(self, **changes):
        from dataclasses import replace

        return replace(self, **changes)


def _delta_kz_reduced_xy(c, px, py, nu_bar_D=None):
    nu = c.nu_bar_D if nu_bar_D is None else nu_bar_D
    return -nu - (px * px + py * py) / (4.0 * c.K_bar) + (c.walkoff / 2.0) * px


def _delta_kz_polar(c, r, phi, nu_bar_D=None):
    # |p|^2 from the radius itself, so type-I values are exactly azimuth-free
    nu = c.nu_bar_D if nu_bar_D is None else nu_bar_D
    return -nu - (r * r) / (4.0 * c.K_bar) + (c.walkoff / 2.0) * (r * np.cos(phi))


def _delta_kz_full_xy(c, ppx, ppy, pmx, pmy, nu_bar_D=None):
    nu = c.nu_bar_D if nu_bar_D is None else nu_bar_D
    p_plus2 = ppx * ppx + ppy * ppy
    p_minus2 = pmx * pmx + pmy * pmy
    return -nu - (p_plus2 + p_minus2) / (4.0 * c.K_bar) - (c.walkoff / 2.0) * (ppx - pmx)


def delta_kz_reduced(c, p_minus):
    """Mismatch ``-nuD - |p-|^2/(4K) + (N/2) p-.x`` (um^-1), with ``p+`` neglected."""
    return float(_delta_kz_reduced_xy(c, p_minus.x, p_minus.y))


def delta_kz_full(c, p_plus, p_minus):
    """Un-reduced first-order mismatch keeping the ``p+`` terms (um^-1)."""
    return float(_delta_kz_full_xy(c, p_plus.x, p_plus.y, p_minus.x, p_minus.y))


def pm_weight(c, delta_kz):
    """Phase-matching weight ``l_c * sinc(delta_kz * l_c / 2)`` in um."""
    return c.l_c * sinc_u(np.multiply(delta_kz, c.l_c) / 2.0)


def azimuth_grid(n_phi):
    """Uniform azimuths ``2 pi j / n_phi`` wrapped into (-pi, pi].

    Wrapping keeps ``phi[j] == -phi[n_phi - j]`` exactly, so any function of
    ``cos(phi)`` is sampled bit-for-bit even.
    """
    j = np.arange(n_phi)
    return np.where(2 * j <= n_phi, 2.0 * np.pi * j / n_phi, -2.0 * np.pi * (n_phi - j) / n_phi)


def pm_azimuthal_profile(c, p_minus_mag, n_phi=64):
    """Sample ``W / l_c`` around a circle of radius ``p_minus_mag``.

    Returns
    -------
    phi : numpy.ndarray
        Azimuths of the uniform grid, wrapped into (-pi, pi].
    values : numpy.ndarray
        Dimensionless ``W(delta_kz(phi)) / l_c``.
    """
    if n_phi < 8:
        raise DomainError(f"n_phi must be >= 8, got {n_phi}")
    if p_minus_mag < 0:
        raise DomainError("p_minus_mag must be non-negative")
    phi = azimuth_grid(n_phi)
    dk = _delta_kz_polar(c, p_minus_mag, phi)
    return phi, pm_weight(c, dk) / c.l_c
