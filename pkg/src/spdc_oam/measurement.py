"""Coincidence detection of pair OAM with shifted vortex masks.

Each detector is an idealized phase mask plus single-mode fiber: a
Gaussian collection mode about the mask center times a vortex phase
``exp(-i charge * local_azimuth)``. The pair amplitude of each branch is
a binomial polynomial in momenta measured from the branch's expansion
centers times a radial envelope of the branch's joint momentum:

* intrinsic: centers ``(+p0, -p0)``, polynomial ``(z_s + z_i)^l``,
  envelope in ``|p+|``;
* extrinsic: centers ``(+p0, +p0)``, polynomial ``(z_s - z_i)^l'``,
  envelope in ``|p-|``.

``p0`` is the signal mask center.
"""

import enum
import math
from dataclasses import dataclass
from math import comb

import numpy as np

from .exceptions import DomainError
from .grid import PolarGrid
from .phasematching import TransverseVec

MAX_TOTAL_CHARGE = 20
SEPARATION_FACTOR = 3.0


class Branch(str, enum.Enum):
    INTRINSIC = "intrinsic"
    EXTRINSIC = "extrinsic"


@dataclass(frozen=True)
class MaskConfig:
    center: TransverseVec
    charge: int = 0
    collection_waist: float = 0.1

    def __post_init__(self):
        if not (self.collection_waist > 0 and math.isfinite(self.collection_waist)):
            raise DomainError(f"collection_waist must be positive, got {self.collection_waist}")
        if int(self.charge) != self.charge:
            raise DomainError(f"mask charge must be an integer, got {self.charge}")
        object.__setattr__(self, "charge", int(self.charge))

    def with_charge(self, charge):
        return MaskConfig(self.center, charge, self.collection_waist)

    def moved_to(self, center):
        return MaskConfig(center, self.charge, self.collection_waist)


def shifted_expansion_weights(total_charge, branch):
    """Binomial weights of the shifted-center expansion, ``[(m, coeff), ...]``.

    Intrinsic: ``C(l, m)``. Extrinsic: ``C(l, m) (-1)^(l - m)``.
    """
    branch = Branch(branch)
    if int(total_charge) != total_charge or not 0 <= total_charge <= MAX_TOTAL_CHARGE:
        raise DomainError(f"total_charge={total_charge} outside [0, {MAX_TOTAL_CHARGE}]")
    l = int(total_charge)
    if branch is Branch.INTRINSIC:
        return [(m, comb(l, m)) for m in range(l + 1)]
    return [(m, comb(l, m) * (-1) ** (l - m)) for m in range(l + 1)]


def default_mask_grid(collection_waist, n_radial=24, n_phi=32):
    """Local polar grid reaching six waists from the mask center."""
    return PolarGrid.gauss_legendre(n_radial=n_radial, p_max=6.0 * collection_waist, n_phi=n_phi)


def gaussian_envelope(width):
    def envelope(r):
        return np.exp(-((r / width) ** 2))

    return envelope


def _branch_centers(branch, mask_s):
    p0 = complex(mask_s.center.x, mask_s.center.y)
    if branch is Branch.INTRINSIC:
        return p0, -p0
    return p0, p0


def coincidence_projection(branch, total_charge, envelope_radial, mask_s, mask_i, grid=None):
    """Complex coincidence amplitude of one branch against two masked detectors.

    Parameters
    ----------
    branch : Branch or str
    total_charge : int
        Pair winding ``l`` (intrinsic) or ``l'`` (extrinsic). Negative
        values use the conjugate polynomial.
    envelope_radial : callable or None
        Radial envelope of the branch's joint momentum. ``None`` gives a
        Gaussian of the signal collection waist.
    mask_s, mask_i : MaskConfig
        Detector masks. Each center must sit more than three collection
        waists from the origin.
    grid : PolarGrid, optional
        Local polar grid about each mask center (radial nodes in um^-1).

    Returns
    -------
    complex
    """
    branch = Branch(branch)
    for name, mask in (("mask_s", mask_s), ("mask_i", mask_i)):
        if mask.center.magnitude <= SEPARATION_FACTOR * mask.collection_waist:
            raise DomainError(
                f"{name} center |p0|={mask.center.magnitude:g} must exceed "
                f"{SEPARATION_FACTOR:g} x collection waist {mask.collection_waist:g}"
            )
    if envelope_radial is None:
        envelope_radial = gaussian_envelope(mask_s.collection_waist)
    weights = shifted_expansion_weights(abs(int(total_charge)), branch)
    grid_s = grid or default_mask_grid(mask_s.collection_waist)
    grid_i = grid or default_mask_grid(mask_i.collection_waist)

    def detector(mask, g):
        u_r = np.repeat(g.radial_nodes, g.n_phi)
        u_phi = np.tile(g.phi, g.n_radial)
        mode = np.exp(-((u_r / mask.collection_waist) ** 2)) * np.exp(-1j * mask.charge * u_phi)
        points = complex(mask.center.x, mask.center.y) + u_r * np.exp(1j * u_phi)
        return points, mode * g.area_weights().ravel()

    ps, ws = detector(mask_s, grid_s)
    pi, wi = detector(mask_i, grid_i)
    c_s, c_i = _branch_centers(branch, mask_s)
    zs = (ps - c_s)[:, None]
    zi = (pi - c_i)[None, :]
    joint = zs + zi if branch is Branch.INTRINSIC else zs - zi
    if total_charge < 0:
        zs, zi = np.conj(zs), np.conj(zi)
    l = abs(int(total_charge))
    poly = sum(coeff * zs**m * zi ** (l - m) for m, coeff in weights)
    amplitude = envelope_radial(np.abs(joint)) * poly
    return complex(ws @ amplitude @ wi)


def charge_scan(branch, total_charge, mask_s, mask_i, idler_charges, envelope_radial=None, grid=None):
    """Amplitudes for each idler charge with the signal charge held fixed."""
    return np.array([
        coincidence_projection(branch, total_charge, envelope_radial, mask_s, mask_i.with_charge(q), grid)
        for q in idler_charges
    ])
