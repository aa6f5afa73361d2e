"""Two-photon amplitudes in joint (center-of-momentum / relative) variables.

With ``p+- = p_s +- p_i`` the product of single-photon angular factors
``(p_s e^{i phi_s})^{l_s} (p_i e^{i phi_i})^{l_i}`` re-expands into terms
``p+^a e^{i l+ phi+} p-^b e^{i l- phi-}`` with ``l+ + l- = l_s + l_i``.
"""

import warnings
from dataclasses import dataclass
from math import comb

import numpy as np

from .exceptions import DomainError, SupportWarning
from .pump import f_plus_xy
from .spectrum import _f_minus_xy

MAX_PAIR_CHARGE = 20
SUPPORT_TOLERANCE = 1e-8


@dataclass(frozen=True)
class AngularModeField:
    """One photon's ``h(p) e^{i l phi}`` with ``h`` sampled on radial nodes."""

    winding: int
    radial_nodes: np.ndarray
    radial_profile: np.ndarray

    def __post_init__(self):
        if not np.all(np.isfinite(self.radial_profile)):
            raise ValueError("radial profile must be finite")

    def sample(self, grid):
        h = np.interp(grid.radial_nodes, self.radial_nodes, self.radial_profile)
        return h[:, None] * np.exp(1j * self.winding * grid.phi)[None, :]


@dataclass(frozen=True)
class ReexpansionTerm:
    h2_order: int
    l_plus: int
    l_minus: int
    coeff: complex
    pow_plus: int
    pow_minus: int


@dataclass(frozen=True, eq=False)
class JointEnvelope:
    """Factorized pair amplitude ``F2(p+, p-) = F+(p+) F-(p-)`` on two polar grids."""

    f_plus_part: np.ndarray
    grid_plus: object
    f_minus_part: np.ndarray
    grid_minus: object

    def __post_init__(self):
        for name, f, g in (("f_plus_part", self.f_plus_part, self.grid_plus),
                           ("f_minus_part", self.f_minus_part, self.grid_minus)):
            if np.shape(f) != (g.n_radial, g.n_phi):
                raise ValueError(f"{name} has shape {np.shape(f)}, grid expects {(g.n_radial, g.n_phi)}")
            if not np.all(np.isfinite(f)):
                raise ValueError(f"{name} must be finite")

    @classmethod
    def from_models(cls, mode, crystal, spectral, grid_plus, grid_minus):
        fp = f_plus_xy(mode, *grid_plus.mesh())
        fm = _f_minus_xy(crystal, spectral, *grid_minus.mesh()).astype(complex)
        return cls(fp, grid_plus, fm, grid_minus)


def reexpand_pair(l_s, l_i, h2_orders=(0,)):
    """Binomial re-expansion of a signal/idler angular pair into joint variables.

    Parameters
    ----------
    l_s, l_i : int
        Single-photon windings, each in ``[0, 20]``.
    h2_orders : iterable of int
        Azimuthal orders of ``h2`` in the difference angle ``phi+ - phi-``.
        Use ``(0,)`` for an azimuthally symmetric ``h2``. Mappings are
        accepted; only their keys are used.

    Returns
    -------
    list of ReexpansionTerm
        One term per ``(m, n_s, n_i)`` in ascending order.
    """
    for name, v in (("l_s", l_s), ("l_i", l_i)):
        if int(v) != v or not 0 <= v <= MAX_PAIR_CHARGE:
            raise DomainError(f"{name}={v} outside [0, {MAX_PAIR_CHARGE}]")
    orders = sorted(int(m) for m in h2_orders)
    if not orders:
        raise DomainError("h2_orders must be non-empty")
    total = l_s + l_i
    scale = 2.0 ** (-total)
    terms = []
    for m in orders:
        for n_s in range(l_s + 1):
            for n_i in range(l_i + 1):
                coeff = scale * (-1) ** (l_i - n_i) * comb(l_s, n_s) * comb(l_i, n_i)
                l_plus = m + n_s + n_i
                terms.append(ReexpansionTerm(
                    h2_order=m,
                    l_plus=l_plus,
                    l_minus=total - l_plus,
                    coeff=complex(coeff),
                    pow_plus=n_s + n_i,
                    pow_minus=total - (n_s + n_i),
                ))
    return terms


def _polar_points(grid):
    r = np.repeat(grid.radial_nodes, grid.n_phi)
    phi = np.tile(grid.phi, grid.n_radial)
    return r, phi


def verify_reexpansion(l_s, l_i, h_s, h_i, grid_s, grid_i):
    """Max absolute gap between the direct pair integrand and its re-expansion.

    ``h_s`` and ``h_i`` are radial callables. The direct side is
    ``h_s(p_s) h_i(p_i) exp(i (l_s phi_s + l_i phi_i))`` on every
    ``(p_s, p_i)`` node pair. The expanded side maps each pair to
    ``p+-`` and sums the terms of :func:`reexpand_pair` weighted by
    ``h2 = h_s p_s^-l_s h_i p_i^-l_i``.
    """
    if grid_s.n_radial * grid_s.n_phi > 32 * 32 or grid_i.n_radial * grid_i.n_phi > 32 * 32:
        raise DomainError("verify_reexpansion is limited to 32x32 grids per photon")
    rs, phs = _polar_points(grid_s)
    ri, phi_i = _polar_points(grid_i)
    rs, phs = rs[:, None], phs[:, None]
    ri, phi_i = ri[None, :], phi_i[None, :]

    hs = np.asarray(h_s(rs), dtype=complex)
    hi = np.asarray(h_i(ri), dtype=complex)
    direct = hs * hi * np.exp(1j * (l_s * phs + l_i * phi_i))

    zs = rs * np.exp(1j * phs)
    zi = ri * np.exp(1j * phi_i)
    z_plus = zs + zi
    z_minus = zs - zi
    p_plus, phi_plus = np.abs(z_plus), np.angle(z_plus)
    p_minus, phi_minus = np.abs(z_minus), np.angle(z_minus)
    h2 = hs * rs ** (-float(l_s)) * hi * ri ** (-float(l_i))

    expanded = np.zeros(np.broadcast(rs, ri).shape, dtype=complex)
    for t in reexpand_pair(l_s, l_i, (0,)):
        expanded += (
            t.coeff
            * p_plus**t.pow_plus
            * p_minus**t.pow_minus
            * np.exp(1j * (t.l_plus * phi_plus + t.l_minus * phi_minus))
        )
    expanded *= h2
    return float(np.max(np.abs(direct - expanded)))


def r_transform(f, grid, q, z0_factor=0.0):
    """``integral d^2p exp(i p.q/2 - i z0_factor p^2) f(p)`` by polar quadrature.

    ``f`` is sampled on ``grid`` with shape ``(n_radial, n_phi)``. A
    :class:`SupportWarning` is issued when ``|f|`` at the outermost radial
    node exceeds ``1e-8`` of its peak.
    """
    f = np.asarray(f, dtype=complex)
    if f.shape != (grid.n_radial, grid.n_phi):
        raise ValueError(f"f has shape {f.shape}, grid expects {(grid.n_radial, grid.n_phi)}")
    peak = np.max(np.abs(f))
    if peak > 0 and np.max(np.abs(f[-1])) > SUPPORT_TOLERANCE * peak:
        warnings.warn(
            f"integrand is {np.max(np.abs(f[-1])) / peak:.3g} of its peak at p={grid.p_max:g}",
            SupportWarning,
            stacklevel=2,
        )
    px, py = grid.mesh()
    p2 = grid.radial_nodes[:, None] ** 2
    kernel = np.exp(1j * (0.5 * (px * q.x + py * q.y) - z0_factor * p2))
    return complex(np.sum(grid.area_weights() * kernel * f))


def factorized_phi2(env, q_plus, q_minus, z0_factor=0.0):
    """Pair detection amplitude ``R+(q+) R-(q-)`` of a factorized envelope."""
    r_plus = r_transform(env.f_plus_part, env.grid_plus, q_plus, z0_factor)
    r_minus = r_transform(env.f_minus_part, env.grid_minus, q_minus, z0_factor)
    return r_plus * r_minus
