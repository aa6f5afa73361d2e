"""Relative-movement envelope and its extrinsic OAM spectrum.

The envelope ``F-(p-)`` is a detuning-weighted sum of phase-matching
weights. Its azimuthal Fourier orders ``F^(m)(p-)`` carry extrinsic OAM
``m`` per pair, with probability proportional to the radial integral of
``|F^(m)|^2``.
"""

import enum
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .exceptions import DegeneracyError, DomainError
from .grid import PolarGrid
from .phasematching import _delta_kz_polar, _delta_kz_reduced_xy, pm_weight
from .validation import check_aliasing, check_azimuthal_samples, check_power_of_two

THREADS_ENV = "SPDC_OAM_THREADS"


class RadialMeasure(str, enum.Enum):
    """How the radial integral of ``|F^(m)|^2`` is weighted.

    ``PAPER_LINEAR`` integrates ``dp``; ``POLAR_JACOBIAN`` integrates
    ``p dp`` (the 2D polar area element).
    """

    PAPER_LINEAR = "paper_linear"
    POLAR_JACOBIAN = "polar_jacobian"


@dataclass(frozen=True)
class SpectralConfig:
    """Quadrature over signal detuning, with the spectral density folded into the weights.

    ``samples`` is a tuple of ``(nu_bar_D, weight)`` pairs. An empty tuple
    with ``monochromatic=True`` means the single sample ``(0, 1)``.
    """

    monochromatic: bool = True
    samples: tuple = ()

    def __post_init__(self):
        samples = tuple((float(nu), float(w)) for nu, w in self.samples)
        if self.monochromatic:
            if not samples:
                samples = ((0.0, 1.0),)
            if len(samples) != 1 or samples[0][0] != 0.0:
                raise DomainError("monochromatic spectra take exactly one sample with nu_bar_D = 0")
        if not samples:
            raise DomainError("at least one detuning sample is required")
        if any(w < 0 or not np.isfinite(w) or not np.isfinite(nu) for nu, w in samples):
            raise DomainError("detuning weights must be finite and non-negative")
        if sum(w for _, w in samples) <= 0:
            raise DomainError("detuning weights must sum to a positive value")
        object.__setattr__(self, "samples", samples)


@dataclass(frozen=True, eq=False)
class AngularSpectrum:
    """Azimuthal Fourier orders ``F^(m)`` sampled on the radial nodes.

    ``coeffs[:, k]`` holds order ``m = k - m_max``.
    """

    m_max: int
    radial_nodes: np.ndarray
    coeffs: np.ndarray
    # per-node power summed over all n_phi orders / averaged over samples
    order_power: np.ndarray = field(repr=False, default=None)
    sample_power: np.ndarray = field(repr=False, default=None)

    @property
    def orders(self):
        return np.arange(-self.m_max, self.m_max + 1)

    def __getitem__(self, m):
        if abs(m) > self.m_max:
            raise KeyError(m)
        return self.coeffs[:, m + self.m_max]


@dataclass(frozen=True)
class OamSpectrum:
    """Normalized probability of each extrinsic OAM order."""

    probs: dict

    def __getitem__(self, m):
        return self.probs.get(m, 0.0)

    @property
    def orders(self):
        return sorted(self.probs)

    def as_array(self):
        orders = self.orders
        return np.array(orders), np.array([self.probs[m] for m in orders])

    def off_axis_weight(self):
        """Total probability of nonzero extrinsic OAM."""
        return float(sum(v for m, v in sorted(self.probs.items()) if m != 0))


def _f_minus_xy(c, s, px, py):
    total = np.zeros(np.broadcast(px, py).shape)
    for nu, weight in s.samples:
        total = total + weight * pm_weight(c, _delta_kz_reduced_xy(c, px, py, nu_bar_D=nu))
    return total


def f_minus(c, s, p_minus):
    """Relative-movement envelope ``sum_k weight_k * W(delta_kz(nu_k, p-))``.

    Real valued, in um. For a monochromatic spectrum it is a single
    phase-matching weight.
    """
    return float(_f_minus_xy(c, s, p_minus.x, p_minus.y))


def angular_fourier_decompose(samples, m_max):
    """Fourier orders ``c_m = mean_j samples[j] exp(-i m phi_j)``.

    Parameters
    ----------
    samples : array_like
        Values on the uniform grid ``phi_j = 2 pi j / n_phi``, last axis
        azimuthal. ``n_phi`` must be a power of two.
    m_max : int
        Highest order returned; requires ``n_phi >= 2 m_max + 2``.

    Returns
    -------
    dict
        ``{m: c_m}`` for ``m`` in ``[-m_max, m_max]``. Complex scalars for
        1D input, arrays over leading axes otherwise.
    """
    arr = np.asarray(samples, dtype=complex)
    n_phi = arr.shape[-1]
    check_power_of_two(n_phi, "n_phi")
    check_aliasing(n_phi, m_max)
    full = np.fft.fft(arr, axis=-1) / n_phi
    out = {}
    for m in range(-m_max, m_max + 1):
        v = full[..., m % n_phi]
        out[m] = complex(v) if v.ndim == 0 else v
    return out


def _f_minus_polar(c, s, r, phi):
    total = np.zeros(np.broadcast(r, phi).shape)
    for nu, weight in s.samples:
        total = total + weight * pm_weight(c, _delta_kz_polar(c, r, phi, nu_bar_D=nu))
    return total


def _decompose_block(c, s, nodes, phi):
    values = _f_minus_polar(c, s, nodes[:, None], phi[None, :])
    full = np.fft.fft(values, axis=1) / phi.size
    sample_power = np.mean(np.abs(values) ** 2, axis=1)
    order_power = np.sum(np.abs(full) ** 2, axis=1)
    return full, order_power, sample_power


def resolve_workers(n_jobs=None):
    """Worker count from ``n_jobs`` or the ``SPDC_OAM_THREADS`` cap (0 = auto)."""
    if n_jobs is None:
        n_jobs = int(os.environ.get(THREADS_ENV, "1") or 1)
    if n_jobs <= 0:
        n_jobs = os.cpu_count() or 1
    return n_jobs


def extrinsic_oam_spectrum(c, s, g, m_max=16, radial_measure=RadialMeasure.PAPER_LINEAR, n_jobs=1):
    """Angular decomposition of ``F-`` and the normalized extrinsic OAM spectrum.

    Radial nodes are split into contiguous blocks that may be processed by
    worker threads; blocks are merged in node order before any reduction,
    so results do not depend on ``n_jobs``.

    Returns
    -------
    (AngularSpectrum, OamSpectrum)
    """
    radial_measure = RadialMeasure(radial_measure)
    check_aliasing(g.n_phi, m_max)
    if m_max > g.n_phi // 2 - 1:
        raise DomainError(f"m_max={m_max} exceeds n_phi/2 - 1 = {g.n_phi // 2 - 1}")
    phi = g.phi
    workers = max(1, min(resolve_workers(n_jobs), g.n_radial))
    blocks = np.array_split(g.radial_nodes, workers)
    if workers == 1:
        parts = [_decompose_block(c, s, blocks[0], phi)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda b: _decompose_block(c, s, b, phi), blocks))
    full = np.concatenate([p[0] for p in parts], axis=0)
    order_power = np.concatenate([p[1] for p in parts])
    sample_power = np.concatenate([p[2] for p in parts])

    orders = np.arange(-m_max, m_max + 1)
    coeffs = full[:, orders % g.n_phi]
    mu = measure_weights(g, radial_measure)
    intensities = mu @ (np.abs(coeffs) ** 2)
    total = float(np.sum(intensities))
    if not np.isfinite(total) or total <= 0.0:
        raise DegeneracyError("every extrinsic OAM order has zero weight on this grid")
    probs = {int(m): float(v / total) for m, v in zip(orders, intensities)}
    angular = AngularSpectrum(m_max, g.radial_nodes, coeffs, order_power, sample_power)
    return angular, OamSpectrum(probs)


def measure_weights(g, radial_measure=RadialMeasure.PAPER_LINEAR):
    """Radial quadrature weights times the chosen measure ``mu(p)``."""
    if RadialMeasure(radial_measure) is RadialMeasure.POLAR_JACOBIAN:
        return g.radial_weights * g.radial_nodes
    return g.radial_weights.copy()


def parseval_relative_error(angular, g, radial_measure=RadialMeasure.PAPER_LINEAR):
    """Relative gap between coefficient power and sample power over the grid."""
    mu = measure_weights(g, radial_measure)
    lhs = float(mu @ angular.order_power)
    rhs = float(mu @ angular.sample_power)
    return abs(lhs - rhs) / abs(rhs)


def default_grid():
    return PolarGrid.gauss_legendre(n_radial=128, p_max=3.0, n_phi=256)
