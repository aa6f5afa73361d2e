"""Polar quadrature grids in transverse momentum space."""

from dataclasses import dataclass

import numpy as np

from .phasematching import azimuth_grid
from .validation import check_power_of_two


@dataclass(frozen=True, eq=False)
class PolarGrid:
    """Radial quadrature nodes plus a uniform azimuth grid.

    ``radial_weights`` integrate ``dp`` only; the polar Jacobian ``p`` is
    applied by callers that need the 2D measure.
    """

    radial_nodes: np.ndarray
    radial_weights: np.ndarray
    n_phi: int = 256

    def __post_init__(self):
        nodes = np.asarray(self.radial_nodes, dtype=float).ravel()
        weights = np.asarray(self.radial_weights, dtype=float).ravel()
        if nodes.shape != weights.shape or nodes.size == 0:
            raise ValueError("radial_nodes and radial_weights must be non-empty and the same length")
        if np.any(nodes < 0) or np.any(np.diff(nodes) <= 0):
            raise ValueError("radial nodes must be non-negative and strictly increasing")
        if np.any(weights <= 0):
            raise ValueError("radial quadrature weights must be positive")
        check_power_of_two(self.n_phi, "n_phi", minimum=16)
        nodes.flags.writeable = False
        weights.flags.writeable = False
        object.__setattr__(self, "radial_nodes", nodes)
        object.__setattr__(self, "radial_weights", weights)
        object.__setattr__(self, "n_phi", int(self.n_phi))

    @classmethod
    def gauss_legendre(cls, n_radial=128, p_max=3.0, n_phi=256, p_min=0.0):
        x, w = np.polynomial.legendre.leggauss(n_radial)
        half = 0.5 * (p_max - p_min)
        return cls(p_min + half * (x + 1.0), half * w, n_phi)

    @property
    def phi(self):
        return azimuth_grid(self.n_phi)

    @property
    def n_radial(self):
        return self.radial_nodes.size

    @property
    def p_max(self):
        return float(self.radial_nodes[-1])

    def mesh(self):
        """Cartesian coordinates ``(px, py)`` of shape ``(n_radial, n_phi)``."""
        phi = self.phi
        r = self.radial_nodes[:, None]
        return r * np.cos(phi)[None, :], r * np.sin(phi)[None, :]

    def area_weights(self):
        """2D weights ``w_r * p * 2 pi / n_phi`` approximating ``d^2p``."""
        w = self.radial_weights * self.radial_nodes * (2.0 * np.pi / self.n_phi)
        return np.repeat(w[:, None], self.n_phi, axis=1)

    def __eq__(self, other):
        if not isinstance(other, PolarGrid):
            return NotImplemented
        return (
            self.n_phi == other.n_phi
            and np.array_equal(self.radial_nodes, other.radial_nodes)
            and np.array_equal(self.radial_weights, other.radial_weights)
        )

    __hash__ = None
