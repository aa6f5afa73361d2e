"""scikit-learn style wrappers around the angular decomposition.

:class:`AngularFourierTransformer` maps rows of azimuthal samples to their
Fourier orders. :class:`ExtrinsicOAMSpectrum` fits the OAM spectrum of a
crystal on radial nodes passed as ``X`` (with quadrature weights as
``sample_weight``) and exposes it through fitted attributes.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .grid import PolarGrid
from .spectrum import RadialMeasure, SpectralConfig, extrinsic_oam_spectrum
from .validation import check_aliasing, check_azimuthal_samples, check_power_of_two


class AngularFourierTransformer(TransformerMixin, BaseEstimator):
    """Azimuthal Fourier orders ``-m_max..m_max`` of uniformly sampled rows.

    Parameters
    ----------
    m_max : int, default=16
        Highest order kept. ``fit`` checks the row length against it.
    """

    def __init__(self, m_max=16):
        self.m_max = m_max

    def fit(self, X, y=None):
        X = check_azimuthal_samples(X)
        self.n_phi_ = check_power_of_two(X.shape[1], "n_phi")
        check_aliasing(self.n_phi_, self.m_max)
        self.orders_ = np.arange(-self.m_max, self.m_max + 1)
        return self

    def transform(self, X):
        check_is_fitted(self, ["n_phi_", "orders_"])
        X = check_azimuthal_samples(X)
        if X.shape[1] != self.n_phi_:
            raise ValueError(f"X has {X.shape[1]} azimuthal samples, fitted with {self.n_phi_}")
        full = np.fft.fft(X, axis=1) / self.n_phi_
        return full[:, self.orders_ % self.n_phi_]

    def power(self, X):
        """``|c_m|^2`` per row and order."""
        return np.abs(self.transform(X)) ** 2


class ExtrinsicOAMSpectrum(BaseEstimator):
    """Extrinsic OAM spectrum of a crystal's relative-movement envelope.

    Parameters
    ----------
    crystal : CrystalParams
    spectral : SpectralConfig or None
        ``None`` means monochromatic.
    n_phi : int, default=256
    m_max : int, default=16
    radial_measure : {"paper_linear", "polar_jacobian"}
    n_jobs : int or None
        Worker threads over radial nodes; ``None`` reads ``SPDC_OAM_THREADS``.

    Attributes
    ----------
    angular_spectrum_ : AngularSpectrum
    oam_spectrum_ : OamSpectrum
    orders_ : ndarray of int
    probabilities_ : ndarray of float
    """

    def __init__(self, crystal=None, spectral=None, n_phi=256, m_max=16,
                 radial_measure="paper_linear", n_jobs=1):
        self.crystal = crystal
        self.spectral = spectral
        self.n_phi = n_phi
        self.m_max = m_max
        self.radial_measure = radial_measure
        self.n_jobs = n_jobs

    def fit(self, X=None, y=None, sample_weight=None):
        """Fit on radial nodes ``X``; default is the 128-node Gauss-Legendre grid on [0, 3]."""
        if self.crystal is None:
            raise ValueError("crystal must be set before fit")
        if X is None:
            grid = PolarGrid.gauss_legendre(128, 3.0, self.n_phi)
        else:
            nodes = np.asarray(X, dtype=float).ravel()
            if sample_weight is None:
                raise ValueError("sample_weight (radial quadrature weights) is required with X")
            grid = PolarGrid(nodes, np.asarray(sample_weight, dtype=float), self.n_phi)
        spectral = self.spectral if self.spectral is not None else SpectralConfig()
        self.angular_spectrum_, self.oam_spectrum_ = extrinsic_oam_spectrum(
            self.crystal, spectral, grid, self.m_max, RadialMeasure(self.radial_measure), self.n_jobs
        )
        self.grid_ = grid
        self.orders_, self.probabilities_ = self.oam_spectrum_.as_array()
        return self

    def transform(self, X=None):
        """``|F^(m)(p-)|^2`` on the fitted radial nodes, shape ``(n_radial, 2 m_max + 1)``."""
        check_is_fitted(self, "angular_spectrum_")
        return np.abs(self.angular_spectrum_.coeffs) ** 2

    def predict_proba(self, X=None):
        check_is_fitted(self, "probabilities_")
        return self.probabilities_.copy()
