"""Extrinsic orbital angular momentum of SPDC photon pairs.

Phase-matching weights, pump and relative-movement envelopes, their
azimuthal decomposition into an extrinsic OAM spectrum, the joint-variable
re-expansion of pair amplitudes, and a masked-detector coincidence model.
"""

from .estimators import AngularFourierTransformer, ExtrinsicOAMSpectrum
from .exceptions import ConfigError, DegeneracyError, DomainError, SupportWarning
from .grid import PolarGrid
from .joint import (
    AngularModeField,
    JointEnvelope,
    ReexpansionTerm,
    factorized_phi2,
    r_transform,
    reexpand_pair,
    verify_reexpansion,
)
from .measurement import Branch, MaskConfig, coincidence_projection, shifted_expansion_weights
from .phasematching import (
    CrystalParams,
    CrystalType,
    TransverseVec,
    delta_kz_full,
    delta_kz_reduced,
    pm_azimuthal_profile,
    pm_weight,
)
from .pump import PumpMode, f_plus, pump_radial_envelope
from .special import assoc_laguerre, sinc_u
from .spectrum import (
    AngularSpectrum,
    OamSpectrum,
    RadialMeasure,
    SpectralConfig,
    angular_fourier_decompose,
    extrinsic_oam_spectrum,
    f_minus,
    parseval_relative_error,
)

__version__ = "0.1.0"
