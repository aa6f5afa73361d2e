"""Input validation helpers shared by the functional and estimator APIs."""

import numbers

import numpy as np

from .exceptions import DomainError


def check_power_of_two(n, name, minimum=2):
    if not isinstance(n, numbers.Integral) or isinstance(n, bool):
        raise DomainError(f"{name} must be an integer, got {n!r}")
    if n < minimum or n & (n - 1):
        raise DomainError(f"{name} must be a power of two >= {minimum}, got {n}")
    return int(n)


def check_bounded_int(value, name, low, high):
    if not isinstance(value, numbers.Integral) or isinstance(value, bool):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    if not low <= value <= high:
        raise DomainError(f"{name}={value} outside [{low}, {high}]")
    return int(value)


def check_aliasing(n_phi, m_max):
    """Require ``n_phi >= 2 m_max + 2`` so orders up to ``m_max`` are not aliased."""
    check_bounded_int(m_max, "m_max", 0, np.iinfo(np.int32).max)
    if n_phi < 2 * m_max + 2:
        raise DomainError(f"n_phi={n_phi} aliases orders up to m_max={m_max} (need >= {2 * m_max + 2})")


def check_azimuthal_samples(X):
    """Coerce samples to a 2D complex array ``(n_rows, n_phi)``.

    A 1D input is treated as a single row.
    """
    X = np.asarray(X)
    if X.ndim == 1:
        X = X[None, :]
    if X.ndim != 2:
        raise ValueError(f"expected 1D or 2D samples, got shape {X.shape}")
    if not np.issubdtype(X.dtype, np.number):
        raise ValueError("samples must be numeric")
    X = X.astype(complex, copy=False)
    if not np.all(np.isfinite(X)):
        raise ValueError("samples contain NaN or inf")
    return X
