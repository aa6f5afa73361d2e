"""Scalar special functions: associated Laguerre polynomials and sinc."""

import numpy as np

from .exceptions import DomainError

MAX_LAGUERRE_DEGREE = 64

# |x| below this uses the even Taylor series of sin(x)/x
SINC_TAYLOR_SWITCH = 1e-4


def assoc_laguerre(p, l, x):
    """Associated Laguerre polynomial ``L_p^l(x)``.

    Evaluated with the ascending three-term recurrence

        (k + 1) L_{k+1} = (2k + 1 + l - x) L_k - (k + l) L_{k-1}

    Parameters
    ----------
    p : int
        Degree, ``0 <= p <= 64``.
    l : int
        Upper index, ``l >= 0``.
    x : float or numpy.ndarray
        Evaluation point(s).

    Returns
    -------
    float or numpy.ndarray
        ``L_p^l(x)`` with the same shape as ``x``. Normalized so that
        ``L_p^l(0) = C(p + l, p)``.
    """
    p = int(p)
    l = int(l)
    if p < 0 or l < 0:
        raise DomainError(f"Laguerre indices must be non-negative, got p={p}, l={l}")
    if p > MAX_LAGUERRE_DEGREE:
        raise DomainError(f"Laguerre degree {p} exceeds guard {MAX_LAGUERRE_DEGREE}")
    scalar = np.ndim(x) == 0
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise DomainError("Laguerre argument must be finite")

    prev = np.ones_like(x)
    if p == 0:
        out = prev
    else:
        cur = 1.0 + l - x
        for k in range(1, p):
            prev, cur = cur, ((2 * k + 1 + l - x) * cur - (k + l) * prev) / (k + 1)
        out = cur
    return float(out) if scalar else out


def sinc_u(x):
    """Unnormalized sinc ``sin(x)/x`` with ``sinc_u(0) == 1``.

    Accepts scalars or arrays.
    """
    scalar = np.ndim(x) == 0
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < SINC_TAYLOR_SWITCH
    x2 = x * x
    series = 1.0 - x2 / 6.0 + x2 * x2 / 120.0
    with np.errstate(invalid="ignore", divide="ignore"):
        direct = np.sin(x) / x
    out = np.where(small, series, direct)
    return float(out) if scalar else out
