"""Spectral ingredients of the dephasing integral.

The dephasing exponent is a single radial k-integral,

    gamma(t) = (S_D/2) (kappa/g)^2 g_int *
               Integral_0^inf dk k^(D-1) e^(-sigma^2 k^2 / 2)
                               coth(hbar c k / 2 k_B T)
                               (1 - cos(c k t)) / (hbar c k),

with S_D = D / [2^D pi^(D/2) Gamma(D/2 + 1)] the dimension-dependent
density-of-states prefactor and the Gaussian factor the squared form
factor of the impurity density profile.  This module provides each factor
separately plus the assembled integrand (prefactor included), so the
quadrature layer integrates one callable.
"""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from .constants import HBAR, KB
from .system import DerivedQuantities, SystemParams, derive

# Below this argument the naive coth and 1-cos evaluations lose accuracy;
# switch to series / half-angle forms.
COTH_SERIES_THRESHOLD = 1e-4


def dos_prefactor(D: float) -> float:
    """S_D = D / [2^D pi^(D/2) Gamma(D/2 + 1)] for real D in [1, 3].

    Closed forms: S_1 = 1/pi, S_2 = 1/(2 pi), S_3 = 1/(2 pi^2).
    """
    if not 1.0 <= D <= 3.0:
        raise ValueError(f"D must lie in [1, 3], got {D!r}")
    return D / (2.0**D * math.pi ** (D / 2.0) * math.gamma(D / 2.0 + 1.0))


def form_factor_sq(k, sigma: float):
    """|f_k|^2 = exp(-sigma^2 k^2 / 2); equals 1 at k = 0."""
    if sigma <= 0:
        raise ValueError("sigma must be > 0")
    k = np.asarray(k, dtype=float)
    if np.any(k < 0):
        raise ValueError("k must be >= 0")
    out = np.exp(-0.5 * (sigma * k) ** 2)
    return float(out) if out.ndim == 0 else out


def coth_stable(x):
    """coth(x) for x > 0, accurate to <= 1e-12 relative everywhere.

    For x < 1e-4 the Laurent series 1/x + x/3 - x^3/45 is used (the
    truncation error is ~2 x^5 / 945 < 1e-21 there); otherwise
    1/tanh(x).
    """
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("coth_stable requires x > 0")
    small = x < COTH_SERIES_THRESHOLD
    xs = np.where(small, x, 1.0)  # avoid spurious work on the large branch
    series = 1.0 / xs + xs / 3.0 - xs**3 / 45.0
    out = np.where(small, series, 1.0 / np.tanh(np.where(small, 1.0, x)))
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class IntegrandContext:
    """Everything the integrand needs, frozen for a given (params, t).

    ``prefactor`` is (S_D/2) (kappa/g)^2 g_int, so the integrand carries
    the full normalisation of gamma(t).
    """

    derived: DerivedQuantities
    D: float
    T: float
    t: float
    sigma: float
    c: float
    prefactor: float

    def __post_init__(self):
        if not (math.isfinite(self.prefactor) and self.prefactor >= 0):
            raise ValueError("prefactor must be finite and >= 0")
        if self.t < 0:
            raise ValueError("t must be >= 0")


def make_context(params: SystemParams, t: float) -> IntegrandContext:
    """Build the integrand context for one evaluation time."""
    dq = derive(params)
    prefactor = 0.5 * dos_prefactor(params.D) * params.kappa_over_g**2 * dq.g_int
    return IntegrandContext(
        derived=dq, D=params.D, T=params.T, t=t,
        sigma=params.sigma, c=params.c, prefactor=prefactor,
    )


def integrand(ctx: IntegrandContext, k):
    """Full dephasing integrand (prefactor included) at wavenumber k >= 0.

    Vectorised over k.  At k = 0 the analytic limit is returned: for
    D = 1 and T > 0 the combination coth * (1 - cos)/(hbar omega)
    tends to (2 k_B T / hbar^2) (t^2 / 2); for D > 1 or T = 0 the limit
    is zero.  Never NaN on [0, inf).
    """
    k = np.asarray(k, dtype=float)
    scalar = k.ndim == 0
    k = np.atleast_1d(k)
    if np.any(k < 0):
        raise ValueError("k must be >= 0")

    out = np.empty_like(k)
    # wavenumbers whose phonon energy underflows to a subnormal behave as
    # the k -> 0 limit; routing them there keeps every later division safe
    zero = HBAR * ctx.c * k < np.finfo(float).tiny
    pos = ~zero

    kp = k[pos]
    w = ctx.c * kp
    hw = HBAR * w
    # 1 - cos(w t) via the half-angle identity: exact and non-negative
    osc = 2.0 * np.sin(0.5 * w * ctx.t) ** 2
    if ctx.T == 0:
        th = np.ones_like(kp)
    else:
        # 2 k_B T may underflow for extreme T; the resulting inf argument
        # correctly yields coth = 1
        with np.errstate(divide="ignore", over="ignore"):
            th = coth_stable(hw / (2.0 * KB * ctx.T))
    out[pos] = (
        ctx.prefactor
        * kp ** (ctx.D - 1.0)
        * np.exp(-0.5 * (ctx.sigma * kp) ** 2)
        * th * osc / hw
    )

    if np.any(zero):
        if ctx.D == 1.0 and ctx.T > 0:
            # coth -> 2 k_B T/(hbar c k), (1-cos)/(hbar c k) -> c k t^2/(2 hbar)
            out[zero] = ctx.prefactor * KB * ctx.T * ctx.t**2 / HBAR**2
        else:
            out[zero] = 0.0

    return float(out[0]) if scalar else out
