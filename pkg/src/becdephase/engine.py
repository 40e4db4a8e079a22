"""Dephasing exponent gamma(t) by adaptive quadrature, plus its
long-time closed forms.

For times well past sigma/c the exponent settles into one of three
dimensional branches:

    D = 1:  e^-gamma = C_T  exp[-(kappa/g)^2 m c k_B T / (2 hbar^2 n0) * tau]
    D = 2:  e^-gamma = C_T' (sigma/(c tau))^nu,
            nu = (kappa/g)^2 m k_B T / (2 pi hbar^2 n0)
    D = 3:  e^-gamma = exp[-(kappa/g)^2 m k_B T / ((2 pi)^(3/2) hbar^2 n0 sigma)]

The decay rate (1D), exponent (2D) and plateau (3D) are fully determined
by the system parameters; only the constants C_T, C_T' are free, and
:func:`fit_asymptotic_constants` obtains them by a one-parameter
least-squares fit against the quadrature.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
import math

import numpy as np

from .constants import HBAR, KB
from .kernel import integrand, make_context
from .quadrature import QuadratureError, integrate_adaptive
from .system import SystemParams, derive

__all__ = [
    "QuadratureConfig", "AsymptoticFit", "AsymptoticMismatch",
    "gamma_of_t", "gamma_with_error", "coherence_of_t",
    "gamma_zero_temperature", "asymptotic_coherence",
    "fit_asymptotic_constants", "decay_rate_1d", "power_exponent_2d",
    "plateau_gamma_3d",
]

# panels never start wider than k_max / MIN_PANELS, oscillation aside
MIN_PANELS = 16


@dataclass(frozen=True)
class QuadratureConfig:
    """Tuning knobs of the k-integration.

    The integral is cut at k_max = k_max_factor / sigma; beyond 6/sigma
    the Gaussian form factor is below e^-18, and the truncated tail is
    folded into the reported error bound.
    """

    k_max_factor: float = 8.0
    rel_tol: float = 1e-9
    abs_tol: float = 1e-14
    max_panel_depth: int = 14
    oscillation_panels_per_period: int = 8

    def __post_init__(self):
        if self.k_max_factor < 6.0:
            raise ValueError("k_max_factor must be >= 6")
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ValueError("tolerances must be > 0")
        if self.max_panel_depth < 1 or self.oscillation_panels_per_period < 1:
            raise ValueError("depth and panels-per-period must be >= 1")


# geometric-ladder depth toward k = 0; resolves the k^(D-1) endpoint
# behaviour (algebraic, so bisection gains only a constant factor per
# level) down to a ~1e-12 fraction of the first uniform panel
_ENDPOINT_LEVELS = 40


def _panel_edges(params: SystemParams, quad: QuadratureConfig, t: float) -> np.ndarray:
    k_max = quad.k_max_factor / params.sigma
    width = k_max / MIN_PANELS
    if t > 0:
        period = 2.0 * math.pi / (params.c * t)
        width = min(width, period / quad.oscillation_panels_per_period)
    n = int(math.ceil(k_max / width))
    uniform = np.linspace(0.0, k_max, n + 1)
    # subdivide the first panel geometrically: for non-integer D the
    # integrand is k^(D-1)-singular in its derivatives at the origin
    ladder = uniform[1] * 0.5 ** np.arange(_ENDPOINT_LEVELS, 0, -1)
    return np.concatenate([[0.0], ladder, uniform[1:]])


def _tail_bound(params: SystemParams, quad: QuadratureConfig, ctx) -> float:
    """Crude upper bound on the truncated k > k_max contribution.

    Bounds 1 - cos by 2 and the Gaussian tail integral by
    exp(-sigma^2 k_max^2 / 2)/(sigma^2 k_max); the remaining slowly
    varying factors are frozen at k_max.
    """
    k_max = quad.k_max_factor / params.sigma
    if ctx.T == 0:
        th = 1.0
    else:
        th = 1.0 / math.tanh(HBAR * params.c * k_max / (2.0 * KB * ctx.T))
    envelope = (
        ctx.prefactor * k_max ** (params.D - 1.0) * th * 2.0
        / (HBAR * params.c * k_max)
    )
    return envelope * math.exp(-0.5 * (params.sigma * k_max) ** 2) / (
        params.sigma**2 * k_max
    )


def gamma_with_error(params: SystemParams, quad: QuadratureConfig,
                     t: float) -> tuple[float, float]:
    """gamma(t) and an a-posteriori error bound (quadrature + tail)."""
    if t < 0:
        raise ValueError("t must be >= 0")
    if t == 0:
        return 0.0, 0.0
    ctx = make_context(params, t)
    edges = _panel_edges(params, quad, t)
    value, err = integrate_adaptive(
        lambda k: integrand(ctx, k), edges,
        rel_tol=quad.rel_tol, abs_tol=quad.abs_tol,
        max_depth=quad.max_panel_depth,
    )
    return max(value, 0.0), err + _tail_bound(params, quad, ctx)


def gamma_of_t(params: SystemParams, quad: QuadratureConfig, t: float) -> float:
    """Dephasing exponent gamma(t) >= 0."""
    return gamma_with_error(params, quad, t)[0]


def coherence_of_t(params: SystemParams, quad: QuadratureConfig, t: float) -> float:
    """Phase coherence e^-gamma(t), in (0, 1]."""
    return math.exp(-gamma_of_t(params, quad, t))


def gamma_zero_temperature(params: SystemParams, quad: QuadratureConfig,
                           t: float) -> float:
    """gamma(t) with coth replaced by exactly 1 (pure quantum noise).

    The temperature field of ``params`` is ignored; this is an exact
    branch, not a small-T limit.
    """
    return gamma_of_t(dataclasses.replace(params, T=0.0), quad, t)


# ---------------------------------------------------------------------------
# long-time closed forms
# ---------------------------------------------------------------------------

def decay_rate_1d(params: SystemParams) -> float:
    """1D exponential decay rate (kappa/g)^2 m c k_B T / (2 hbar^2 n0), 1/s.

    n0 is evaluated at D = 1 regardless of params.D.
    """
    n0 = 1.0 / params.l
    return (params.kappa_over_g**2 * params.m * params.c * KB * params.T
            / (2.0 * HBAR**2 * n0))


def power_exponent_2d(params: SystemParams) -> float:
    """2D power-law exponent nu = (kappa/g)^2 m k_B T / (2 pi hbar^2 n0)."""
    n0 = params.l**-2
    return (params.kappa_over_g**2 * params.m * KB * params.T
            / (2.0 * math.pi * HBAR**2 * n0))


def plateau_gamma_3d(params: SystemParams) -> float:
    """3D plateau exponent (kappa/g)^2 m k_B T / ((2 pi)^(3/2) hbar^2 n0 sigma)."""
    n0 = params.l**-3
    return (params.kappa_over_g**2 * params.m * KB * params.T
            / ((2.0 * math.pi) ** 1.5 * HBAR**2 * n0 * params.sigma))


def asymptotic_coherence(params: SystemParams, branch: int, t: float,
                         constant: float | None = None) -> float:
    """Closed-form long-time coherence for integer branch D in {1, 2, 3}.

    ``constant`` is C_T (branch 1) or C_T' (branch 2), typically taken
    from :func:`fit_asymptotic_constants`; if None it defaults to 1 and
    the choice is the caller's to record.  Branch 3 has no free constant.
    Valid for t > sigma/c.
    """
    if branch not in (1, 2, 3):
        raise ValueError(f"branch must be 1, 2 or 3, got {branch!r}")
    if t <= params.sigma / params.c:
        raise ValueError("asymptotic form requires t > sigma/c")
    if branch == 1:
        C = 1.0 if constant is None else constant
        return C * math.exp(-decay_rate_1d(params) * t)
    if branch == 2:
        C = 1.0 if constant is None else constant
        return C * (params.sigma / (params.c * t)) ** power_exponent_2d(params)
    return math.exp(-plateau_gamma_3d(params))


class AsymptoticMismatch(RuntimeError):
    """Quadrature does not follow the expected long-time functional form."""


@dataclass(frozen=True)
class AsymptoticFit:
    """Result of constraining the long-time form against quadrature.

    ``rate_or_exponent`` is the fixed (not fitted) decay rate (1D, 1/s),
    power-law exponent nu (2D) or plateau exponent (3D).  ``constant`` is
    the single fitted parameter C_T / C_T' (exactly 1 for 3D).
    ``fit_residual`` is the RMS misfit of log-coherence over the window.
    """

    dimension_branch: int
    rate_or_exponent: float
    constant: float
    fit_window: tuple[float, float]
    fit_residual: float


_RESIDUAL_THRESHOLDS = {1: 1e-3, 2: 1e-2}


def fit_asymptotic_constants(params: SystemParams, quad: QuadratureConfig,
                             branch: int, window: tuple[float, float],
                             n_samples: int = 24,
                             residual_threshold: float | None = None) -> AsymptoticFit:
    """Fit C_T (1D) or C_T' (2D) over a long-time window.

    The slope (1D) / exponent (2D) is pinned to its closed-form value, so
    the fit has one free parameter: the offset of log-coherence against
    tau (1D) or log tau (2D).  A residual above the threshold raises
    :class:`AsymptoticMismatch` -- this guards against quadrature bugs,
    since the model form is exact up to rapidly vanishing corrections.
    """
    if branch not in (1, 2):
        raise ValueError("only branches 1 and 2 carry a fitted constant")
    t_deph = params.sigma / params.c
    t_lo, t_hi = window
    if not (5 * t_deph <= t_lo < t_hi <= 100 * t_deph):
        raise ValueError("window must lie within [5, 100] sigma/c")
    if n_samples < 20:
        raise ValueError("need >= 20 sample times")
    if residual_threshold is None:
        residual_threshold = _RESIDUAL_THRESHOLDS[branch]

    ts = np.linspace(t_lo, t_hi, n_samples)
    log_coh = np.array([-gamma_of_t(params, quad, t) for t in ts])

    if branch == 1:
        rate = decay_rate_1d(params)
        model = -rate * ts
    else:
        rate = power_exponent_2d(params)
        model = rate * np.log(params.sigma / (params.c * ts))

    offset = float(np.mean(log_coh - model))
    residual = float(np.sqrt(np.mean((log_coh - model - offset) ** 2)))
    if residual > residual_threshold:
        raise AsymptoticMismatch(
            f"branch {branch}: log-coherence misfit {residual:.3e} exceeds "
            f"{residual_threshold:.1e} over window [{t_lo:.3e}, {t_hi:.3e}] s; "
            "quadrature disagrees with the long-time closed form"
        )
    return AsymptoticFit(
        dimension_branch=branch,
        rate_or_exponent=rate,
        constant=math.exp(offset),
        fit_window=(t_lo, t_hi),
        fit_residual=residual,
    )
