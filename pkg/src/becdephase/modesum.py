"""Brute-force finite-box oracle for the dephasing exponent.

Instead of the thermodynamic-limit integral, gamma(t) is evaluated as an
explicit sum over the plane-wave modes k = 2 pi n / L of a periodic box,

    gamma(t) = sum_k |g_k|^2 coth(hbar w_k / 2 k_B T)
                      (1 - cos(w_k t)) / (hbar w_k)^2,

and, through an entirely separate expression, as half the coupling ratio
squared times the variance of the coarse-grained condensate phase
difference,

    <(d phibar)^2> = sum_k (g / (L^D hbar w_k)) |f_k|^2
                            coth(hbar w_k / 2 k_B T) (1 - cos(w_k t)).

The two routes are algebraically identical mode by mode, which makes
their near-machine agreement a strong internal consistency check, while
the sum as a whole provides an independent oracle for the quadrature
engine.

Mode normalisation.  The phonon amplitudes are fixed by the canonical
commutator of the phase and density-fluctuation fields: the density
amplitude is a_k = sqrt(hbar w_k / 2 g) and the phase amplitude
1/(2 a_k) ... i.e. |g_k|^2 = kappa^2 (hbar w_k / 2 g) |f_k|^2 / L^D.
With this choice the discrete sum converges to the continuum integral
of the engine; the frequently quoted a_k = sqrt(hbar w_k / g) (with the
phase variance doubled to match) would make both discrete routes twice
the thermodynamic-limit result.

The k = 0 mode is excluded: its phase amplitude diverges and the
thermodynamic-limit integrand assigns it zero measure.  The leading
finite-size error is exactly the weight of the excluded zero-mode cell
(Poisson summation), which in 1D at T > 0 equals the analytic k -> 0
integrand limit times one mode weight.  Setting
``zero_mode_correction=True`` adds that term back, accelerating the
convergence from O(1/L) to the lattice-aliasing floor.
"""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from .constants import HBAR, KB
from .system import SystemParams, derive

__all__ = ["ModeSumConfig", "gamma_discrete", "phase_variance_discrete",
           "mode_count"]


@dataclass(frozen=True)
class ModeSumConfig:
    """Finite-box lattice for the brute-force sums.

    ``lattice_strategy`` is 'full-lattice' (D = 1, 2: loop over every
    lattice vector) or 'radial-shells' (D = 3: exact integer counts of
    lattice points per squared-radius shell, so no triple loop).
    ``shell_width`` is accepted for forward compatibility but unused:
    the D = 3 shells are the exact integer values of |n|^2.
    """

    L: float
    k_cutoff: float
    lattice_strategy: str = "full-lattice"
    shell_width: float | None = None
    zero_mode_correction: bool = False
    mode_budget: int = 50_000_000

    def __post_init__(self):
        if self.L <= 0:
            raise ValueError("L must be > 0")
        if self.k_cutoff <= 0:
            raise ValueError("k_cutoff must be > 0")
        if self.lattice_strategy not in ("full-lattice", "radial-shells"):
            raise ValueError(f"unknown lattice_strategy {self.lattice_strategy!r}")


def _check(params: SystemParams, cfg: ModeSumConfig) -> int:
    D = params.D
    if D not in (1.0, 2.0, 3.0):
        raise ValueError("the mode-sum oracle supports integer D in {1, 2, 3} only")
    if cfg.k_cutoff < 6.0 / params.sigma:
        raise ValueError("k_cutoff must be >= 6/sigma to cover the form factor")
    D = int(D)
    expected = "radial-shells" if D == 3 else "full-lattice"
    if cfg.lattice_strategy != expected:
        raise ValueError(
            f"lattice_strategy {cfg.lattice_strategy!r} does not match D = {D} "
            f"(expected {expected!r})"
        )
    return D


def _mode_spectrum(params: SystemParams, cfg: ModeSumConfig) -> tuple[np.ndarray, np.ndarray]:
    """Distinct |k| values and their exact degeneracies, k = 0 excluded."""
    D = _check(params, cfg)
    dk = 2.0 * math.pi / cfg.L
    nmax = int(math.floor(cfg.k_cutoff / dk))
    if nmax < 1:
        raise ValueError("box too small: no modes below the cutoff")

    if D == 1:
        n = np.arange(1, nmax + 1)
        k = n * dk
        deg = np.full(n.shape, 2.0)  # +n and -n
    else:
        # counts of lattice vectors with |n|^2 = s, via convolution of the
        # 1D distribution of n^2 over n in [-nmax, nmax]
        c1 = np.bincount(np.arange(-nmax, nmax + 1) ** 2)
        cd = c1
        for _ in range(D - 1):
            cd = np.convolve(cd, c1)
        # shells extend past nmax^2: lattice vectors off the axes reach
        # |n|^2 up to (k_cutoff/dk)^2 while every component stays <= nmax
        s_max = min(int(math.floor((cfg.k_cutoff / dk) ** 2)), cd.size - 1)
        s = np.arange(1, s_max + 1)
        deg = cd[1:s_max + 1].astype(float)
        keep = deg > 0
        s, deg = s[keep], deg[keep]
        k = dk * np.sqrt(s.astype(float))
        inside = k <= cfg.k_cutoff
        k, deg = k[inside], deg[inside]

    total = float(np.sum(deg))
    if total > cfg.mode_budget:
        raise ValueError(f"mode count {total:.3g} exceeds budget {cfg.mode_budget}")
    return k, deg


def mode_count(params: SystemParams, cfg: ModeSumConfig) -> int:
    """Number of lattice modes entering the sums (k = 0 excluded)."""
    _, deg = _mode_spectrum(params, cfg)
    return int(round(float(np.sum(deg))))


def _thermal_osc(params: SystemParams, k: np.ndarray, t: float) -> np.ndarray:
    """coth(hbar w / 2 k_B T) * (1 - cos(w t)) on the mode set."""
    w = params.c * k
    osc = 2.0 * np.sin(0.5 * w * t) ** 2
    if params.T == 0:
        return osc
    return osc / np.tanh(HBAR * w / (2.0 * KB * params.T))


def gamma_discrete(params: SystemParams, cfg: ModeSumConfig, t: float) -> float:
    """gamma(t) as the explicit mode sum over the finite box."""
    if t < 0:
        raise ValueError("t must be >= 0")
    k, deg = _mode_spectrum(params, cfg)
    dq = derive(params)
    w = params.c * k
    g_k_sq = (params.kappa_over_g**2 * dq.g_int * HBAR * w
              * np.exp(-(params.sigma * k) ** 2 / 2.0)
              / (2.0 * cfg.L ** params.D))
    terms = deg * g_k_sq * _thermal_osc(params, k, t) / (HBAR * w) ** 2
    total = float(np.sum(terms))
    if cfg.zero_mode_correction and params.D == 1.0 and params.T > 0:
        # analytic k -> 0 limit of the summand times one mode weight
        total += (params.kappa_over_g**2 * dq.g_int * KB * params.T * t**2
                  / (2.0 * cfg.L * HBAR**2))
    return total


def phase_variance_discrete(params: SystemParams, cfg: ModeSumConfig, t: float) -> float:
    """Variance of the coarse-grained phase difference <(d phibar)^2>(t)."""
    if t < 0:
        raise ValueError("t must be >= 0")
    k, deg = _mode_spectrum(params, cfg)
    dq = derive(params)
    w = params.c * k
    terms = (deg * dq.g_int * np.exp(-(params.sigma * k) ** 2 / 2.0)
             * _thermal_osc(params, k, t) / (cfg.L ** params.D * HBAR * w))
    total = float(np.sum(terms))
    if cfg.zero_mode_correction and params.D == 1.0 and params.T > 0:
        total += dq.g_int * KB * params.T * t**2 / (cfg.L * HBAR**2)
    return total
