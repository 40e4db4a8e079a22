"""Shallow-trap corrections: semiclassical density of states and the
validity window within which the homogeneous dephasing result survives.

Phonons in a shallow harmonic trap of frequency omega are treated with
the classical Hamiltonian H(p, x) = c(x)|p| + V(x), where
c(x) = c sqrt(1 - x^2/R^2) is the position-dependent speed of sound,
V(x) = m omega^2 x^2 / 2 and R the condensate radius.  The density of
states is the phase-space integral

    g(eps) = (2 pi hbar)^-D Int dx Int d^D p  delta(eps - H(p, x)),

whose momentum part is done analytically (the delta function pins
|p| = (eps - V(x)) / c(x) on a spherical shell) and whose position part
is integrated numerically over the classically allowed region.  To
leading order in L_eps/R this gives g ~ L_eps^D eps^(D-1), with
L_eps = sqrt(2 eps/(m omega^2)) the classical oscillator amplitude, i.e.
g ~ eps^(3D/2 - 1).

Because the energy-space dephasing integral built from this density of
states has the same shape as the homogeneous one, the trap enters only
through the validity window xi << sigma << a_omega; gamma_trap_shape
makes that statement executable.
"""

from __future__ import annotations

from dataclasses import dataclass
import math
import warnings

import numpy as np

from .constants import HBAR, KB
from .engine import QuadratureConfig, gamma_of_t
from .kernel import coth_stable, dos_prefactor
from .quadrature import integrate_adaptive
from .system import SystemParams, derive

__all__ = [
    "TrapParams", "WindowReport", "semiclassical_dos", "validity_window",
    "gamma_trap_shape", "homogeneous_dos", "homogeneous_dos_numeric",
    "oscillator_amplitude",
]

# "much larger" threshold used by the window report
MUCH_GREATER_FACTOR = 5.0

# position-integral resolution (Gauss-Legendre nodes after the
# turning-point substitution removes all singularities)
_POSITION_NODES = 200


@dataclass(frozen=True)
class TrapParams:
    """Loose-direction trap: frequency omega, condensate radius R and the
    oscillator length a_omega = sqrt(hbar/(m omega)).

    ``a_omega`` is stored explicitly so the dataclass stands alone, but
    it must match omega for the given atom mass; use :meth:`for_mass`.
    """

    omega: float
    R: float
    a_omega: float

    def __post_init__(self):
        if self.omega <= 0 or self.R <= 0 or self.a_omega <= 0:
            raise ValueError("omega, R and a_omega must be > 0")

    @classmethod
    def for_mass(cls, omega: float, R: float, m: float) -> "TrapParams":
        return cls(omega=omega, R=R, a_omega=math.sqrt(HBAR / (m * omega)))

    @classmethod
    def thermodynamic_family(cls, omega_R_product: float, R: float,
                             m: float) -> "TrapParams":
        """Member of the family omega ~ 1/R (omega * R held fixed), the
        convention under which the thermodynamic limit is taken so the
        central density stays finite."""
        return cls.for_mass(omega=omega_R_product / R, R=R, m=m)


def _check_consistent(trap: TrapParams, params: SystemParams) -> None:
    expected = math.sqrt(HBAR / (params.m * trap.omega))
    if not math.isclose(trap.a_omega, expected, rel_tol=1e-12):
        raise ValueError(
            f"a_omega = {trap.a_omega!r} inconsistent with omega and m "
            f"(expected {expected!r})"
        )


def oscillator_amplitude(trap: TrapParams, params: SystemParams, eps: float) -> float:
    """Classical amplitude L_eps = sqrt(2 eps / (m omega^2))."""
    return math.sqrt(2.0 * eps / (params.m * trap.omega**2))


def _sphere_surface(D: float) -> float:
    """Surface area of the unit sphere in D dimensions, 2 pi^(D/2)/Gamma(D/2)."""
    return 2.0 * math.pi ** (D / 2.0) / math.gamma(D / 2.0)


def semiclassical_dos(trap: TrapParams, params: SystemParams, eps: float) -> float:
    """Phase-space density of states g(eps), J^-1.

    Valid for hbar omega / 2 < eps < hbar c / sigma (the energy range
    relevant to the dephasing) and for turning points inside the
    condensate, L_eps < R.  The momentum shell is analytic; the radial
    position integral uses the substitution x = L_eps sin(theta), which
    absorbs the turning point, and fixed high-order Gauss-Legendre.
    """
    _check_consistent(trap, params)
    D = params.D
    lo = HBAR * trap.omega / 2.0
    hi = HBAR * params.c / params.sigma
    if not lo < eps < hi:
        raise ValueError(
            f"eps = {eps:.6g} J outside the validity range "
            f"({lo:.6g}, {hi:.6g}) J"
        )
    x_t = oscillator_amplitude(trap, params, eps)
    if x_t >= trap.R:
        raise ValueError("turning point reaches the condensate edge (L_eps >= R)")

    omega_d = _sphere_surface(D)
    theta, wts = np.polynomial.legendre.leggauss(_POSITION_NODES)
    theta = 0.25 * math.pi * (theta + 1.0)
    wts = 0.25 * math.pi * wts

    x = x_t * np.sin(theta)
    c_x = params.c * np.sqrt(1.0 - (x / trap.R) ** 2)
    p = eps * np.cos(theta) ** 2 / c_x
    radial = x ** (D - 1.0) * p ** (D - 1.0) / c_x * x_t * np.cos(theta)
    integral = float(np.sum(wts * radial))
    return omega_d**2 / (2.0 * math.pi * HBAR) ** D * integral


def homogeneous_dos(D: float, volume_factor: float, eps: float, c: float) -> float:
    """Closed-form density of states of H = c|p| in a homogeneous region
    of D-volume ``volume_factor``: S_D * V * eps^(D-1) / (hbar c)^D.

    Derived by counting phase-space volume directly; the D = 1 case
    reduces to the familiar L / (pi hbar c).
    """
    return dos_prefactor(D) * volume_factor * eps ** (D - 1.0) / (HBAR * c) ** D


def homogeneous_dos_numeric(D: float, radius: float, eps: float, c: float) -> float:
    """Same machinery as :func:`semiclassical_dos` but with V = 0 and
    constant sound speed over a sphere of the given radius; cross-checks
    the numeric path against :func:`homogeneous_dos` with
    ``volume_factor`` equal to the sphere volume."""
    omega_d = _sphere_surface(D)
    x, wts = np.polynomial.legendre.leggauss(_POSITION_NODES)
    x = 0.5 * radius * (x + 1.0)
    wts = 0.5 * radius * wts
    p = eps / c
    radial = x ** (D - 1.0) * p ** (D - 1.0) / c
    return omega_d**2 / (2.0 * math.pi * HBAR) ** D * float(np.sum(wts * radial))


@dataclass(frozen=True)
class WindowReport:
    """Report on the shallow-trap validity window xi << sigma << a_omega."""

    xi: float
    sigma: float
    a_omega: float
    sigma_over_xi: float
    a_omega_over_sigma: float
    xi_much_less_than_sigma: bool
    sigma_much_less_than_a_omega: bool

    @property
    def satisfied(self) -> bool:
        return self.xi_much_less_than_sigma and self.sigma_much_less_than_a_omega


def validity_window(trap: TrapParams, params: SystemParams) -> WindowReport:
    """Evaluate both inequalities of the validity window with the
    documented 'much less' threshold factor of 5."""
    _check_consistent(trap, params)
    xi = derive(params).xi
    s_over_xi = params.sigma / xi
    a_over_s = trap.a_omega / params.sigma
    return WindowReport(
        xi=xi, sigma=params.sigma, a_omega=trap.a_omega,
        sigma_over_xi=s_over_xi, a_omega_over_sigma=a_over_s,
        xi_much_less_than_sigma=s_over_xi >= MUCH_GREATER_FACTOR,
        sigma_much_less_than_a_omega=a_over_s >= MUCH_GREATER_FACTOR,
    )


def _energy_integral(params: SystemParams, quad: QuadratureConfig, t: float) -> float:
    """The energy-space dephasing integral (no normalisation):

    Int_0^inf d eps eps^(D-1) exp(-sigma^2 eps^2/(2 hbar^2 c^2))
             coth(eps / 2 k_B T) (1 - cos(eps t / hbar)) / eps
    """
    if t == 0:
        return 0.0
    D, sigma, c, T = params.D, params.sigma, params.c, params.T
    eps_max = quad.k_max_factor * HBAR * c / sigma

    def f(eps):
        eps = np.atleast_1d(np.asarray(eps, dtype=float))
        out = np.zeros_like(eps)
        pos = eps > 0
        e = eps[pos]
        osc = 2.0 * np.sin(0.5 * e * t / HBAR) ** 2
        th = np.ones_like(e) if T == 0 else coth_stable(e / (2.0 * KB * T))
        out[pos] = (e ** (D - 1.0)
                    * np.exp(-0.5 * (sigma * e / (HBAR * c)) ** 2)
                    * th * osc / e)
        if np.any(~pos) and D == 1.0 and T > 0:
            out[~pos] = KB * T * t**2 / HBAR**2
        return out

    width = eps_max / 16.0
    period = 2.0 * math.pi * HBAR / t
    width = min(width, period / quad.oscillation_panels_per_period)
    edges = np.linspace(0.0, eps_max, int(math.ceil(eps_max / width)) + 1)
    value, _ = integrate_adaptive(f, edges, quad.rel_tol, quad.abs_tol,
                                  quad.max_panel_depth)
    return value


def gamma_trap_shape(trap: TrapParams, params: SystemParams,
                     quad: QuadratureConfig, t: float) -> float:
    """gamma(t) computed through the energy-space integral of the trap
    analysis, normalised against the homogeneous engine at t = sigma/c.

    Inside the validity window the trap changes the dephasing only
    through this overall normalisation, so after calibration the result
    equals :func:`gamma_of_t` at every time; a window violation triggers
    a warning, not an error.
    """
    _check_consistent(trap, params)
    if not validity_window(trap, params).satisfied:
        warnings.warn(
            "validity window xi << sigma << a_omega not satisfied; the "
            "homogeneous-shape result may not describe this trap",
            stacklevel=2,
        )
    if t < 0:
        raise ValueError("t must be >= 0")
    if t == 0:
        return 0.0
    t_ref = params.sigma / params.c
    ref = _energy_integral(params, quad, t_ref)
    norm = gamma_of_t(params, quad, t_ref) / ref
    return norm * _energy_integral(params, quad, t)
