"""Ramsey-measurement layer: from the dephasing exponent to what the
experiment actually records.

A pi/2 -- pi (echo) -- pi/2 pulse sequence maps the coherence onto the
population of the coupled state,

    P(|1>) = (1 - e^-gamma(tau)) / 2,

and imperfect state detection plus extrinsic dephasing turn this into

    P~ = P_d (1 - e^(-gamma - gamma_d tau)) / 2 + P_s.

The fringe visibility V = (P~max - P~min)/(P~max + P~min), with the
extremes taken at complete (gamma -> inf) and absent (gamma = 0)
condensate dephasing, has the closed form

    V = (1 - gamma_d tau) / (1 + gamma_d tau + 4 P_s / P_d)

valid for gamma_d tau << 1.  The closed form expands e^(-gamma_d tau) to
first order in P~min only; both the exact ratio and the expansion are
returned so the approximation stays auditable.
"""

from __future__ import annotations

from dataclasses import dataclass
import math

__all__ = ["RamseyParams", "VisibilityResult", "ramsey_probability",
           "effective_probability", "visibility"]

# gamma_d * tau beyond which the first-order visibility formula degrades
LINEARIZATION_WARN = 0.3


@dataclass(frozen=True)
class RamseyParams:
    """Phenomenological detection constants.

    P_d: probability of detecting state |1> when present; P_s: spurious
    detection probability; gamma_d: extrinsic dephasing rate (1/s);
    tau: interaction time (s).
    """

    P_d: float
    P_s: float
    gamma_d: float
    tau: float

    def __post_init__(self):
        if not 0.0 <= self.P_d <= 1.0:
            raise ValueError("P_d must lie in [0, 1]")
        if not 0.0 <= self.P_s <= 1.0:
            raise ValueError("P_s must lie in [0, 1]")
        if self.gamma_d < 0:
            raise ValueError("gamma_d must be >= 0")
        if self.tau < 0:
            raise ValueError("tau must be >= 0")

    @property
    def linearization_ok(self) -> bool:
        """Whether gamma_d * tau is small enough for the closed-form V."""
        return self.gamma_d * self.tau <= LINEARIZATION_WARN


def ramsey_probability(gamma: float) -> float:
    """Probability (1 - e^-gamma)/2 of ending in |1> with ideal detection."""
    if gamma < 0:
        raise ValueError("gamma must be >= 0")
    return 0.5 * (1.0 - math.exp(-gamma))


def effective_probability(gamma: float, rp: RamseyParams) -> float:
    """Detection probability P~ = P_d (1 - e^(-gamma - gamma_d tau))/2 + P_s."""
    if gamma < 0:
        raise ValueError("gamma must be >= 0")
    return 0.5 * rp.P_d * (1.0 - math.exp(-gamma - rp.gamma_d * rp.tau)) + rp.P_s


@dataclass(frozen=True)
class VisibilityResult:
    """Closed-form visibility, the exact definition-based value, and the
    gap between them (the size of the first-order expansion error)."""

    closed_form: float
    exact: float
    discrepancy: float


def visibility(rp: RamseyParams) -> VisibilityResult:
    """Fringe visibility under imperfect detection.

    Exact route: P~max at gamma -> inf, P~min at gamma = 0 (extrinsic
    dephasing retained in both), then the contrast ratio.  Closed form:
    first order in gamma_d tau.
    """
    if rp.P_d == 0:
        raise ValueError("P_d must be > 0 for a visibility")
    x = rp.gamma_d * rp.tau
    ratio = rp.P_s / rp.P_d

    closed = (1.0 - x) / (1.0 + x + 4.0 * ratio)

    p_max = 0.5 * rp.P_d + rp.P_s
    p_min = 0.5 * rp.P_d * (1.0 - math.exp(-x)) + rp.P_s
    exact = (p_max - p_min) / (p_max + p_min)

    return VisibilityResult(closed_form=closed, exact=exact,
                            discrepancy=abs(closed - exact))
