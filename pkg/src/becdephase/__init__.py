"""Dephasing of a two-level impurity coupled to a D-dimensional
Bose-Einstein condensate.

The package computes the phase-coherence function e^-gamma(t) of an
atomic quantum dot immersed in a condensate, its long-time behaviour in
one, two and three effective dimensions, a brute-force finite-box oracle
for validation, shallow-trap corrections, and the Ramsey-interferometry
observables an experiment would record.
"""

__version__ = "0.1.0"

from .constants import HBAR, KB
from .system import (ConfigError, DerivedQuantities, SystemParams, derive,
                     load_config, paper_default_params, parse_config,
                     thermal_regime)
from .kernel import (IntegrandContext, coth_stable, dos_prefactor,
                     form_factor_sq, integrand, make_context)
from .quadrature import QuadratureError
from .engine import (AsymptoticFit, AsymptoticMismatch, QuadratureConfig,
                     asymptotic_coherence, coherence_of_t, decay_rate_1d,
                     fit_asymptotic_constants, gamma_of_t,
                     gamma_with_error, gamma_zero_temperature,
                     plateau_gamma_3d, power_exponent_2d)
from .modesum import (ModeSumConfig, gamma_discrete, mode_count,
                      phase_variance_discrete)
from .trap import (TrapParams, WindowReport, gamma_trap_shape,
                   homogeneous_dos, semiclassical_dos, validity_window)
from .ramsey import (RamseyParams, VisibilityResult, effective_probability,
                     ramsey_probability, visibility)
from .sweeps import (CoherenceCurve, SweepSpec, run_dimension_sweep,
                     run_temperature_sweep, run_time_sweep, run_validation,
                     write_curve_csv)
