"""Physical constants (CODATA 2018).

All internal computations are in SI units; these are the only physical
constants the package uses.
"""

# Reduced Planck constant, J s. CODATA 2018 (exact, derived from the
# defined value h = 6.62607015e-34 J s).
HBAR = 1.054571817e-34

# Boltzmann constant, J/K. CODATA 2018 (exact by definition).
KB = 1.380649e-23
