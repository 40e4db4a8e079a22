"""Physical parameters of the impurity + condensate system.

The condensate is characterised by the atom mass m, the mean interparticle
distance l, the speed of sound c and the temperature T.  The impurity
(a two-level atom pinned in its own trap) has ground-state size sigma in
the loosely confined directions and couples to the condensate density with
a strength quoted as the dimensionless ratio kappa/g, where
g = m c^2 / n0 is the condensate interaction constant.  The effective
condensate dimension D may be any real number in [1, 3]; non-integer
values interpolate the density of states between the integer geometries.

Soft modelling assumptions (sigma much larger than both l and the healing
length xi) are reported as warnings, never errors: realistic parameter
sets sit close to these boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import math

from .constants import HBAR, KB


class ConfigError(ValueError):
    """Raised for malformed or incomplete parameter config files."""


# sigma/l and sigma/xi below this factor trigger a regime warning
SOFT_RATIO_THRESHOLD = 5.0

# k_B T above this multiple of hbar c / sigma counts as high temperature
HIGH_T_FACTOR = 10.0


@dataclass(frozen=True)
class SystemParams:
    """All physical inputs, SI units.

    Attributes
    ----------
    m : float
        Mass of a condensate atom (kg).
    l : float
        Mean interparticle distance (m).
    c : float
        Speed of sound in the condensate (m/s).
    T : float
        Temperature (K); T = 0 is allowed and treated exactly.
    sigma : float
        Impurity ground-state size in the loose directions (m).
    kappa_over_g : float
        Signed dimensionless coupling ratio; magnitude of order 1 expected.
    D : float
        Effective condensate dimension, 1 <= D <= 3 (real-valued).
    """

    m: float
    l: float
    c: float
    T: float
    sigma: float = 1e-6
    kappa_over_g: float = 1.0
    D: float = 1.0

    def __post_init__(self):
        for name in ("m", "l", "c", "sigma"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be finite and > 0, got {v!r}")
        if not (math.isfinite(self.T) and self.T >= 0):
            raise ValueError(f"T must be finite and >= 0, got {self.T!r}")
        if not math.isfinite(self.kappa_over_g):
            raise ValueError("kappa_over_g must be finite")
        if not (1.0 <= self.D <= 3.0):
            raise ValueError(f"D must lie in [1, 3], got {self.D!r}")


@dataclass(frozen=True)
class DerivedQuantities:
    """Quantities computed exactly from :class:`SystemParams`.

    n0 = l^-D, g_int = m c^2 / n0 = m c^2 l^D, xi = hbar/(m c),
    t_deph = sigma/c, theta_cross = hbar c/(sigma k_B),
    k_thermal = k_B T/(hbar c).
    """

    n0: float
    g_int: float
    xi: float
    t_deph: float
    theta_cross: float
    k_thermal: float
    regime_flags: tuple[str, ...] = field(default=())


def derive(params: SystemParams) -> DerivedQuantities:
    """Compute derived quantities and collect regime warnings.

    Pure function: identical inputs give bit-identical outputs.  The
    flags never alter any numerical result downstream.
    """
    n0 = params.l ** (-params.D)
    g_int = params.m * params.c**2 / n0
    xi = HBAR / (params.m * params.c)
    t_deph = params.sigma / params.c
    theta_cross = HBAR * params.c / (params.sigma * KB)
    k_thermal = KB * params.T / (HBAR * params.c)

    flags = []
    if params.sigma / params.l < SOFT_RATIO_THRESHOLD:
        flags.append(
            f"sigma/l = {params.sigma / params.l:.3g} < {SOFT_RATIO_THRESHOLD:g}: "
            "coarse-grained density description is marginal"
        )
    if params.sigma / xi < SOFT_RATIO_THRESHOLD:
        flags.append(
            f"sigma/xi = {params.sigma / xi:.3g} < {SOFT_RATIO_THRESHOLD:g}: "
            "linear phonon dispersion is marginal at the cutoff scale"
        )
    if params.T > HIGH_T_FACTOR * theta_cross:
        flags.append(
            f"high-temperature regime: T = {params.T:.3g} K >> "
            f"theta_cross = {theta_cross:.3g} K"
        )

    return DerivedQuantities(
        n0=n0,
        g_int=g_int,
        xi=xi,
        t_deph=t_deph,
        theta_cross=theta_cross,
        k_thermal=k_thermal,
        regime_flags=tuple(flags),
    )


def thermal_regime(params: SystemParams) -> str:
    """Classify the temperature regime: 'zero-T', 'high-T' or 'low-T'.

    'zero-T' iff T == 0 exactly.  'high-T' iff k_B T exceeds
    ``HIGH_T_FACTOR`` times hbar c / sigma (thermal phonons dominate the
    dephasing integral); 'low-T' otherwise.  The factor of 10 threshold
    is a convention, documented here rather than tunable.
    """
    if params.T == 0:
        return "zero-T"
    theta_cross = HBAR * params.c / (params.sigma * KB)
    if params.T > HIGH_T_FACTOR * theta_cross:
        return "high-T"
    return "low-T"


# ---------------------------------------------------------------------------
# config file handling
# ---------------------------------------------------------------------------

# config key -> (SystemParams field, required)
_CONFIG_KEYS = {
    "mass_kg": ("m", True),
    "interparticle_distance_m": ("l", True),
    "sound_speed_m_per_s": ("c", True),
    "temperature_K": ("T", True),
    "dot_size_m": ("sigma", True),
    "kappa_over_g": ("kappa_over_g", False),
    "dimension": ("D", False),
}

_CONFIG_DEFAULTS = {"kappa_over_g": 1.0, "dimension": 1.0}


def parse_config(text: str) -> SystemParams:
    """Parse a plain-text ``key = value`` config into :class:`SystemParams`.

    Blank lines and lines starting with '#' are ignored.  Unknown keys are
    an error.  Missing keys have no defaults except kappa_over_g = 1.0 and
    dimension = 1.0.
    """
    seen: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in seen:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        try:
            seen[key] = float(value.strip())
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad value for {key!r}: {value.strip()!r}") from exc

    kwargs = {}
    for key, (fieldname, required) in _CONFIG_KEYS.items():
        if key in seen:
            kwargs[fieldname] = seen[key]
        elif key in _CONFIG_DEFAULTS:
            kwargs[fieldname] = _CONFIG_DEFAULTS[key]
        elif required:
            raise ConfigError(f"missing required key {key!r}")
    try:
        return SystemParams(**kwargs)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def load_config(path) -> SystemParams:
    """Read a config file (UTF-8) and parse it."""
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def paper_default_params(D: float = 1.0, T: float = 2e-7,
                         kappa_over_g: float = 1.0) -> SystemParams:
    """Reference parameter set used throughout the documentation examples.

    m = 1e-25 kg, l = 5e-7 m, c = 1e-3 m/s, sigma = 1e-6 m; temperature,
    coupling ratio and dimension are selectable.
    """
    return SystemParams(m=1e-25, l=5e-7, c=1e-3, T=T, sigma=1e-6,
                        kappa_over_g=kappa_over_g, D=D)
