import dataclasses
import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from becdephase import (ModeSumConfig, gamma_discrete, gamma_of_t, mode_count,
                        paper_default_params, phase_variance_discrete)
from becdephase.modesum import _mode_spectrum

T_DEPH = 1e-3
SIGMA = 1e-6


def _cfg(D, L_factor=30.0, **kw):
    strategy = "radial-shells" if D == 3 else "full-lattice"
    return ModeSumConfig(L=L_factor * SIGMA, k_cutoff=6.5 / SIGMA,
                         lattice_strategy=strategy, **kw)


def test_config_validation():
    with pytest.raises(ValueError):
        ModeSumConfig(L=-1.0, k_cutoff=1e7)
    with pytest.raises(ValueError):
        ModeSumConfig(L=1e-4, k_cutoff=0.0)
    with pytest.raises(ValueError):
        ModeSumConfig(L=1e-4, k_cutoff=1e7, lattice_strategy="hexagonal")


def test_strategy_must_match_dimension():
    p3 = paper_default_params(D=3.0)
    with pytest.raises(ValueError, match="radial-shells"):
        gamma_discrete(p3, _cfg(1), 1e-3)
    p1 = paper_default_params(D=1.0)
    with pytest.raises(ValueError, match="full-lattice"):
        gamma_discrete(p1, _cfg(3), 1e-3)


def test_cutoff_guard():
    p = paper_default_params(D=1.0)
    low = ModeSumConfig(L=30 * SIGMA, k_cutoff=3.0 / SIGMA)
    with pytest.raises(ValueError, match="k_cutoff"):
        gamma_discrete(p, low, 1e-3)


def test_noninteger_dimension_rejected():
    p = paper_default_params(D=1.5)
    with pytest.raises(ValueError, match="integer D"):
        gamma_discrete(p, _cfg(1), 1e-3)


def test_mode_budget_enforced():
    p = paper_default_params(D=3.0)
    tiny = ModeSumConfig(L=60 * SIGMA, k_cutoff=6.5 / SIGMA,
                         lattice_strategy="radial-shells", mode_budget=1000)
    with pytest.raises(ValueError, match="budget"):
        gamma_discrete(p, tiny, 1e-3)


@pytest.mark.parametrize("D", [2, 3])
def test_shell_degeneracies_match_brute_force(D):
    # exact lattice-point counts per |n|^2 shell vs an explicit loop
    p = dataclasses.replace(paper_default_params(D=float(D)), sigma=1e-6)
    cfg = ModeSumConfig(L=12 * SIGMA, k_cutoff=6.5 / SIGMA,
                        lattice_strategy="radial-shells" if D == 3 else "full-lattice")
    k, deg = _mode_spectrum(p, cfg)
    dk = 2.0 * math.pi / cfg.L
    nmax = int(math.floor(cfg.k_cutoff / dk))
    counts = {}
    for n in itertools.product(range(-nmax, nmax + 1), repeat=D):
        s = sum(c * c for c in n)
        if s == 0:
            continue
        counts[s] = counts.get(s, 0) + 1
    expected = {s: c for s, c in counts.items()
                if dk * math.sqrt(s) <= cfg.k_cutoff}
    got = {int(round((kk / dk) ** 2)): int(d) for kk, d in zip(k, deg)}
    assert got == expected


def test_mode_count_1d():
    p = paper_default_params(D=1.0)
    cfg = _cfg(1, L_factor=30.0)
    # 2 * floor(k_cutoff L / 2 pi)
    expected = 2 * math.floor(6.5 / SIGMA * 30 * SIGMA / (2 * math.pi))
    assert mode_count(p, cfg) == expected


def test_gamma_discrete_zero_at_t_zero():
    for D in (1, 2, 3):
        p = paper_default_params(D=float(D))
        assert gamma_discrete(p, _cfg(D), 0.0) == 0.0
        assert phase_variance_discrete(p, _cfg(D), 0.0) == 0.0


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=1, max_value=3),
       st.floats(min_value=0.05, max_value=10.0),
       st.floats(min_value=1e-8, max_value=5e-7),
       st.floats(min_value=0.3, max_value=2.5))
def test_route_equality(D, t_factor, T, kappa):
    p = paper_default_params(D=float(D), T=T, kappa_over_g=kappa)
    cfg = _cfg(D, L_factor=17.0)
    g = gamma_discrete(p, cfg, t_factor * T_DEPH)
    var = phase_variance_discrete(p, cfg, t_factor * T_DEPH)
    assert g == pytest.approx(0.5 * kappa**2 * var, rel=1e-12)


def test_route_equality_with_zero_mode_correction():
    p = paper_default_params(D=1.0)
    cfg = _cfg(1, zero_mode_correction=True)
    g = gamma_discrete(p, cfg, 2 * T_DEPH)
    var = phase_variance_discrete(p, cfg, 2 * T_DEPH)
    assert g == pytest.approx(0.5 * var, rel=1e-12)


def test_finite_size_error_is_first_order_in_inverse_L(quad):
    # without the zero-mode term the defect vs the continuum is O(1/L):
    # doubling the box should halve it
    p = paper_default_params(D=1.0)
    t = 2 * T_DEPH
    exact = gamma_of_t(p, quad, t)
    errs = []
    for Lf in (25.0, 50.0, 100.0):
        cfg = ModeSumConfig(L=Lf * SIGMA, k_cutoff=8.0 / SIGMA)
        errs.append(abs(gamma_discrete(p, cfg, t) - exact) / exact)
    assert errs[0] > errs[1] > errs[2]
    assert errs[0] / errs[1] == pytest.approx(2.0, rel=0.2)
    assert errs[1] / errs[2] == pytest.approx(2.0, rel=0.2)


def test_zero_mode_correction_removes_leading_error(quad):
    p = paper_default_params(D=1.0)
    t = 2 * T_DEPH
    exact = gamma_of_t(p, quad, t)
    cfg = ModeSumConfig(L=100 * SIGMA, k_cutoff=8.0 / SIGMA,
                        zero_mode_correction=True)
    corrected = gamma_discrete(p, cfg, t)
    assert corrected == pytest.approx(exact, rel=1e-6)
    # doubling the box at fixed physics barely moves the answer
    cfg2 = dataclasses.replace(cfg, L=200 * SIGMA)
    assert gamma_discrete(p, cfg2, t) == pytest.approx(corrected, rel=5e-3)


def test_deterministic():
    p = paper_default_params(D=3.0)
    vals = {gamma_discrete(p, _cfg(3), 1.7 * T_DEPH) for _ in range(3)}
    assert len(vals) == 1
