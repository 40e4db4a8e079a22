#!/usr/bin/env python3
"""Coherence versus temperature, and where thermal phonons take over.

Below theta_cross = hbar c / (sigma k_B) (about 7.6 nK at the default
physics) dephasing is dominated by quantum fluctuations and nearly
temperature-independent; above it, thermally occupied phonons scale
gamma linearly with T.  In 3D the dephasing is also time-independent
once tau >> sigma/c, so the tau = 2 and tau = 10 sigma/c curves lie on
top of each other -- a direct signature of the plateau.

Usage:
    python3 demos/03_temperature_dependence.py [--out-dir OUT] [--no-plot]
"""

import argparse
import pathlib

import numpy as np

from becdephase import (QuadratureConfig, derive, paper_default_params,
                        run_temperature_sweep, write_curve_csv)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", default="demo_output", type=pathlib.Path)
    ap.add_argument("--no-plot", action="store_true")
    args = ap.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)

    params = paper_default_params()
    theta = derive(params).theta_cross
    print(f"crossover temperature theta_cross = {theta * 1e9:.2f} nK\n")

    t_deph = params.sigma / params.c
    times = [2 * t_deph, 10 * t_deph]
    T_grid = np.geomspace(1e-9, 3e-7, 30)
    curves = run_temperature_sweep(params, QuadratureConfig(), T_grid, times)

    for curve in curves:
        D = curve.metadata["curve_dimension"]
        tau = curve.metadata["fixed_time_s"] / t_deph
        path = args.out_dir / f"coherence_vs_T_{D:.0f}d_tau{tau:g}sc.csv"
        write_curve_csv(curve, path)
        print(f"wrote {path}")

    by_key = {(c.metadata["curve_dimension"],
               c.metadata["fixed_time_s"] / t_deph): c for c in curves}
    gap = np.max(np.abs(np.array(by_key[(3.0, 2.0)].coherence)
                        - np.array(by_key[(3.0, 10.0)].coherence)))
    print(f"\n3D: max |coherence(2 sigma/c) - coherence(10 sigma/c)| "
          f"over the grid = {gap:.4f}")

    if not args.no_plot:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, ax = plt.subplots(figsize=(6, 4))
        for (D, tau), curve in sorted(by_key.items()):
            ax.plot(np.array(curve.abscissa) * 1e9, curve.coherence,
                    label=rf"D = {D:.0f}, $\tau = {tau:g}\,\sigma/c$")
        ax.axvline(theta * 1e9, color="gray", lw=0.5)
        ax.set_xscale("log")
        ax.set_xlabel("temperature (nK)")
        ax.set_ylabel(r"coherence $e^{-\gamma}$")
        ax.legend(fontsize=8)
        fig.tight_layout()
        out = args.out_dir / "coherence_vs_temperature.png"
        fig.savefig(out, dpi=150)
        print(f"wrote {out}")


if __name__ == "__main__":
    main()
