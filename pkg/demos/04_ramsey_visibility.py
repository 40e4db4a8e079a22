#!/usr/bin/env python3
"""What a Ramsey experiment would actually measure.

A pi/2 -- pi -- pi/2 pulse sequence converts the impurity coherence into
the population of the coupled state, P = (1 - e^-gamma)/2.  Imperfect
detection (efficiency P_d, spurious counts P_s) and extrinsic dephasing
at rate gamma_d compress the fringe contrast; with P_d = 0.8,
P_s = 0.04 and gamma_d tau = 0.1 the visibility drops to
V = 0.9/1.3 ~ 69%, still ample to resolve the condensate-induced signal.

Usage:
    python3 demos/04_ramsey_visibility.py [--out-dir OUT] [--no-plot]
"""

import argparse
import pathlib

import numpy as np

from becdephase import (QuadratureConfig, RamseyParams, effective_probability,
                        gamma_of_t, paper_default_params, ramsey_probability,
                        visibility)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", default="demo_output", type=pathlib.Path)
    ap.add_argument("--no-plot", action="store_true")
    args = ap.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)

    rp = RamseyParams(P_d=0.8, P_s=0.04, gamma_d=10.0, tau=0.01)
    v = visibility(rp)
    print("detection parameters: P_d = 0.8, P_s = 0.04, "
          "gamma_d = 10 1/s, tau = 10 ms")
    print(f"visibility (closed form): {v.closed_form:.4f}")
    print(f"visibility (exact ratio): {v.exact:.4f}")
    print(f"first-order expansion error: {v.discrepancy:.2e}\n")

    params = paper_default_params(D=3.0)
    quad = QuadratureConfig()
    taus = np.geomspace(1e-5, 1e-2, 40)
    rows = []
    for tau in taus:
        g = gamma_of_t(params, quad, float(tau))
        rp_tau = RamseyParams(P_d=0.8, P_s=0.04, gamma_d=10.0, tau=float(tau))
        rows.append((float(tau), ramsey_probability(g),
                     effective_probability(g, rp_tau)))

    path = args.out_dir / "ramsey_signal_3d.csv"
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("tau_s,p_ideal,p_effective\n")
        for row in rows:
            fh.write(",".join(repr(x) for x in row) + "\n")
    print(f"wrote {path}")
    print(f"ideal signal saturates at P = {rows[-1][1]:.4f} "
          "(finite 3D plateau, not 1/2)")

    if not args.no_plot:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        taus_s, p_ideal, p_eff = map(np.array, zip(*rows))
        fig, ax = plt.subplots(figsize=(6, 4))
        ax.plot(taus_s * 1e3, p_ideal, label="ideal detection")
        ax.plot(taus_s * 1e3, p_eff, "--", label="with detection noise")
        ax.set_xscale("log")
        ax.set_xlabel("interaction time (ms)")
        ax.set_ylabel("P(coupled state)")
        ax.legend()
        fig.tight_layout()
        out = args.out_dir / "ramsey_signal.png"
        fig.savefig(out, dpi=150)
        print(f"wrote {out}")


if __name__ == "__main__":
    main()
