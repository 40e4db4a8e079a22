#!/usr/bin/env python3
"""Run the package's internal cross-validation suite and explain it.

Every headline number in the other demos is produced by adaptive
quadrature of a single integral.  This script checks that machinery
against independent routes:

  * a brute-force sum over the discrete phonon modes of a finite box,
    evaluated two algebraically different ways (dephasing exponent vs
    coarse-grained phase variance),
  * the closed-form long-time laws in 1D (exponential), 2D (power law)
    and 3D (plateau),
  * the semiclassical density of states against its exact homogeneous
    closed form,
  * the worked Ramsey visibility example.

Usage:
    python3 demos/05_validation_oracles.py
"""

import sys

from becdephase import (QuadratureConfig, paper_default_params,
                        run_validation)


def main():
    report = run_validation(paper_default_params(), QuadratureConfig())
    width = max(len(c["name"]) for c in report["checks"])
    for check in report["checks"]:
        flag = "PASS" if check["passed"] else "FAIL"
        print(f"{flag}  {check['name']:<{width}}  {check['detail']}")
    print()
    if report["passed"]:
        print("all validation checks passed")
        return 0
    print("VALIDATION FAILED")
    return 1


if __name__ == "__main__":
    sys.exit(main())
