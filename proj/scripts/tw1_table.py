#!/usr/bin/env python3
"""Tabulate quantiles of the Tracy-Widom law of order beta = 1.

F1(s) is evaluated as the Fredholm determinant det(I - K_s) on L2(0, inf)
with kernel K_s(x, y) = Ai((x + y)/2 + s) / 2, discretized by Gauss-Legendre
quadrature on a truncated interval (Bornemann's method).  Quantiles are found
by Brent root finding on F1(s) - p.  Output is a C++ table body.
"""
import sys

import numpy as np
from scipy.optimize import brentq
from scipy.special import airy


def tw1_cdf(s, nodes=160, upper=40.0):
    x, w = np.polynomial.legendre.leggauss(nodes)
    x = 0.5 * upper * (x + 1.0)
    w = 0.5 * upper * w
    sw = np.sqrt(w)
    ai = airy(0.5 * (x[:, None] + x[None, :]) + s)[0]
    k = 0.5 * sw[:, None] * ai * sw[None, :]
    return np.linalg.det(np.eye(nodes) - k)


def quantile(p):
    return brentq(lambda s: tw1_cdf(s) - p, -8.0, 8.0, xtol=1e-14, rtol=1e-15)


def grid():
    probs = [0.005, 0.0075, 0.01, 0.015, 0.02, 0.03, 0.04]
    probs += [round(0.05 + 0.0125 * i, 5) for i in range(73)]  # 0.05 .. 0.95
    probs += [0.96, 0.97, 0.975, 0.98, 0.985, 0.99, 0.9925, 0.995]
    return sorted(set(probs))


def main():
    # Convergence check of the discretization.
    for s in (-3.0, 0.0, 2.0):
        a, b = tw1_cdf(s), tw1_cdf(s, 240, 60.0)
        assert abs(a - b) < 1e-12, (s, a, b)
    out = sys.stdout
    for p in grid():
        out.write(f"    {{{p!r}, {quantile(p):.15g}}},\n")


if __name__ == "__main__":
    main()
