"""Shared independent oracles for the test suite.

Everything here recomputes expected values by a route different from the
library code it checks: plain double loops instead of convolutions,
pointwise complex arithmetic plus FFT inversion instead of series
recurrences, and hand-derived geometric closed forms for the extremal
families.
"""

import numpy as np


def brute_cauchy_product(a, b, n):
    """c_k = sum_{i+j=k} a_i b_j for k <= n, by explicit double loop."""
    out = np.zeros(n + 1, dtype=complex)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            if i + j <= n:
                out[i + j] += ai * bj
    return out


def pointwise_recursion(gammas, z):
    """Evaluate the parameter recursion at points z, arithmetic only."""
    z = np.asarray(z, dtype=complex)
    f = np.full(z.shape, complex(gammas[-1]), dtype=complex)
    for g in reversed(gammas[:-1]):
        g = complex(g)
        zf = z * f
        f = (g + zf) / (1.0 + np.conj(g) * zf)
    return f


def fourier_coefficients(gammas, order, rho=0.5, npts=1024):
    """Taylor coefficients via FFT inversion of pointwise values on |z|=rho."""
    t = np.arange(npts)
    z = rho * np.exp(2j * np.pi * t / npts)
    vals = pointwise_recursion(gammas, z)
    hat = np.fft.fft(vals) / npts
    k = np.arange(order + 1)
    return hat[: order + 1] / rho ** k


# hand-derived geometric sums for the automorphism family
# (a - z)/(1 - a z): mu_0 = a, mu_k = (1 - a^2) a^(k-1) for k >= 1


def mobius_linear_sum(a, r):
    """sum_{k>=1} mu_k r^k = (1 - a^2) r / (1 - a r)."""
    return (1.0 - a * a) * r / (1.0 - a * r)


def mobius_square_sum(a, r):
    """sum_{k>=1} mu_k^2 r^(2k) = (1 - a^2)^2 r^2 / (1 - a^2 r^2)."""
    return (1.0 - a * a) ** 2 * r * r / (1.0 - a * a * r * r)


def mobius_majorant(a, r):
    """B(r) = a + (1 - a^2) r / (1 - a r)."""
    return a + mobius_linear_sum(a, r)


def refined_bound_rhs(a, r):
    """(r/(1-r)) (1 - a^2), the refined-bound right side on the family."""
    return r / (1.0 - r) * (1.0 - a * a)
