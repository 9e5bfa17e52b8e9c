"""Dirichlet kernel D_M(x) = sin(Mx/2)/sin(x/2), its derivative, and grid sums.

Evaluation reduces x to delta = x - 2 pi k with delta in [-pi, pi].  On that
interval sin(delta/2) stays away from zero except at delta = 0, so the ratio
form M sinc(M delta / 2 pi) / sinc(delta / 2 pi) is stable everywhere and
takes the limit +-M at the shared zeros automatically.  The sign picked up
by the reduction is (-1)^((M-1) k).
"""

import numpy as np

_TWO_PI = 2.0 * np.pi


def _reduce(x):
    x = np.asarray(x, dtype=float)
    k = np.rint(x / _TWO_PI)
    delta = x - _TWO_PI * k
    return delta, k.astype(np.int64)


def _sign(m, k):
    return np.where(((m - 1) * k) % 2 == 0, 1.0, -1.0)


def dirichlet(m, x):
    """Kernel value; scalar in, scalar out."""
    delta, k = _reduce(x)
    val = m * np.sinc(m * delta / _TWO_PI) / np.sinc(delta / _TWO_PI)
    out = _sign(m, k) * val
    return float(out) if np.isscalar(x) else out


def dirichlet_derivative(m, x):
    """d/dx of the kernel, with the double zeros filled by a series.

    The quotient-rule form loses all significance for |delta| << 1/M
    (two O(M/delta) terms cancel to O(M^3 delta)), so inside
    |delta| < 1e-3/M the quartic Taylor expansion around delta = 0 is
    used instead; at the switch point both branches are good to ~1e-9
    of the derivative-sum scale.
    """
    delta, k = _reduce(x)
    half = 0.5 * delta
    small = np.abs(delta) < 1e-3 / m

    sh = np.where(small, 1.0, np.sin(half))  # placeholder value under the mask
    num = 0.5 * m * np.cos(m * half) * sh - 0.5 * np.sin(m * half) * np.cos(half)
    general = num / sh**2

    c4 = 7.0 / 360.0 - m**2 / 36.0 + m**4 / 120.0
    series = m * (-(m**2 - 1.0) * delta / 12.0 + c4 * delta**3 / 4.0)

    out = _sign(m, k) * np.where(small, series, general)
    return float(out) if np.isscalar(x) else out


def _grid(m, theta):
    y = np.arange(m, dtype=float)
    return np.asarray(theta, dtype=float) - _TWO_PI * y / m


def squared_kernel_sum(m, theta):
    """sum_y D_M(theta - 2 pi y / M)^2 over the M-point grid (equals M^2)."""
    return float(np.sum(dirichlet(m, _grid(m, theta)) ** 2))


def squared_derivative_sum(m, theta):
    """sum_y D_M'(theta - 2 pi y / M)^2 over the M-point grid."""
    return float(np.sum(dirichlet_derivative(m, _grid(m, theta)) ** 2))
