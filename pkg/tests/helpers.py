"""Shared oracles for the test suite.

The Fisher oracles build the information matrix from nothing but the
outcome probabilities and central finite differences, so they share no
derivative code with the library under test.
"""

import numpy as np

from qpe_bounds import Spectrum
from qpe_bounds.dirichlet import dirichlet


def ht_outcome_probs(phases, overlaps, t):
    """The four Bernoulli outcome probabilities of the test pair at time t."""
    C = float(np.sum(overlaps * np.cos(t * phases)))
    S = float(np.sum(overlaps * np.sin(t * phases)))
    return np.array([(1 + C) / 2, (1 - C) / 2, (1 + S) / 2, (1 - S) / 2])


def qft_outcome_probs(phases, overlaps, n):
    M = 2**n
    y = np.arange(M)
    D = dirichlet(M, phases[:, None] - 2.0 * np.pi * y[None, :] / M)
    return (overlaps[:, None] * D**2).sum(axis=0) / M**2


def fd_fisher(prob_fn, phases, overlaps, h=1e-6):
    """Fisher matrix over free (theta, c) by central differences of prob_fn."""
    phases = np.asarray(phases, dtype=float)
    overlaps = np.asarray(overlaps, dtype=float)
    L = phases.size
    grads = []
    for a in range(2 * L):
        dth = np.zeros(L)
        dc = np.zeros(L)
        (dth if a < L else dc)[a % L] = h
        up = prob_fn(phases + dth, overlaps + dc)
        dn = prob_fn(phases - dth, overlaps - dc)
        grads.append((up - dn) / (2.0 * h))
    G = np.array(grads)
    p = prob_fn(phases, overlaps)
    return G @ (G / p).T


def random_spectrum(rng, L=None, min_gap=0.15, lo=-2.8, hi=2.8):
    """A well-separated random spectrum away from the zero-phase point."""
    if L is None:
        L = int(rng.integers(1, 4))
    while True:
        ph = np.sort(rng.uniform(lo, hi, L))
        if L > 1 and np.min(np.diff(ph)) < min_gap:
            continue
        if np.max(np.abs(ph)) < 0.1:
            continue
        c = rng.uniform(0.2, 1.0, L)
        return Spectrum(ph, c / c.sum())
