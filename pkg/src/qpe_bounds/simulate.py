"""Sampling measurement outcomes from the closed-form distributions.

No state vectors are involved: transform-readout outcomes follow the
kernel mixture over 2^n bins, Hadamard-test outcomes are Bernoulli pairs.
CSV writers/readers round-trip multi-trial datasets for offline runs.
"""

import csv
from dataclasses import dataclass

import numpy as np

from .dirichlet import dirichlet
from .errors import NormalizationFailure

_TWO_PI = 2.0 * np.pi
_MAX_N = 26
_CHUNK = 1 << 20


@dataclass
class QftSample:
    n: int
    outcomes: np.ndarray  # integer bin indices, one per shot
    seed: int | None = None

    @property
    def N_s(self):
        return self.outcomes.size


@dataclass
class HtSample:
    times: np.ndarray
    n_re0: np.ndarray
    n_re1: np.ndarray
    n_im0: np.ndarray
    n_im1: np.ndarray
    N_s: float
    seed: int | None = None

    @property
    def z_hat(self):
        """Per-time estimate of C(t) + i S(t) from the four counters."""
        re = (self.n_re0 - self.n_re1) / self.N_s
        im = (self.n_im0 - self.n_im1) / self.N_s
        return re + 1j * im


def _chunk_probs(spectrum, n, lo, hi):
    M = 2**n
    y = np.arange(lo, hi, dtype=float)
    phi = spectrum.phases[:, None] - _TWO_PI * y[None, :] / M
    D = dirichlet(M, phi)
    return (spectrum.overlaps[:, None] * D**2).sum(axis=0) / M**2


def qft_probabilities(spectrum, n):
    """Outcome distribution over the 2^n bins, checked to sum to one."""
    if not 1 <= n <= _MAX_N:
        raise ValueError(f"n must be between 1 and {_MAX_N}")
    M = 2**n
    p = np.concatenate(
        [_chunk_probs(spectrum, n, lo, min(lo + _CHUNK, M)) for lo in range(0, M, _CHUNK)]
    )
    if abs(p.sum() - 1.0) > 1e-9:
        raise NormalizationFailure(f"probabilities sum to {p.sum()!r}")
    return p


def sample_qft(spectrum, n, N_s, seed=0):
    """Draw N_s transform-readout outcomes by inverse CDF.

    Bins are tabulated in 2^20-bin chunks so memory stays flat for the
    largest allowed registers (n <= 26): a first pass accumulates chunk
    totals, a second pass resolves draws inside their chunk.
    """
    if not 1 <= n <= _MAX_N:
        raise ValueError(f"n must be between 1 and {_MAX_N}")
    if N_s < 1:
        raise ValueError("N_s must be positive")
    M = 2**n
    rng = np.random.default_rng(seed)
    u = rng.random(int(N_s))

    if M <= _CHUNK:
        p = qft_probabilities(spectrum, n)
        cdf = np.cumsum(p)
        cdf[-1] = 1.0
        outcomes = np.searchsorted(cdf, u, side="right")
        return QftSample(n, np.minimum(outcomes, M - 1).astype(np.int64), seed)

    starts = list(range(0, M, _CHUNK))
    totals = np.array([_chunk_probs(spectrum, n, lo, min(lo + _CHUNK, M)).sum() for lo in starts])
    if abs(totals.sum() - 1.0) > 1e-9:
        raise NormalizationFailure(f"probabilities sum to {totals.sum()!r}")
    top = np.cumsum(totals)
    top[-1] = 1.0
    which = np.minimum(np.searchsorted(top, u, side="right"), len(starts) - 1)
    outcomes = np.empty(u.size, dtype=np.int64)
    for ci in np.unique(which):
        lo = starts[ci]
        base = top[ci - 1] if ci > 0 else 0.0
        p = _chunk_probs(spectrum, n, lo, min(lo + _CHUNK, M))
        cdf = np.cumsum(p)
        sel = which == ci
        idx = np.searchsorted(cdf, u[sel] - base, side="right")
        outcomes[sel] = lo + np.minimum(idx, p.size - 1)
    return QftSample(n, outcomes, seed)


def sample_ht(spectrum, schedule, N_s, seed=0):
    """Binomial counts of the Hadamard-test pair at every scheduled time."""
    if N_s < 1:
        raise ValueError("N_s must be positive")
    t = schedule.times
    arg = np.outer(t, spectrum.phases)
    C = np.cos(arg) @ spectrum.overlaps
    S = np.sin(arg) @ spectrum.overlaps
    rng = np.random.default_rng(seed)
    n_re0 = rng.binomial(int(N_s), (1.0 + C) / 2.0).astype(float)
    n_im0 = rng.binomial(int(N_s), (1.0 + S) / 2.0).astype(float)
    return HtSample(t.copy(), n_re0, N_s - n_re0, n_im0, N_s - n_im0, float(N_s), seed)


def sample_ht_exact(spectrum, schedule, N_s=1):
    """Noise-free variant: counters set to their exact expectations."""
    t = schedule.times
    arg = np.outer(t, spectrum.phases)
    C = np.cos(arg) @ spectrum.overlaps
    S = np.sin(arg) @ spectrum.overlaps
    n_re0 = N_s * (1.0 + C) / 2.0
    n_im0 = N_s * (1.0 + S) / 2.0
    return HtSample(t.copy(), n_re0, N_s - n_re0, n_im0, N_s - n_im0, float(N_s), None)


def write_qft_csv(samples, path, header_comment=None):
    """Rows (trial, y); one trial per QftSample."""
    with open(path, "w", newline="") as fh:
        if header_comment:
            fh.write(header_comment.rstrip("\n") + "\n")
        writer = csv.writer(fh)
        writer.writerow(["trial", "y"])
        for trial, sample in enumerate(samples):
            for y in sample.outcomes:
                writer.writerow([trial, int(y)])


def read_qft_csv(path, n):
    """Inverse of write_qft_csv; n is not stored in the file."""
    by_trial = {}
    with open(path) as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
    for trial, y in rows[1:]:
        by_trial.setdefault(int(trial), []).append(int(y))
    return [
        QftSample(n, np.array(by_trial[k], dtype=np.int64))
        for k in sorted(by_trial)
    ]


def write_ht_csv(samples, path, header_comment=None):
    """Rows (trial, t, n_re0, n_re1, n_im0, n_im1)."""
    with open(path, "w", newline="") as fh:
        if header_comment:
            fh.write(header_comment.rstrip("\n") + "\n")
        writer = csv.writer(fh)
        writer.writerow(["trial", "t", "n_re0", "n_re1", "n_im0", "n_im1"])
        for trial, s in enumerate(samples):
            for k in range(s.times.size):
                writer.writerow(
                    [trial, repr(float(s.times[k])), repr(float(s.n_re0[k])),
                     repr(float(s.n_re1[k])), repr(float(s.n_im0[k])),
                     repr(float(s.n_im1[k]))]
                )


def read_ht_csv(path):
    by_trial = {}
    with open(path) as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
    for trial, t, a, b, c, d in rows[1:]:
        by_trial.setdefault(int(trial), []).append(
            (float(t), float(a), float(b), float(c), float(d))
        )
    out = []
    for k in sorted(by_trial):
        rec = np.array(by_trial[k])
        N_s = float(rec[0, 1] + rec[0, 2])
        out.append(HtSample(rec[:, 0], rec[:, 1], rec[:, 2], rec[:, 3], rec[:, 4], N_s))
    return out
