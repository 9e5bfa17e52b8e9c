"""Campaign driver: bound sweeps, diagnostic tables, MSE benchmarks, CSV.

A campaign is a grid (alpha) x (protocol, T).  Every row carries enough
fields to recompute its efficiency ratio R = T * t_total * mse / bound;
a failure at one grid point is recorded in that row's error column and
never suppresses the others.
"""

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields

import numpy as np

from ._version import __version__
from .bounds import diag_ratio as _diag_ratio
from .estimators import (
    estimate_csqpe,
    estimate_curvefit_qft,
    estimate_qcels_ml,
    estimate_qmegs,
)
from .fim import f_i_max, total_fim
from .schedules import ProtocolKind, gamma, realize, t_total
from .simulate import sample_ht, sample_qft, write_ht_csv, write_qft_csv
from .spectrum import make_spectrum

_TWO_PI = 2.0 * np.pi

_ROW_ERRORS = (ArithmeticError, ValueError, RuntimeError, KeyError)


@dataclass
class ProtocolSpec:
    kind: ProtocolKind
    T: list
    N_t: int = 1
    N_s: int = 1
    sparsity: int = 4

    def __post_init__(self):
        self.kind = ProtocolKind(self.kind)

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        kind = ProtocolKind(d.pop("kind"))
        T = d.pop("T")
        if not isinstance(T, (list, tuple)):
            T = [T]
        if not T or any(v <= 0 for v in T):
            raise ValueError("every protocol needs a positive T list")
        spec = cls(kind, [int(v) for v in T], **{k: int(v) for k, v in d.items()})
        if spec.N_t < 1 or spec.N_s < 1 or spec.sparsity < 1:
            raise ValueError("N_t, N_s and sparsity must be positive")
        if kind == ProtocolKind.QFT_QPE:
            for v in spec.T:
                if ((v + 1) & v) != 0:
                    raise ValueError("transform-readout entries need T = 2^n - 1")
            if spec.N_t != 1:
                raise ValueError("transform readout uses N_t = 1")
        return spec


@dataclass
class CampaignConfig:
    spectrum: str
    L: int
    alphas: list
    protocols: list
    trials: int = 10
    seed: int = 0
    target: int = 0

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        protocols = [ProtocolSpec.from_dict(p) for p in d.pop("protocols", [])]
        cfg = cls(protocols=protocols, **d)
        if cfg.spectrum not in ("uniform", "head_dense", "tail_dense"):
            raise ValueError(f"unknown spectrum family {cfg.spectrum!r}")
        if cfg.L < 1:
            raise ValueError("L must be at least 1")
        if not cfg.alphas or any(not 0.0 < a < 1.0 for a in cfg.alphas):
            raise ValueError("alphas must be a nonempty list inside (0, 1)")
        if not cfg.protocols:
            raise ValueError("at least one protocol is required")
        if cfg.trials < 2:
            raise ValueError("trials must be at least 2")
        if not 0 <= cfg.target < cfg.L:
            raise ValueError("target mode label out of range")
        return cfg

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


@dataclass
class BenchResult:
    spectrum: str
    L: int
    alpha: float
    protocol: str
    T: float
    N_t: int
    N_s: int
    trials: int
    c0: float = np.nan
    g0: float = np.nan
    gamma: float = np.nan
    bound: float = np.nan
    t_total: float = np.nan
    f0_max: float = np.nan
    diag_ratio: float = np.nan
    mse: float = np.nan
    mse_se: float = np.nan
    ratio_r: float = np.nan
    error: str = ""


def _wrap(x):
    return (x + np.pi) % _TWO_PI - np.pi


def qcels_levels(T, N_t):
    """Doubling horizon ladder ending at T, alias-free at the first level."""
    m = 1
    while T / 2 ** (m - 1) > N_t:
        m += 1
    return [T / 2 ** (m - j) for j in range(1, m + 1)]


def _accounting(spectrum, pspec, T, target):
    """g0, gamma, bound, t_total, N and the accumulated Fisher blocks."""
    kind = pspec.kind
    if kind == ProtocolKind.QCELS:
        horizons = qcels_levels(T, pspec.N_t)
        fim = total_fim(spectrum, kind, horizons[0], pspec.N_t, pspec.N_s)
        for h in horizons[1:]:
            fim = fim + total_fim(spectrum, kind, h, pspec.N_t, pspec.N_s)
        N = len(horizons) * pspec.N_t * pspec.N_s
        ttl = sum(t_total(kind, h, pspec.N_t, pspec.N_s) for h in horizons)
        gam = ttl / (N * T)
    elif kind == ProtocolKind.QFT_QPE:
        fim = total_fim(spectrum, kind, T, 1, pspec.N_s)
        N = pspec.N_s
        ttl = t_total(kind, T, 1, pspec.N_s)
        gam = 1.0
    else:
        fim = total_fim(spectrum, kind, T, pspec.N_t, pspec.N_s)
        N = pspec.N_t * pspec.N_s
        ttl = t_total(kind, T, pspec.N_t, pspec.N_s)
        gam = gamma(kind, T, pspec.N_t)
    pos = fim.index_of(target)
    g0 = float(fim.theta_theta[pos, pos] / (N * float(T) ** 2))
    return g0, gam, gam / g0, ttl, fim


def _one_trial(spectrum, pspec, T, base_seed, point_idx, trial):
    ss = np.random.SeedSequence((base_seed, point_idx, trial))
    s_sched, s_data = ss.spawn(2)
    kind = pspec.kind
    if kind == ProtocolKind.QMEGS:
        sched = realize(kind, T, pspec.N_t, seed=s_sched)
        data = sample_ht(spectrum, sched, pspec.N_s, seed=s_data)
        return estimate_qmegs(data, T).theta_hat
    if kind == ProtocolKind.CSQPE:
        sched = realize(kind, T, pspec.N_t, seed=s_sched)
        data = sample_ht(spectrum, sched, pspec.N_s, seed=s_data)
        return estimate_csqpe(data, pspec.sparsity).theta_hat
    if kind == ProtocolKind.QCELS:
        seeds = s_data.spawn(len(qcels_levels(T, pspec.N_t)))
        datasets = [
            sample_ht(spectrum, realize(kind, h, pspec.N_t), pspec.N_s, seed=sd)
            for h, sd in zip(qcels_levels(T, pspec.N_t), seeds)
        ]
        return estimate_qcels_ml(datasets).theta_hat
    if kind == ProtocolKind.QFT_QPE:
        n = int(np.log2(T + 1))
        data = sample_qft(spectrum, n, pspec.N_s, seed=s_data)
        return estimate_curvefit_qft(data).theta_hat
    raise ValueError(f"{kind.value} has no estimator")


def _bench_point(config, alpha, pspec, T, point_idx, pool=None):
    row = BenchResult(
        config.spectrum, config.L, alpha, pspec.kind.value,
        float(T), pspec.N_t, pspec.N_s, config.trials,
    )
    try:
        s = make_spectrum(config.spectrum, config.L, alpha)
        row.c0 = s.overlap(config.target)
        row.f0_max = f_i_max(s, config.target)
        g0, gam, bound, ttl, fim = _accounting(s, pspec, T, config.target)
        row.g0, row.gamma, row.bound, row.t_total = g0, gam, bound, ttl
        row.diag_ratio = _diag_ratio(fim, config.target)
        th0 = s.phase(config.target)

        def run(trial):
            return _one_trial(s, pspec, T, config.seed, point_idx, trial)

        if pool is not None:
            hats = list(pool.map(run, range(config.trials)))
        else:
            hats = [run(k) for k in range(config.trials)]
        errs = _wrap(np.array(hats) - th0)
        sq = errs**2
        row.mse = float(sq.mean())
        row.mse_se = float(sq.std(ddof=1) / np.sqrt(config.trials))
        row.ratio_r = float(T * ttl * row.mse / bound)
    except _ROW_ERRORS as exc:
        row.error = f"{type(exc).__name__}: {exc}"
    return row


def run_campaign(config, threads=1):
    """Sample, estimate and score every grid point of the campaign."""
    for pspec in config.protocols:
        if pspec.kind == ProtocolKind.RPE:
            raise ValueError("RPE has no estimator; it cannot be benchmarked")
    points = [
        (alpha, pspec, T)
        for alpha in config.alphas
        for pspec in config.protocols
        for T in pspec.T
    ]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return [
                _bench_point(config, a, p, T, i, pool)
                for i, (a, p, T) in enumerate(points)
            ]
    return [_bench_point(config, a, p, T, i) for i, (a, p, T) in enumerate(points)]


@dataclass
class BoundRow:
    spectrum: str
    L: int
    alpha: float
    c0: float
    protocol: str
    T: float
    N_t: int
    g0: float = np.nan
    gamma: float = np.nan
    bound: float = np.nan
    error: str = ""


def sweep_bounds(config):
    """Tabulate gamma/g0 over the alpha sweep; locate the QFT/HT crossover.

    Uses each protocol's largest T.  Returns (rows, crossover_c0); the
    crossover is linearly interpolated in log-bound vs c0 and is None
    when either family is absent or no sign change occurs.
    """
    for pspec in config.protocols:
        if pspec.kind == ProtocolKind.RPE:
            raise ValueError("RPE has no linear cost form; drop it from bound sweeps")
    rows = []
    per_alpha = {}
    for alpha in config.alphas:
        s = make_spectrum(config.spectrum, config.L, alpha)
        c0 = s.overlap(config.target)
        best_ht, qft_bound = np.inf, None
        for pspec in config.protocols:
            T = max(pspec.T)
            row = BoundRow(
                config.spectrum, config.L, alpha, c0,
                pspec.kind.value, float(T), pspec.N_t,
            )
            try:
                g0, gam, bound, _, _ = _accounting(s, pspec, T, config.target)
                row.g0, row.gamma, row.bound = g0, gam, bound
                if pspec.kind == ProtocolKind.QFT_QPE:
                    qft_bound = bound
                else:
                    best_ht = min(best_ht, bound)
            except _ROW_ERRORS as exc:
                row.error = f"{type(exc).__name__}: {exc}"
            rows.append(row)
        if qft_bound is not None and np.isfinite(best_ht):
            per_alpha[c0] = (qft_bound, best_ht)
    crossover = None
    if len(per_alpha) >= 2:
        c0s = np.array(sorted(per_alpha))
        diff = np.array([np.log(per_alpha[c][0] / per_alpha[c][1]) for c in c0s])
        for a, b, da, db in zip(c0s, c0s[1:], diff, diff[1:]):
            if da == 0.0:
                crossover = float(a)
            elif da * db < 0.0:
                crossover = float(a + (b - a) * da / (da - db))
        if diff[-1] == 0.0:
            crossover = float(c0s[-1])
    return rows, crossover


@dataclass
class DiagRow:
    spectrum: str
    L: int
    alpha: float
    protocol: str
    T: float
    N_t: int
    diag_ratio: float = np.nan
    error: str = ""


def check_diag(config):
    """diag_ratio of the campaign Fisher matrix at every grid point."""
    rows = []
    for alpha in config.alphas:
        s = make_spectrum(config.spectrum, config.L, alpha)
        for pspec in config.protocols:
            for T in pspec.T:
                row = DiagRow(
                    config.spectrum, config.L, alpha,
                    pspec.kind.value, float(T), pspec.N_t,
                )
                try:
                    _, _, _, _, fim = _accounting(s, pspec, T, config.target)
                    row.diag_ratio = _diag_ratio(fim, config.target)
                except _ROW_ERRORS as exc:
                    row.error = f"{type(exc).__name__}: {exc}"
                rows.append(row)
    return rows


@dataclass
class GiRow:
    spectrum: str
    L: int
    alpha: float
    c0: float
    protocol: str
    T: float
    N_t: int
    g0: float = np.nan
    error: str = ""


def gi_sweep(config):
    """Normalized information g0 across the alpha and T grids."""
    rows = []
    for alpha in config.alphas:
        s = make_spectrum(config.spectrum, config.L, alpha)
        c0 = s.overlap(config.target)
        for pspec in config.protocols:
            for T in pspec.T:
                row = GiRow(
                    config.spectrum, config.L, alpha, c0,
                    pspec.kind.value, float(T), pspec.N_t,
                )
                try:
                    if pspec.kind == ProtocolKind.QCELS:
                        g0, _, _, _, _ = _accounting(s, pspec, T, config.target)
                    else:
                        fim = total_fim(s, pspec.kind, T, pspec.N_t, pspec.N_s)
                        pos = fim.index_of(config.target)
                        g0 = float(
                            fim.theta_theta[pos, pos]
                            / (pspec.N_t * pspec.N_s * float(T) ** 2)
                        )
                    row.g0 = g0
                except _ROW_ERRORS as exc:
                    row.error = f"{type(exc).__name__}: {exc}"
                rows.append(row)
    return rows


def _format(value):
    # plain-float repr round-trips exactly and never prints a numpy wrapper
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, np.integer):
        return str(int(value))
    return str(value)


def write_rows_csv(rows, path, seed):
    """Dataclass rows to CSV under the versioned header comment."""
    if not rows:
        raise ValueError("nothing to write")
    names = [f.name for f in fields(rows[0])]
    lines = [f"# qpe-bounds v{__version__} seed={seed}"]
    lines.append(",".join(names))
    for row in rows:
        lines.append(",".join(_format(getattr(row, n)) for n in names))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def emit_samples(config, out_path, threads=1):
    """Write raw sample CSVs, one file per grid point; returns the paths."""
    import os

    stem, ext = os.path.splitext(out_path)
    ext = ext or ".csv"
    header = f"# qpe-bounds v{__version__} seed={config.seed}"
    written = []
    points = [
        (alpha, pspec, T)
        for alpha in config.alphas
        for pspec in config.protocols
        for T in pspec.T
    ]
    for idx, (alpha, pspec, T) in enumerate(points):
        s = make_spectrum(config.spectrum, config.L, alpha)
        path = (
            out_path
            if len(points) == 1
            else f"{stem}_{pspec.kind.value}_a{alpha}_T{T}{ext}"
        )
        if pspec.kind == ProtocolKind.QFT_QPE:
            n = int(np.log2(T + 1))
            samples = [
                sample_qft(
                    s, n, pspec.N_s,
                    seed=np.random.SeedSequence((config.seed, idx, k)),
                )
                for k in range(config.trials)
            ]
            write_qft_csv(samples, path, header)
        else:
            samples = []
            for k in range(config.trials):
                ss = np.random.SeedSequence((config.seed, idx, k))
                s_sched, s_data = ss.spawn(2)
                sched = realize(pspec.kind, T, pspec.N_t, seed=s_sched)
                samples.append(sample_ht(s, sched, pspec.N_s, seed=s_data))
            write_ht_csv(samples, path, header)
        written.append(path)
    return written
