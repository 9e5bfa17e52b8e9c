"""Estimator behavior on exact and sampled data."""

import numpy as np
import pytest

from qpe_bounds import (
    Spectrum,
    estimate_csqpe,
    estimate_curvefit_qft,
    estimate_qcels,
    estimate_qcels_ml,
    estimate_qmegs,
    fit_qft_histogram,
    qft_probabilities,
    realize,
    sample_ht,
    sample_ht_exact,
    sample_qft,
)
from qpe_bounds.bench import qcels_levels
from qpe_bounds.errors import EmptyData, NoPeaksDetected, ScheduleMismatch
from qpe_bounds.estimators import _filtered
from qpe_bounds.simulate import HtSample


THETA0 = -0.85


def _three_mode():
    return Spectrum([THETA0, 0.3, 1.7], [0.7, 0.2, 0.1])


def test_qmegs_exact_data_recovers_dominant_phase():
    s = _three_mode()
    T = 200
    sched = realize("qmegs", T, 2000, seed=7)
    est = estimate_qmegs(sample_ht_exact(s, sched), T)
    # background modes leak ~1/(T gap) into the filtered peak position
    assert abs(est.theta_hat - THETA0) < 1e-4


def test_qmegs_noisy_data_stays_in_main_lobe():
    s = _three_mode()
    T = 200
    sched = realize("qmegs", T, 500, seed=3)
    est = estimate_qmegs(sample_ht(s, sched, 50, seed=9), T)
    assert abs(est.theta_hat - THETA0) < 5.0 / T


def test_qmegs_grid_and_refine_controls():
    s = _three_mode()
    sched = realize("qmegs", 50, 300, seed=1)
    data = sample_ht_exact(s, sched)
    coarse = estimate_qmegs(data, 50, refine=False)
    fine = estimate_qmegs(data, 50)
    assert abs(fine.theta_hat - THETA0) < abs(coarse.theta_hat - THETA0) + 1e-12
    assert coarse.diagnostics["refined"] is False


def test_qmegs_empty_data():
    empty = HtSample(np.array([]), np.array([]), np.array([]), np.array([]), np.array([]), 1.0)
    with pytest.raises(EmptyData):
        estimate_qmegs(empty, 10)


def test_qcels_exact_single_mode_is_machine_precision():
    s = Spectrum([THETA0], [1.0])
    sched = realize("qcels", 50, 200, seed=0)
    est = estimate_qcels(sample_ht_exact(s, sched))
    assert abs(est.theta_hat - THETA0) < 5e-9
    assert abs(est.amplitudes[0] - 1.0) < 1e-7
    assert est.diagnostics["residual"] < 1e-12


def test_qcels_dominant_mode_with_background():
    s = _three_mode()
    sched = realize("qcels", 30, 120, seed=0)
    est = estimate_qcels(sample_ht_exact(s, sched))
    # single-exponential model is biased by the two background modes
    assert abs(est.theta_hat - THETA0) < 0.02
    assert abs(est.amplitudes[0]) > 0.5


def test_qcels_requires_arithmetic_grid():
    s = Spectrum([0.5], [1.0])
    sched = realize("qmegs", 30, 60, seed=2)  # random times
    with pytest.raises(ScheduleMismatch):
        estimate_qcels(sample_ht_exact(s, sched))


def test_qcels_ml_exact_single_mode():
    s = Spectrum([THETA0], [1.0])
    levels = [
        sample_ht_exact(s, realize("qcels", h, 64, seed=0))
        for h in qcels_levels(256, 64)
    ]
    est = estimate_qcels_ml(levels)
    assert abs(est.theta_hat - THETA0) < 1e-9


def test_qcels_ml_validates_levels():
    s = Spectrum([0.5], [1.0])
    with pytest.raises(EmptyData):
        estimate_qcels_ml([])
    lvl = sample_ht_exact(s, realize("qcels", 16, 8, seed=0))
    with pytest.raises(ScheduleMismatch):
        estimate_qcels_ml([lvl, lvl])  # horizons must strictly increase


def test_csqpe_exact_recovers_all_modes():
    s = _three_mode()
    sched = realize("csqpe", 40, 150, seed=4)
    est = estimate_csqpe(sample_ht_exact(s, sched), sparsity=3)
    assert abs(est.theta_hat - THETA0) < 1e-7
    found = np.sort(est.diagnostics["thetas"])
    assert np.allclose(found, s.phases, atol=1e-7)
    # amplitudes sorted by magnitude track the overlaps
    assert np.allclose(np.abs(est.amplitudes), [0.7, 0.2, 0.1], atol=1e-6)
    assert est.diagnostics["residual"] < 1e-10


def test_csqpe_validation():
    s = Spectrum([0.5], [1.0])
    data = sample_ht_exact(s, realize("csqpe", 10, 5, seed=0))
    with pytest.raises(ValueError):
        estimate_csqpe(data, sparsity=0)
    empty = HtSample(np.array([]), np.array([]), np.array([]), np.array([]), np.array([]), 1.0)
    with pytest.raises(EmptyData):
        estimate_csqpe(empty, sparsity=1)


def test_histogram_fit_exact_probabilities():
    s = _three_mode()
    n = 8
    est = fit_qft_histogram(qft_probabilities(s, n), n)
    assert abs(est.theta_hat - THETA0) < 1e-6
    assert est.diagnostics["peaks"] >= 2


def test_histogram_fit_validation():
    with pytest.raises(ValueError):
        fit_qft_histogram(np.ones(10) / 10.0, 4)  # length is not 2^n
    with pytest.raises(NoPeaksDetected):
        fit_qft_histogram(np.zeros(16), 4)


def test_curvefit_qft_on_sampled_outcomes():
    s = _three_mode()
    n = 8
    sample = sample_qft(s, n, 20000, seed=6)
    est = estimate_curvefit_qft(sample)
    assert abs(est.theta_hat - THETA0) < 2.0 * np.pi / 2**n


def test_mirrored_spectrum_negates_estimates():
    s = _three_mode()
    m = Spectrum(-s.phases, s.overlaps)
    T = 100
    sched = realize("qmegs", T, 800, seed=5)
    a = estimate_qmegs(sample_ht_exact(s, sched), T).theta_hat
    b = estimate_qmegs(sample_ht_exact(m, sched), T).theta_hat
    assert a == pytest.approx(-b, abs=1e-6)


def test_filtered_fast_path_matches_direct():
    rng = np.random.default_rng(8)
    times = rng.uniform(0.0, 40.0, 300)
    z = np.exp(1j * 0.7 * times) + 0.1 * (rng.normal(size=300) + 1j * rng.normal(size=300))
    xs = np.linspace(-np.pi, np.pi, 2048, endpoint=False)  # uniform: fast path
    got = _filtered(z, times, xs)
    want = np.array([np.mean(z * np.exp(-1j * x * times)) for x in xs])
    assert np.max(np.abs(got - want)) < 1e-9
    # non-uniform grid takes the generic path and must agree with itself
    shuffled = xs.copy()
    shuffled[7] += 1e-5
    got2 = _filtered(z, times, shuffled)
    want2 = np.array([np.mean(z * np.exp(-1j * x * times)) for x in shuffled])
    assert np.max(np.abs(got2 - want2)) < 1e-12
