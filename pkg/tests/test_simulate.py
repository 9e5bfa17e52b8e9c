"""Outcome sampling and dataset round-trips."""

import numpy as np
import pytest

from helpers import qft_outcome_probs, random_spectrum
from qpe_bounds import (
    Spectrum,
    ht_expectations,
    qft_probabilities,
    read_ht_csv,
    read_qft_csv,
    realize,
    sample_ht,
    sample_ht_exact,
    sample_qft,
    write_ht_csv,
    write_qft_csv,
)


def test_qft_probabilities_normalized_and_match_oracle():
    rng = np.random.default_rng(41)
    for n in (1, 3, 6):
        s = random_spectrum(rng)
        p = qft_probabilities(s, n)
        assert p.shape == (2**n,)
        assert p.sum() == pytest.approx(1.0, abs=1e-12)
        want = qft_outcome_probs(s.phases, s.overlaps, n)
        assert np.allclose(p, want, rtol=1e-12, atol=1e-15)


def test_qft_probabilities_eigenstate_on_grid_is_deterministic():
    # a phase exactly on bin y0 concentrates all mass there
    n, y0 = 5, 7
    s = Spectrum([2.0 * np.pi * y0 / 2**n], [1.0])
    p = qft_probabilities(s, n)
    assert p[y0] == pytest.approx(1.0, abs=1e-12)
    assert np.all(np.delete(p, y0) < 1e-12)


def test_qft_probabilities_register_width_validation():
    s = Spectrum([0.3], [1.0])
    with pytest.raises(ValueError):
        qft_probabilities(s, 0)
    with pytest.raises(ValueError):
        qft_probabilities(s, 27)


def test_sample_qft_range_determinism_and_seed_sensitivity():
    s = Spectrum([0.3, -0.8], [0.7, 0.3])
    a = sample_qft(s, 4, 500, seed=9)
    b = sample_qft(s, 4, 500, seed=9)
    c = sample_qft(s, 4, 500, seed=10)
    assert np.array_equal(a.outcomes, b.outcomes)
    assert not np.array_equal(a.outcomes, c.outcomes)
    assert a.outcomes.min() >= 0 and a.outcomes.max() < 16
    assert a.N_s == 500
    with pytest.raises(ValueError):
        sample_qft(s, 4, 0)


def test_sample_qft_frequencies_track_distribution():
    s = Spectrum([0.3, -0.8], [0.7, 0.3])
    n, N_s = 4, 40000
    p = qft_probabilities(s, n)
    counts = np.bincount(sample_qft(s, n, N_s, seed=5).outcomes, minlength=2**n)
    sd = np.sqrt(p * (1.0 - p) * N_s)
    assert np.all(np.abs(counts - N_s * p) <= 5.0 * sd + 3.0)


def test_sample_qft_chunked_path_matches_eigenstate():
    # 2^21 bins exceeds the tabulation chunk, exercising the two-pass route
    n, y0 = 21, 1234
    s = Spectrum([2.0 * np.pi * y0 / 2**n], [1.0])
    out = sample_qft(s, n, 64, seed=3).outcomes
    assert np.all(out == y0)


def test_exact_ht_sample_reproduces_expectations():
    s = Spectrum([0.6, -0.2], [0.55, 0.45])
    sched = realize("qcels", 10, 8, seed=0)
    z = sample_ht_exact(s, sched).z_hat
    for k, t in enumerate(sched.times):
        C, S = ht_expectations(s, t)
        assert z[k].real == pytest.approx(C, abs=1e-14)
        assert z[k].imag == pytest.approx(S, abs=1e-14)


def test_sample_ht_counts_and_determinism():
    s = Spectrum([0.6, -0.2], [0.55, 0.45])
    sched = realize("csqpe", 12, 6, seed=1)
    a = sample_ht(s, sched, 200, seed=4)
    b = sample_ht(s, sched, 200, seed=4)
    c = sample_ht(s, sched, 200, seed=5)
    assert np.array_equal(a.n_re0, b.n_re0) and np.array_equal(a.n_im0, b.n_im0)
    assert not (np.array_equal(a.n_re0, c.n_re0) and np.array_equal(a.n_im0, c.n_im0))
    assert np.all(a.n_re0 + a.n_re1 == 200)
    assert np.all(a.n_im0 + a.n_im1 == 200)
    with pytest.raises(ValueError):
        sample_ht(s, sched, 0)


def test_sample_ht_statistics_track_expectations():
    s = Spectrum([0.6, -0.2], [0.55, 0.45])
    sched = realize("qcels", 10, 8, seed=0)
    N_s = 20000
    z = sample_ht(s, sched, N_s, seed=11).z_hat
    for k, t in enumerate(sched.times):
        C, S = ht_expectations(s, t)
        assert abs(z[k].real - C) <= 5.0 * np.sqrt((1.0 - C**2) / N_s) + 1e-9
        assert abs(z[k].imag - S) <= 5.0 * np.sqrt((1.0 - S**2) / N_s) + 1e-9


def test_qft_csv_round_trip(tmp_path):
    s = Spectrum([0.3, -0.8], [0.7, 0.3])
    samples = [sample_qft(s, 4, 50, seed=k) for k in range(3)]
    path = tmp_path / "qft.csv"
    write_qft_csv(samples, path, header_comment="# run meta seed=0")
    back = read_qft_csv(path, 4)
    assert len(back) == 3
    for orig, rec in zip(samples, back):
        assert rec.n == 4
        assert np.array_equal(orig.outcomes, rec.outcomes)


def test_ht_csv_round_trip_is_exact(tmp_path):
    s = Spectrum([0.6, -0.2], [0.55, 0.45])
    sched = realize("qmegs", 30, 12, seed=2)
    samples = [sample_ht(s, sched, 17, seed=k) for k in range(2)]
    path = tmp_path / "ht.csv"
    write_ht_csv(samples, path, header_comment="# run meta seed=2")
    back = read_ht_csv(path)
    assert len(back) == 2
    for orig, rec in zip(samples, back):
        assert np.array_equal(orig.times, rec.times)  # repr round-trip
        assert np.array_equal(orig.n_re0, rec.n_re0)
        assert np.array_equal(orig.n_im1, rec.n_im1)
        assert rec.N_s == 17.0


def test_csv_readers_skip_comment_lines(tmp_path):
    path = tmp_path / "with_comments.csv"
    path.write_text("# one\n# two\ntrial,y\n0,3\n0,5\n1,2\n")
    back = read_qft_csv(path, 3)
    assert np.array_equal(back[0].outcomes, [3, 5])
    assert np.array_equal(back[1].outcomes, [2])
