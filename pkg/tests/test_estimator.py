import math

import numpy as np
import pytest

from dsff_lab.ensembles import EnsembleSpec
from dsff_lab.estimator import (
    build_tau_grid,
    dsff_grid,
    dsff_point,
    estimate_from_linear_stats,
    linear_stat,
)
from dsff_lab.spectra import SpectrumSet
from dsff_lab.theory import ComplexTime


def _disk_spectra(m, n, seed):
    rng = np.random.default_rng(seed)
    r = np.sqrt(rng.uniform(0.0, 1.0, (m, n)))
    ang = rng.uniform(0.0, 2.0 * math.pi, (m, n))
    return r * np.exp(1j * ang)


def _sset(eigs, field="complex"):
    return SpectrumSet(
        spec=EnsembleSpec(field=field, distribution="gaussian", n=eigs.shape[1]),
        master_seed=0,
        eigenvalues=eigs,
    )


def test_linear_stat_matches_direct_sum():
    eigs = _disk_spectra(1, 30, 1)[0]
    tau = ComplexTime(1.3, -0.6)
    sset = _sset(eigs.reshape(1, -1))
    val = linear_stat(sset.sample(0), tau)
    want = complex(np.sum(np.exp(1j * (tau.t * eigs.real + tau.s * eigs.imag))))
    assert abs(val - want) < 1e-12 * 30


def test_k_mean_matches_double_sum():
    eigs = _disk_spectra(1, 25, 2)
    sset = _sset(eigs)
    tau = ComplexTime(0.9, 1.4)
    est = dsff_point(sset, tau)
    diff_re = eigs[0].real[:, None] - eigs[0].real[None, :]
    diff_im = eigs[0].imag[:, None] - eigs[0].imag[None, :]
    brute = float(np.exp(1j * (tau.t * diff_re + tau.s * diff_im)).sum().real) / 25**2
    assert est.k_mean == pytest.approx(brute, rel=1e-12)


def test_decomposition_identity():
    # k_mean = disconnected_unbiased + connected holds exactly by construction
    eigs = _disk_spectra(12, 20, 3)
    est = dsff_point(_sset(eigs), ComplexTime(2.0, 0.5))
    assert est.k_mean == pytest.approx(
        est.disconnected_unbiased + est.connected, rel=1e-14
    )
    assert est.contact == 1.0 / 20
    assert est.m == 12
    assert est.decomposition_available


def test_estimate_from_linear_stats_moments():
    rng = np.random.default_rng(4)
    stats = (rng.standard_normal(50) + 1j * rng.standard_normal(50)) * 1.5 + (2.0 + 1.0j)
    n = 10
    est = estimate_from_linear_stats(stats, n, ComplexTime(1.0, 0.0))
    k_samples = np.abs(stats) ** 2 / n**2
    assert est.k_mean == pytest.approx(float(np.mean(k_samples)), rel=1e-14)
    assert est.k_stderr == pytest.approx(
        float(np.std(k_samples, ddof=1)) / math.sqrt(50), rel=1e-12
    )
    s2 = float(np.sum(np.abs(stats - stats.mean()) ** 2)) / 49
    assert est.connected == pytest.approx(s2 / n**2, rel=1e-12)
    assert est.disconnected_unbiased == pytest.approx(
        (abs(stats.mean()) ** 2 - s2 / 50) / n**2, rel=1e-12
    )


def test_single_sample_withholds_decomposition():
    est = estimate_from_linear_stats(np.array([3.0 + 4.0j]), 10, ComplexTime(1.0, 0.0))
    assert est.k_mean == 0.25
    assert not est.decomposition_available
    assert math.isnan(est.k_stderr)
    assert math.isnan(est.disconnected_unbiased)
    assert math.isnan(est.connected)
    assert math.isnan(est.connected_stderr)
    assert est.contact == 0.1


def test_tau_zero_is_exact():
    est = dsff_point(_sset(_disk_spectra(5, 40, 5)), ComplexTime(0.0, 0.0))
    assert est.k_mean == 1.0
    assert est.k_stderr == 0.0
    assert est.connected == 0.0
    assert est.disconnected_unbiased == 1.0


def test_permutation_invariance():
    eigs = _disk_spectra(6, 35, 6)
    tau = ComplexTime(1.7, -0.9)
    base = dsff_point(_sset(eigs), tau)
    rng = np.random.default_rng(7)
    shuffled = eigs[:, rng.permutation(35)]
    est = dsff_point(_sset(shuffled), tau)
    # same multiset per sample; only the summation order changed
    assert est.k_mean == pytest.approx(base.k_mean, rel=1e-12)
    assert est.connected == pytest.approx(base.connected, rel=1e-11)


def test_repeat_call_is_bitwise_deterministic():
    sset = _sset(_disk_spectra(4, 22, 8))
    tau = ComplexTime(2.2, 0.4)
    a, b = dsff_point(sset, tau), dsff_point(sset, tau)
    assert (a.k_mean, a.k_stderr, a.connected) == (b.k_mean, b.k_stderr, b.connected)


def test_dsff_grid_matches_pointwise():
    sset = _sset(_disk_spectra(5, 18, 9))
    taus = build_tau_grid(0.3, 0.5, 8.0, 7, "log")
    grid_ests = dsff_grid(sset, taus)
    assert len(grid_ests) == 7
    for tau, est in zip(taus, grid_ests):
        single = dsff_point(sset, tau)
        assert est.k_mean == single.k_mean
        assert est.tau == tau


def test_build_tau_grid_log():
    taus = build_tau_grid(0.0, 0.1, 10.0, 5, "log")
    radii = [t.abs_tau for t in taus]
    assert radii[0] == pytest.approx(0.1, rel=1e-12)
    assert radii[-1] == pytest.approx(10.0, rel=1e-12)
    ratios = [radii[i + 1] / radii[i] for i in range(4)]
    assert max(ratios) == pytest.approx(min(ratios), rel=1e-10)
    assert all(t.s == 0.0 for t in taus)


def test_build_tau_grid_linear_allows_zero():
    taus = build_tau_grid(math.pi / 4, 0.0, 2.0, 3, "linear")
    assert taus[0].abs_tau == 0.0
    assert taus[1].t == pytest.approx(taus[1].s, rel=1e-12)
    assert taus[2].abs_tau == pytest.approx(2.0, rel=1e-15)


def test_build_tau_grid_validation():
    with pytest.raises(ValueError, match="log"):
        build_tau_grid(0.0, 0.0, 5.0, 4, "log")
    with pytest.raises(ValueError, match="points"):
        build_tau_grid(0.0, 0.1, 5.0, 0)
    with pytest.raises(ValueError, match="exceeds"):
        build_tau_grid(0.0, 6.0, 5.0, 4)
    with pytest.raises(ValueError, match="spacing"):
        build_tau_grid(0.0, 0.1, 5.0, 4, "cubic")


def test_theta_ray_direction():
    taus = build_tau_grid(math.pi / 2, 1.0, 2.0, 2, "linear")
    for tau in taus:
        assert abs(tau.t) < 1e-12
        assert tau.s > 0
