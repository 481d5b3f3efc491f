import math

import numpy as np
import pytest

import mpt


def test_eigen_matches_numpy():
    rng = np.random.default_rng(1)
    a = rng.standard_normal((8, 8))
    a = (a + a.T) / 2
    values, vectors = mpt.sym_eigen(a)
    ref = np.linalg.eigvalsh(a)[::-1]
    assert np.allclose(values, ref, atol=1e-9)
    # rows are unit eigenvectors
    for t in range(8):
        assert np.allclose(a @ vectors[t], values[t] * vectors[t], atol=1e-9)


def test_weyl_and_dk_bounds_hold():
    rng = np.random.default_rng(2)
    m = rng.standard_normal((6, 6))
    m = (m + m.T) / 2
    h = rng.standard_normal((6, 6)) * 0.01
    h = (h + h.T) / 2
    base, _ = mpt.sym_eigen(m)
    pert, _ = mpt.sym_eigen(m + h)
    hn = mpt.spectral_norm(h)
    for t in range(6):
        lo, hi = mpt.weyl_interval(base[t], hn)
        assert lo - 1e-12 <= pert[t] <= hi + 1e-12
    assert mpt.dk_simple_sin(list(pert), base[0], 0, hn) >= 0.0


def test_sbm_cluster_roundtrip():
    p0 = np.array([[0.9, 0.05], [0.05, 0.85]])
    a, m, z = mpt.sample_sbm(2, 30, p0, 1.0, seed=11)
    assert a.shape == (60, 60)
    assert np.allclose(a, a.T)
    labels = mpt.cluster(a, 2, tau=0.5)
    exact, missed = mpt.recovery_check(list(labels), list(z))
    assert exact
    assert missed == 0


def test_exact_spectrum_and_auto_tau():
    p0 = np.array([[0.6]])
    values, vectors = mpt.exact_sbm_spectrum(1, 9, p0, 0.5)
    assert values[0] == pytest.approx(9 * 0.5 * 0.6)
    assert vectors[0] == pytest.approx(np.full(9, 1.0 / 3.0))
    assert mpt.auto_tau(1.0, math.e**4, 1.0) == pytest.approx(2.0 / math.e)


def test_zeta_bound_dominates_empirical_tail():
    rng = np.random.default_rng(3)
    n = 32
    h = np.where(rng.random((n, n)) < 0.5, 1.0, -1.0) * 0.5
    h = np.triu(h) + np.triu(h, 1).T
    lam = 4.0 * mpt.spectral_norm(h)
    u = np.ones(n) / math.sqrt(n)
    partial, zeta, tail = mpt.neumann_zeta(h, lam, u, 40)
    assert tail < 1e-6
    assert np.all(zeta >= np.abs(partial) - 1e-12)


def test_verification_suite_clean():
    checks, violations = mpt.run_verification_suite(seed=1, instances=10)
    assert checks > 100
    assert violations == 0
