"""Smoke tests for the Python bindings: every exposed operation runs and the
values agree with the references checked in depth on the C++ side."""

import math

import numpy as np
import pytest

import speclab


def test_stieltjes_values():
    m = speclab.eval_m(1j)
    assert abs(m - 1j * (math.sqrt(5) - 1) / 2) < 1e-14
    mt = speclab.eval_m_tilde(1j)
    assert abs(m * mt - 1) < 1e-13
    assert abs(speclab.eval_m_alpha(1.0, 0.3 + 0.2j) - speclab.eval_m(0.3 + 0.2j)) < 1e-12
    assert speclab.gap(1j) == pytest.approx(math.sqrt(5))
    assert speclab.m_alpha_identity_residual(2.0, 0.5 + 0.1j) < 1e-12
    assert speclab.boundary_density(1.0, 0.0, 1e-6) == pytest.approx(1 / math.pi, rel=1e-5)
    with pytest.raises(Exception):
        speclab.eval_m(0.5 - 0.1j)


def test_model_sampling_and_determinism():
    m1 = speclab.sample_er(N=300, b=2.0, seed=5)
    m2 = speclab.sample_er(N=300, b=2.0, seed=5)
    assert m1.edges == m2.edges
    assert np.array_equal(np.asarray(m1.beta), np.asarray(m2.beta))
    assert m1.f == pytest.approx(math.sqrt(m1.d))
    assert np.asarray(m1.alpha).mean() == pytest.approx(1.0, abs=0.15)
    psi = m1.psi(0.1)
    assert psi.beta_min <= psi.beta_max

    g = speclab.sample_generic(N=100, b=2.0, seed=3, law="symmetric-three-point")
    H = np.asarray(g.H)
    assert np.allclose(H, H.T)


def test_resolvent_state():
    model = speclab.sample_er(N=120, b=2.0, seed=9)
    st = speclab.resolvent(model, 0.4 + 0.3j)
    G = np.asarray(st.G)
    M = np.asarray(model.dense_m())
    # resolvent identity against numpy
    assert np.abs((M - (0.4 + 0.3j) * np.eye(120)) @ G - np.eye(120)).max() < 1e-9
    # Ward identity
    x = 7
    assert np.abs(np.abs(G[x]) ** 2).sum() == pytest.approx(G[x, x].imag / 0.3, rel=1e-8)
    assert st.lam > 0
    if st.s is not None:
        assert abs(speclab.sce_residual(st, int(st.typical[0]))) < 1.0


def test_bootstrap_trace():
    model = speclab.sample_er(N=200, b=2.5, seed=11)
    tr = speclab.bootstrap(model, re=0.5, target_im=0.1, points=6)
    assert tr.grid[0] == 1.0
    assert tr.grid[-1] == pytest.approx(0.1)
    assert len(tr.lambda_path) == len(tr.grid)
    # phi_7 implies phi_8 (nested thresholds)
    for p7, p8 in zip(tr.phi7, tr.phi8):
        assert p8 or not p7


def test_eigen_report_and_verdict():
    model = speclab.sample_er(N=200, b=3.0, seed=13)
    rep = speclab.eigen_report(model)
    w = np.asarray(rep.eigenvalues)
    assert np.all(np.diff(w) >= 0)
    q = np.asarray(rep.q_values)
    assert q.min() >= 1.0 / 200
    assert q.max() <= 1.0
    v = speclab.delocalization_verdict(rep, regime="everywhere", kappa_test=0.3)
    assert v.bound == pytest.approx(200.0 ** (-0.7))
    assert speclab.q_measure(np.ones(50)) == pytest.approx(1.0 / 50)


def test_phase_sweep_cells():
    cells = speclab.phase_sweep([1.0], [(0.0, float("inf"))], N=100, trials=2, seed=3)
    assert len(cells) == 1
    assert cells[0].q_p50 <= cells[0].q_max


def test_degree_tails():
    assert 2.588 < speclab.b_star() < 2.589
    assert speclab.poisson_lower_tail_exact(10.0, 0.2) == pytest.approx(
        61 * math.exp(-10), rel=1e-12
    )
    b1, b2, b3 = speclab.stirling_chain_bound(10.0, 0.2, 2000.0)
    assert b1 <= b2 <= b3
    lo, hi = speclab.wilson_interval(5, 100)
    assert 0 <= lo < 0.05 < hi <= 1
    mins, maxs = speclab.empirical_extremes(N=200, b=2.0, seed=1, trials=20)
    assert len(mins) == 20
    assert all(m >= 0 for m in mins)
    assert speclab.upper_tail_bound(4000, 3.5, 0.05) == pytest.approx(
        0.24728732997272862, rel=1e-12
    )
