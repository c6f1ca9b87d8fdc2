"""Smoke tests for the python bindings."""

import math

import numpy as np
import pytest

import qcovpca


def random_ensemble(rng, n, d):
    states = rng.normal(size=(n, d)) + 1j * rng.normal(size=(n, d))
    states /= np.linalg.norm(states, axis=1, keepdims=True)
    return qcovpca.Ensemble(states)


def test_amplitude_encode_and_moments():
    ens = qcovpca.amplitude_encode(np.array([[3.0, 4.0]]), 4)
    states = ens.states
    assert states.shape == (1, 4)
    assert states[0, 0] == pytest.approx(0.6)
    assert states[0, 1] == pytest.approx(0.8)

    rng = np.random.default_rng(7)
    e = random_ensemble(rng, 12, 6)
    rho = qcovpca.ensemble_density(e)
    q = qcovpca.covariance_matrix(e)
    mu = qcovpca.mean_vector(e)
    m = qcovpca.mean_outer(mu)
    assert np.linalg.norm(rho - q - m) < 1e-13
    assert qcovpca.identity_residual(e) < 1e-13
    assert np.trace(rho).real == pytest.approx(1.0, abs=1e-10)


def test_eigh_and_interlacing():
    rng = np.random.default_rng(11)
    e = random_ensemble(rng, 20, 8)
    r_vals, r_vecs = qcovpca.eigh(qcovpca.ensemble_density(e))
    q_vals, _ = qcovpca.eigh(qcovpca.covariance_matrix(e))
    assert list(r_vals) == sorted(r_vals)
    report = qcovpca.interlacing_check(list(r_vals), list(q_vals), 1e-10)
    assert report.satisfied
    mu = qcovpca.mean_vector(e)
    assert qcovpca.eigenvalue_gap_bound_check(
        list(r_vals), list(q_vals), float(np.vdot(mu, mu).real), 1e-10
    )
    # columns of the eigenvector matrix reconstruct the input
    rho = qcovpca.ensemble_density(e)
    recon = r_vecs @ np.diag(r_vals) @ r_vecs.conj().T
    assert np.linalg.norm(recon - rho) < 1e-10


def test_symmetrize_centers():
    rng = np.random.default_rng(13)
    e = random_ensemble(rng, 9, 5)
    sym = qcovpca.symmetrize(e)
    assert len(sym) == 18
    assert np.linalg.norm(qcovpca.mean_vector(sym)) < 1e-13


def test_pca_pipeline():
    rng = np.random.default_rng(17)
    e = random_ensemble(rng, 25, 6)
    model = qcovpca.fit(e, 3, source="ensemble_density")
    assert model.components.shape == (3, 6)
    assert sorted(model.eigenvalues, reverse=True) == list(model.eigenvalues)

    psi = e.states[0]
    proj = qcovpca.project(psi, model)
    infid = qcovpca.infidelity(psi, proj)
    assert 0.0 <= infid <= 1.0

    n_values, median, p90 = qcovpca.compression_curve(e, model, [1, 2, 3])
    assert list(n_values) == [1, 2, 3]
    assert all(m <= p + 1e-15 for m, p in zip(median, p90))


def test_costs_and_sampling():
    rng = np.random.default_rng(19)
    e = random_ensemble(rng, 8, 4)
    rho = qcovpca.ensemble_density(e)
    u = np.eye(4, dtype=complex)
    exact = qcovpca.vqsd_cost_exact(u, rho)
    det = qcovpca.vqsd_cost_deterministic(e, u)
    assert det == pytest.approx(exact, abs=1e-12)

    assert qcovpca.sample_count_vqsd(0.05, 0.05) == 6640
    est = qcovpca.vqsd_cost_sampled(e, u, 0.05, 0.05, seed=42)
    assert est.samples_used == 6640
    assert abs(est.value - exact) <= 0.05
    again = qcovpca.vqsd_cost_sampled(e, u, 0.05, 0.05, seed=42)
    assert est.value == again.value

    h = qcovpca.VqseHamiltonian(4, [0.8, 0.4], [0, 1])
    assert h.infinity_norm == 1.0
    vq = qcovpca.vqse_cost_exact(u, rho, h)
    assert abs(vq) <= h.infinity_norm + 1e-12


def test_optimize_small():
    rng = np.random.default_rng(23)
    e = random_ensemble(rng, 3, 3)
    unitary, trace = qcovpca.optimize_diagonalization(e, cost="vqsd", max_passes=25)
    assert trace[-1] <= trace[0] + 1e-15
    assert trace[-1] < 1e-6
    diag = qcovpca.rotated_diagonal(unitary, qcovpca.ensemble_density(e))
    vals, _ = qcovpca.eigh(qcovpca.ensemble_density(e))
    assert max(abs(a - b) for a, b in zip(diag, vals)) < 1e-3


def test_generators_and_io(tmp_path):
    bas = qcovpca.bars_and_stripes(2)
    assert bas.shape == (4, 4)

    fam = qcovpca.random_phase_family(dim=8, num_points=11, seed=3)
    assert len(fam) == 11
    norms = np.linalg.norm(fam.states, axis=1)
    assert np.allclose(norms, 1.0, atol=1e-10)

    path = str(tmp_path / "ens.qce")
    qcovpca.write_ensemble(path, fam)
    back = qcovpca.read_ensemble(path)
    assert np.array_equal(back.states, fam.states)

    with pytest.raises(Exception):
        qcovpca.read_ensemble(str(tmp_path / "missing.qce"))


def test_error_mapping():
    with pytest.raises(Exception, match="Hermitian"):
        qcovpca.eigh(np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex))
    with pytest.raises(Exception):
        qcovpca.sample_count_vqsd(-1.0, 0.5)


def test_math_consistency():
    # closed-form eigenvector error at a hand value
    assert qcovpca.eigenvector_error_closed_form(0.1, 0.5) == pytest.approx(0.0025)
    a = np.diag([0.0, 1.0]).astype(complex)
    psi = np.array([1.0, 1.0], dtype=complex) / math.sqrt(2.0)
    assert qcovpca.eigenvector_error_direct(a, psi) == pytest.approx(0.25)
