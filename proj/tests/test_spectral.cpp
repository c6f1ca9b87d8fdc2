#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qcovpca/moments.hpp"
#include "qcovpca/spectral.hpp"

using namespace qcovpca;

namespace {

// Ensemble whose normalized mean is an exact eigenvector of Q: pairs
// alpha u0 +/- beta u_k over an orthonormal frame {u_k}.
PureStateEnsemble mean_aligned_ensemble(Rng& rng, std::size_t d, std::size_t pairs) {
    // Gram-Schmidt frame
    std::vector<ComplexVector> frame;
    while (frame.size() < pairs + 1) {
        ComplexVector v(d);
        for (std::size_t j = 0; j < d; ++j) v[j] = cplx{rng.normal(), rng.normal()};
        for (const auto& u : frame) {
            const cplx overlap = inner(u, v);
            for (std::size_t j = 0; j < d; ++j) v[j] -= overlap * u[j];
        }
        if (v.norm() > 1e-6) {
            v *= cplx{1.0 / v.norm(), 0.0};
            frame.push_back(std::move(v));
        }
    }
    std::vector<ComplexVector> states;
    std::vector<double> probs;
    double total = 0.0;
    std::vector<double> weights(pairs);
    for (auto& w : weights) {
        w = 0.2 + rng.uniform();
        total += w;
    }
    for (std::size_t k = 0; k < pairs; ++k) {
        const double alpha = 0.3 + 0.6 * rng.uniform();
        const double beta_mag = std::sqrt(1.0 - alpha * alpha);
        const cplx beta = std::polar(beta_mag, rng.uniform(0.0, 6.283185307179586));
        ComplexVector plus(d), minus(d);
        for (std::size_t j = 0; j < d; ++j) {
            plus[j] = alpha * frame[0][j] + beta * frame[k + 1][j];
            minus[j] = alpha * frame[0][j] - beta * frame[k + 1][j];
        }
        states.push_back(std::move(plus));
        states.push_back(std::move(minus));
        probs.push_back(0.5 * weights[k] / total);
        probs.push_back(0.5 * weights[k] / total);
    }
    return PureStateEnsemble(std::move(states), std::move(probs));
}

}  // namespace

TEST_SUITE_BEGIN("spectral");

TEST_CASE("interlacing_check on constructed lists") {
    const auto same = interlacing_check({0.1, 0.5}, {0.1, 0.5}, 1e-12);
    CHECK(same.satisfied);
    CHECK(same.per_index_gaps[0] == 0.0);
    CHECK(same.per_index_gaps[1] == 0.0);

    const auto bad = interlacing_check({0.0, 1.0}, {0.5, 0.6}, 1e-12);
    CHECK_FALSE(bad.satisfied);
    CHECK(bad.max_violation == doctest::Approx(0.5));

    CHECK_THROWS_AS(interlacing_check({0.0}, {0.0, 1.0}, 1e-12), LengthMismatch);
    CHECK_THROWS_AS(interlacing_check({1.0, 0.0}, {0.0, 1.0}, 1e-12), NotSorted);
}

TEST_CASE("interlacing holds between rho and Q on random ensembles") {
    Rng rng(211);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t d = 2 + rng.below(15);
        const std::size_t n = 1 + rng.below(50);
        const PureStateEnsemble e = oracles::random_ensemble(rng, d, n);
        const auto r = hermitian_eigendecompose(ensemble_density(e)).eigenvalues;
        const auto q = hermitian_eigendecompose(covariance_matrix(e)).eigenvalues;
        const auto report = interlacing_check(r, q, 1e-10);
        CHECK(report.satisfied);

        const double mu_sq = mean_vector(e).norm_sq();
        CHECK(eigenvalue_gap_bound_check(r, q, mu_sq, 1e-10));
    }
}

TEST_CASE("gap bound rejects a constructed violation") {
    const std::vector<double> q = {0.0, 0.0};
    const std::vector<double> r = {0.2, 0.2};  // = q + 2 |mu|^2 with |mu|^2 = 0.1
    CHECK_FALSE(eigenvalue_gap_bound_check(r, q, 0.1, 1e-10));
    CHECK(eigenvalue_gap_bound_check(q, q, 0.0, 1e-10));  // centered: r = q
}

TEST_CASE("direct eigenvector error") {
    ComplexMatrix a(2);
    a(1, 1) = 1.0;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const ComplexVector psi{cplx{inv_sqrt2, 0}, cplx{inv_sqrt2, 0}};
    CHECK(eigenvector_error_direct(a, psi) == doctest::Approx(0.25).epsilon(1e-14));

    const ComplexVector e2{cplx{0, 0}, cplx{1, 0}};
    CHECK(eigenvector_error_direct(a, e2) <= 1e-24);

    Rng rng(223);
    const ComplexVector any = oracles::random_state(rng, 4);
    CHECK(eigenvector_error_direct(ComplexMatrix::identity(4), any) <= 1e-24);

    CHECK_THROWS_AS(eigenvector_error_direct(a, ComplexVector{cplx{2, 0}, cplx{0, 0}}),
                    NotNormalized);
}

TEST_CASE("closed-form eigenvector error") {
    CHECK(eigenvector_error_closed_form(0.3, 0.0) == 0.0);
    CHECK(eigenvector_error_closed_form(0.3, 1.0) == 0.0);
    CHECK(eigenvector_error_closed_form(0.1, 0.5) == doctest::Approx(0.0025).epsilon(1e-14));
    CHECK_THROWS_AS(eigenvector_error_closed_form(0.1, 1.5), OutOfRange);
    CHECK_THROWS_AS(eigenvector_error_closed_form(-0.1, 0.5), OutOfRange);
}

TEST_CASE("direct error equals the closed form on ensemble spectra") {
    Rng rng(227);
    for (int rep = 0; rep < 15; ++rep) {
        const std::size_t d = 2 + rng.below(10);
        const std::size_t n = 1 + rng.below(40);
        const PureStateEnsemble e = oracles::random_ensemble(rng, d, n);
        const ComplexMatrix rho = ensemble_density(e);
        const ComplexMatrix q = covariance_matrix(e);
        const ComplexVector mu = mean_vector(e);
        const auto q_eig = hermitian_eigendecompose(q);
        const auto r_eig = hermitian_eigendecompose(rho);
        for (std::size_t j = 0; j < d; ++j) {
            const auto rep_rho = eigenvector_error_report(rho, q_eig.eigenvector(j), mu);
            CHECK(std::abs(rep_rho.direct_error - rep_rho.closed_form_error) <= 1e-10);
            const auto rep_q = eigenvector_error_report(q, r_eig.eigenvector(j), mu);
            CHECK(std::abs(rep_q.direct_error - rep_q.closed_form_error) <= 1e-10);
        }
    }
}

TEST_CASE("shared spectrum on a mean-aligned ensemble") {
    Rng rng(229);
    const PureStateEnsemble e = mean_aligned_ensemble(rng, 7, 4);
    const double mu_sq = mean_vector(e).norm_sq();
    REQUIRE(mu_sq > 1e-4);
    const auto report = shared_spectrum_check(e, 1e-10);
    CHECK(report.claim_applicable);
    CHECK(report.best_overlap >= 1.0 - 1e-10);
    CHECK(report.spectra_match);
    CHECK(report.shift_residual <= 1e-10);
    CHECK(report.max_pair_residual <= 1e-10);
}

TEST_CASE("shared spectrum errors and generic behaviour") {
    Rng rng(233);
    const PureStateEnsemble sym = symmetrize(oracles::random_ensemble(rng, 4, 6));
    CHECK_THROWS_AS(shared_spectrum_check(sym, 1e-10), ZeroMean);

    const PureStateEnsemble generic = oracles::random_ensemble(rng, 5, 8);
    const auto report = shared_spectrum_check(generic, 1e-10);
    CHECK(report.best_overlap < 1.0 - 1e-6);
    CHECK_FALSE(report.claim_applicable);
    CHECK_FALSE(report.spectra_match);
}

TEST_CASE("diagonal relation") {
    Rng rng(239);
    const PureStateEnsemble e = oracles::random_ensemble(rng, 6, 10);
    const ComplexVector mu = mean_vector(e);

    // phi colinear with the mean
    ComplexVector v_mu = mu;
    v_mu *= cplx{1.0 / mu.norm(), 0.0};
    const auto aligned = diagonal_relation(e, v_mu);
    CHECK(aligned.residual <= 1e-12);
    CHECK(aligned.r_phi - aligned.q_phi == doctest::Approx(mu.norm_sq()).epsilon(1e-10));

    // phi orthogonal to the mean
    ComplexVector phi = oracles::random_state(rng, 6);
    const cplx overlap = inner(v_mu, phi);
    for (std::size_t j = 0; j < 6; ++j) phi[j] -= overlap * v_mu[j];
    phi *= cplx{1.0 / phi.norm(), 0.0};
    const auto ortho = diagonal_relation(e, phi);
    CHECK(ortho.residual <= 1e-12);
    CHECK(std::abs(ortho.r_phi - ortho.q_phi) <= 1e-12);

    // random phi sweep, plus the two-sided bound
    for (int rep = 0; rep < 50; ++rep) {
        const ComplexVector any = oracles::random_state(rng, 6);
        const auto rel = diagonal_relation(e, any);
        CHECK(rel.residual <= 1e-12);
        CHECK(rel.q_phi <= rel.r_phi + 1e-12);
        CHECK(rel.r_phi <= rel.q_phi + mu.norm_sq() + 1e-12);
    }

    CHECK_THROWS_AS(diagonal_relation(e, ComplexVector(6)), NotNormalized);
}

TEST_CASE("weyl rank-one chains") {
    const ComplexVector e1{cplx{1, 0}, cplx{0, 0}};
    CHECK(weyl_rank_one_check(ComplexMatrix(2), 1.0, e1, 1e-12));

    Rng rng(241);
    for (int rep = 0; rep < 30; ++rep) {
        const std::size_t d = 2 + rng.below(10);
        const ComplexMatrix a = oracles::random_hermitian(rng, d);
        const ComplexVector b = oracles::random_state(rng, d);
        CHECK(weyl_rank_one_check(a, 0.1 + rng.uniform(), b, 1e-10));
    }

    // reproduces the rho/Q interlacing: A = Q, B = M
    for (int rep = 0; rep < 10; ++rep) {
        const PureStateEnsemble e = oracles::random_ensemble(rng, 4, 8);
        const ComplexVector mu = mean_vector(e);
        ComplexVector v_mu = mu;
        v_mu *= cplx{1.0 / mu.norm(), 0.0};
        CHECK(weyl_rank_one_check(covariance_matrix(e), mu.norm_sq(), v_mu, 1e-10));
    }
}

TEST_CASE("general weyl chains on random pairs") {
    Rng rng(251);
    for (int rep = 0; rep < 30; ++rep) {
        const std::size_t d = 2 + rng.below(8);
        const ComplexMatrix a = oracles::random_hermitian(rng, d);
        const ComplexMatrix b = oracles::random_hermitian(rng, d);
        CHECK(weyl_general_check(a, b, 1e-10));
    }
}

TEST_CASE("eigenvector pairing handles repeated eigenvalues") {
    const auto eig_a = hermitian_eigendecompose(ComplexMatrix::identity(4));
    const auto eig_b = hermitian_eigendecompose(ComplexMatrix::identity(4));
    const auto match = pair_eigenvectors(eig_a, eig_b);
    for (std::size_t j = 0; j < 4; ++j) {
        CHECK(std::norm(inner(eig_a.eigenvector(j), eig_b.eigenvector(match[j]))) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_SUITE_END();
