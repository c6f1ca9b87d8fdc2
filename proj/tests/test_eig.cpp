#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qcovpca/eig.hpp"

using namespace qcovpca;

namespace {

void check_decomposition_invariants(const ComplexMatrix& a, const SpectralDecomposition& eig) {
    const std::size_t d = a.dim();
    // reconstruction ||A - V Lambda V^dagger||_F
    ComplexMatrix lambda(d);
    for (std::size_t j = 0; j < d; ++j) lambda(j, j) = eig.eigenvalues[j];
    const ComplexMatrix recon =
        matmul(matmul(eig.eigenvectors, lambda), dagger(eig.eigenvectors));
    CHECK(frobenius_distance(a, recon) <= 1e-10 * std::max(1.0, frobenius_norm(a)));

    for (std::size_t i = 0; i < d; ++i) {
        CHECK(std::abs(eig.eigenvector(i).norm() - 1.0) <= 1e-12);
        for (std::size_t j = i + 1; j < d; ++j) {
            CHECK(std::abs(inner(eig.eigenvector(i), eig.eigenvector(j))) <= 1e-10);
        }
        if (i + 1 < d) CHECK(eig.eigenvalues[i] <= eig.eigenvalues[i + 1]);
    }
}

}  // namespace

TEST_SUITE_BEGIN("eig");

TEST_CASE("identity matrix") {
    const SpectralDecomposition eig = hermitian_eigendecompose(ComplexMatrix::identity(2));
    CHECK(eig.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(eig.eigenvalues[1] == doctest::Approx(1.0));
    check_decomposition_invariants(ComplexMatrix::identity(2), eig);
}

TEST_CASE("diagonal matrix sorts ascending") {
    ComplexMatrix a(2);
    a(0, 0) = 3.0;
    a(1, 1) = 1.0;
    const SpectralDecomposition eig = hermitian_eigendecompose(a);
    CHECK(eig.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(eig.eigenvalues[1] == doctest::Approx(3.0));
    CHECK(std::abs(eig.eigenvector(0)[1]) == doctest::Approx(1.0));  // e2 pairs with 1
    CHECK(std::abs(eig.eigenvector(1)[0]) == doctest::Approx(1.0));  // e1 pairs with 3
}

TEST_CASE("eigenvalues match characteristic-polynomial roots at 8x8") {
    for (std::uint64_t seed : {21u, 22u, 23u}) {
        Rng rng(seed);
        ComplexMatrix a = oracles::random_hermitian(rng, 8);
        a *= cplx{1.0 / std::sqrt(8.0), 0.0};  // keep the char poly well conditioned
        const SpectralDecomposition eig = hermitian_eigendecompose(a);
        const std::vector<double> reference = oracles::eigenvalues_by_charpoly(a);
        for (std::size_t j = 0; j < 8; ++j) {
            CHECK(std::abs(eig.eigenvalues[j] - reference[j]) <= 1e-8);
        }
    }
}

TEST_CASE("invariants across 1000 random Hermitian matrices up to dim 32") {
    Rng rng(29);
    double worst_recon = 0.0;
    double worst_overlap = 0.0;
    double worst_norm_dev = 0.0;
    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t d = 2 + rng.below(31);
        const ComplexMatrix a = oracles::random_hermitian(rng, d);
        const SpectralDecomposition eig = hermitian_eigendecompose(a);

        ComplexMatrix lambda(d);
        for (std::size_t j = 0; j < d; ++j) lambda(j, j) = eig.eigenvalues[j];
        const ComplexMatrix recon =
            matmul(matmul(eig.eigenvectors, lambda), dagger(eig.eigenvectors));
        worst_recon = std::max(worst_recon, frobenius_distance(a, recon) /
                                                std::max(1.0, frobenius_norm(a)));
        for (std::size_t i = 0; i < d; ++i) {
            worst_norm_dev = std::max(worst_norm_dev,
                                      std::abs(eig.eigenvector(i).norm() - 1.0));
            for (std::size_t j = i + 1; j < d; ++j) {
                worst_overlap = std::max(
                    worst_overlap, std::abs(inner(eig.eigenvector(i), eig.eigenvector(j))));
            }
        }
    }
    CHECK(worst_recon <= 1e-10);
    CHECK(worst_overlap <= 1e-10);
    CHECK(worst_norm_dev <= 1e-12);
}

TEST_CASE("rejects non-Hermitian input") {
    ComplexMatrix a(2);
    a(0, 1) = cplx{1.0, 0.0};
    CHECK_THROWS_AS(hermitian_eigendecompose(a), NotHermitian);
}

TEST_CASE("near-Hermitian input is symmetrized, not rejected") {
    Rng rng(31);
    ComplexMatrix a = oracles::random_hermitian(rng, 4);
    a(0, 1) += cplx{0.0, 1e-13};
    const SpectralDecomposition eig = hermitian_eigendecompose(a);
    check_decomposition_invariants(hermitian_part(a), eig);
}

TEST_CASE("zero matrix") {
    const SpectralDecomposition eig = hermitian_eigendecompose(ComplexMatrix(3));
    for (double v : eig.eigenvalues) CHECK(v == 0.0);
}

TEST_SUITE_END();
