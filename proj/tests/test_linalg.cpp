#include <doctest.h>

#include "oracles.hpp"
#include "qcovpca/linalg.hpp"

using namespace qcovpca;

TEST_SUITE_BEGIN("linalg");

TEST_CASE("inner product is conjugate-linear in the first argument") {
    const ComplexVector e1{cplx{1, 0}, cplx{0, 0}};
    const ComplexVector e2{cplx{0, 0}, cplx{1, 0}};
    CHECK(inner(e1, e2) == cplx{0, 0});

    const ComplexVector v{cplx{0.3, -0.4}, cplx{-1.2, 2.0}};
    const cplx self = inner(v, v);
    CHECK(self.real() == doctest::Approx(v.norm_sq()).epsilon(1e-15));
    CHECK(self.imag() == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("outer product basics") {
    const ComplexVector e1{cplx{1, 0}, cplx{0, 0}};
    const ComplexMatrix m = outer(e1);
    CHECK(m(0, 0) == cplx{1, 0});
    CHECK(m(0, 1) == cplx{0, 0});
    CHECK(m(1, 0) == cplx{0, 0});
    CHECK(m(1, 1) == cplx{0, 0});

    Rng rng(7);
    const ComplexVector psi = oracles::random_state(rng, 5);
    CHECK(trace(outer(psi)).real() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("frobenius distance") {
    ComplexMatrix a(2), b(2);
    a(0, 0) = 1.0;
    CHECK(frobenius_distance(a, a) == 0.0);
    CHECK(frobenius_distance(a, b) == doctest::Approx(1.0));

    ComplexMatrix c(2), d(2);
    c(0, 0) = 3.0;
    d(1, 1) = 4.0;
    CHECK(frobenius_distance(c, d) == doctest::Approx(5.0));

    CHECK_THROWS_AS(frobenius_distance(a, ComplexMatrix(3)), DimMismatch);
}

TEST_CASE("trace is cyclic on random pairs") {
    Rng rng(11);
    for (int rep = 0; rep < 40; ++rep) {
        const std::size_t d = 2 + rng.below(6);
        ComplexMatrix a(d), b(d);
        for (auto& z : a.entries()) z = cplx{rng.normal(), rng.normal()};
        for (auto& z : b.entries()) z = cplx{rng.normal(), rng.normal()};
        const cplx tab = trace(matmul(a, b));
        const cplx tba = trace(matmul(b, a));
        CHECK(std::abs(tab - tba) <= 1e-12 * std::max(1.0, std::abs(tab)));
    }
}

TEST_CASE("dagger is an exact involution") {
    Rng rng(13);
    ComplexMatrix a(6);
    for (auto& z : a.entries()) z = cplx{rng.normal(), rng.normal()};
    const ComplexMatrix back = dagger(dagger(a));
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        CHECK(back.entries()[i] == a.entries()[i]);
    }
}

TEST_CASE("matvec and matmul against identity") {
    Rng rng(17);
    const std::size_t d = 4;
    const ComplexMatrix eye = ComplexMatrix::identity(d);
    const ComplexVector v = oracles::random_state(rng, d);
    const ComplexVector iv = matvec(eye, v);
    for (std::size_t i = 0; i < d; ++i) CHECK(iv[i] == v[i]);

    ComplexMatrix a(d);
    for (auto& z : a.entries()) z = cplx{rng.normal(), rng.normal()};
    CHECK(frobenius_distance(matmul(eye, a), a) == 0.0);
    CHECK_THROWS_AS(matvec(a, ComplexVector(3)), DimMismatch);
}

TEST_CASE("hermitian predicates") {
    Rng rng(19);
    const ComplexMatrix h = oracles::random_hermitian(rng, 5);
    CHECK(is_hermitian(h));
    ComplexMatrix skew = h;
    skew(0, 1) += cplx{0.0, 1e-3};
    CHECK_FALSE(is_hermitian(skew));
    CHECK(is_hermitian(hermitian_part(skew)));
}

TEST_SUITE_END();
