#include "qcovpca/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qcovpca {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTol = 1e-14;

double offdiag_norm(const ComplexMatrix& a) {
    double s = 0.0;
    const std::size_t d = a.dim();
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            if (i != j) s += std::norm(a(i, j));
        }
    }
    return std::sqrt(s);
}

// One complex Jacobi rotation zeroing A(p,q). The rotation is
//   J_pp = c, J_pq = -s e^{i phi}, J_qp = s e^{-i phi}, J_qq = c
// with e^{i phi} the phase of A(p,q) and tan(2 theta) = 2|A(p,q)| / (A_pp - A_qq).
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
    const double alpha = a(p, p).real();
    const double beta = a(q, q).real();
    const cplx apq = a(p, q);
    const double m = std::abs(apq);
    if (m == 0.0) return;

    const cplx ephi = apq / m;
    const cplx ephi_c = std::conj(ephi);

    const double tau = (alpha - beta) / (2.0 * m);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const std::size_t d = a.dim();
    for (std::size_t r = 0; r < d; ++r) {
        if (r == p || r == q) continue;
        const cplx arp = a(r, p);
        const cplx arq = a(r, q);
        a(r, p) = c * arp + s * ephi_c * arq;
        a(r, q) = -s * ephi * arp + c * arq;
        a(p, r) = std::conj(a(r, p));
        a(q, r) = std::conj(a(r, q));
    }
    a(p, p) = alpha * c * c + beta * s * s + 2.0 * c * s * m;
    a(q, q) = alpha * s * s + beta * c * c - 2.0 * c * s * m;
    a(p, q) = cplx{0.0, 0.0};
    a(q, p) = cplx{0.0, 0.0};

    for (std::size_t r = 0; r < d; ++r) {
        const cplx vrp = v(r, p);
        const cplx vrq = v(r, q);
        v(r, p) = c * vrp + s * ephi_c * vrq;
        v(r, q) = -s * ephi * vrp + c * vrq;
    }
}

}  // namespace

ComplexVector SpectralDecomposition::eigenvector(std::size_t j) const {
    const std::size_t d = eigenvectors.dim();
    ComplexVector v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = eigenvectors(i, j);
    return v;
}

SpectralDecomposition hermitian_eigendecompose(const ComplexMatrix& input,
                                               double hermitian_tol) {
    if (!is_hermitian(input, hermitian_tol)) {
        throw NotHermitian("hermitian_eigendecompose: input is not Hermitian within tolerance");
    }
    const std::size_t d = input.dim();
    ComplexMatrix a = hermitian_part(input);
    ComplexMatrix v = ComplexMatrix::identity(d);

    const double target = kOffDiagonalTol * frobenius_norm(a);
    // Pairs below this magnitude cannot push the off-diagonal norm above target.
    const double skip = d > 0 ? target / (2.0 * static_cast<double>(d)) : 0.0;

    bool converged = d <= 1;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        if (offdiag_norm(a) <= target) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) {
                if (std::abs(a(p, q)) > skip) rotate(a, v, p, q);
            }
        }
    }
    if (!converged && offdiag_norm(a) > target) {
        throw NoConvergence("hermitian_eigendecompose: sweep limit exceeded");
    }

    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&a](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });

    SpectralDecomposition out;
    out.eigenvalues.resize(d);
    out.eigenvectors = ComplexMatrix(d);
    for (std::size_t j = 0; j < d; ++j) {
        out.eigenvalues[j] = a(order[j], order[j]).real();
        double nrm = 0.0;
        for (std::size_t i = 0; i < d; ++i) nrm += std::norm(v(i, order[j]));
        nrm = std::sqrt(nrm);
        const double inv = nrm > 0.0 ? 1.0 / nrm : 1.0;
        for (std::size_t i = 0; i < d; ++i) out.eigenvectors(i, j) = v(i, order[j]) * inv;
    }
    return out;
}

}  // namespace qcovpca
