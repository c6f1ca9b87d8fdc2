#ifndef QCOVPCA_EIG_HPP
#define QCOVPCA_EIG_HPP

#include <vector>

#include "qcovpca/linalg.hpp"

namespace qcovpca {

// Eigenvalues in non-decreasing order; column j of `eigenvectors` is the
// orthonormal eigenvector paired with eigenvalues[j].
struct SpectralDecomposition {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;

    ComplexVector eigenvector(std::size_t j) const;
};

// Cyclic Jacobi for Hermitian matrices (complex 2x2 rotations).
//
// The input must satisfy ||A - A^dagger||_F <= hermitian_tol * max(1, ||A||_F)
// (NotHermitian otherwise); it is symmetrized via (A + A^dagger)/2 before the
// sweeps. Sweeps stop once the off-diagonal Frobenius norm drops below
// 1e-14 * ||A||_F, with a hard cap of 100 sweeps (NoConvergence beyond).
SpectralDecomposition hermitian_eigendecompose(const ComplexMatrix& a,
                                               double hermitian_tol = 1e-10);

}  // namespace qcovpca

#endif
