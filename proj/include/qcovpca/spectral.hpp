#ifndef QCOVPCA_SPECTRAL_HPP
#define QCOVPCA_SPECTRAL_HPP

#include <cstddef>
#include <vector>

#include "qcovpca/dataset.hpp"
#include "qcovpca/eig.hpp"
#include "qcovpca/linalg.hpp"

namespace qcovpca {

// Result of checking the interlacing chain
//   r_d >= q_d >= r_{d-1} >= q_{d-1} >= ... >= r_1 >= q_1
// between two ascending eigenvalue lists (r = upper, q = lower).
struct InterlacingReport {
    std::vector<double> upper;
    std::vector<double> lower;
    bool satisfied = false;
    double max_violation = 0.0;
    std::vector<double> per_index_gaps;  // delta_j = r_j - q_j
};

InterlacingReport interlacing_check(const std::vector<double>& upper,
                                    const std::vector<double>& lower, double tol);

// q_j <= r_j <= q_j + |mu|^2 and delta_j <= min(|mu|^2, q_{j+1} - q_j), all
// within tol.
bool eigenvalue_gap_bound_check(const std::vector<double>& r, const std::vector<double>& q,
                                double mean_norm_sq, double tol);

// e = <delta|delta> with |delta> = A|psi> - <psi|A|psi>|psi>.
double eigenvector_error_direct(const ComplexMatrix& a, const ComplexVector& psi);

// |mu|^4 * s * (1 - s) with s the squared overlap with the normalized mean.
double eigenvector_error_closed_form(double mean_norm_sq, double overlap_sq);

struct EigenvectorErrorReport {
    double direct_error = 0.0;
    double closed_form_error = 0.0;
    double overlap_with_mean = 0.0;  // |<v_mu|.>|^2
};

// Both error routes for one state against the (rho_bar, Q) pair of an
// ensemble: direct error of psi under `matrix`, closed form from the overlap.
EigenvectorErrorReport eigenvector_error_report(const ComplexMatrix& matrix,
                                                const ComplexVector& psi,
                                                const ComplexVector& mu);

// Outcome of testing whether the normalized mean is (numerically) an
// eigenvector shared between rho_bar and Q, and if so whether the spectra
// match up to a single |mu|^2 shift.
struct SharedSpectrumReport {
    double best_overlap = 0.0;        // max_j |<v_mu|R_j>|^2
    std::size_t matched_index_rho = 0;
    std::size_t matched_index_q = 0;
    bool claim_applicable = false;    // best_overlap >= overlap_threshold
    bool spectra_match = false;       // remaining eigenvalues pair up within tol
    double shift_residual = 0.0;      // |r_match - q_match - |mu|^2|
    double max_pair_residual = 0.0;   // worst |r_j - q_j| over unmatched pairs
};

SharedSpectrumReport shared_spectrum_check(const PureStateEnsemble& ensemble, double tol,
                                           double overlap_threshold = 1.0 - 1e-6);

struct DiagonalRelation {
    double r_phi = 0.0;      // <phi|rho_bar|phi>
    double q_phi = 0.0;      // <phi|Q|phi>
    double residual = 0.0;   // |r_phi - q_phi - |mu|^2 |<v_mu|phi>|^2|
};

DiagonalRelation diagonal_relation(const PureStateEnsemble& ensemble, const ComplexVector& phi);

// With B = b_eigenvalue |b><b|, checks
//   lambda_j(A+B) <= lambda_j(A) + lambda_B,
//   lambda_j(A+B) <= lambda_{j+1}(A)   (j < d),
//   lambda_j(A)   <= lambda_j(A+B),
// all within tol.
bool weyl_rank_one_check(const ComplexMatrix& a, double b_eigenvalue,
                         const ComplexVector& b_vector, double tol);

// Full chains for arbitrary Hermitian A, B over all valid (j, k):
//   lambda_j(A+B) <= lambda_{j+k}(A) + lambda_{d-k}(B),
//   lambda_{j-k+1}(A) + lambda_k(B) <= lambda_j(A+B).
bool weyl_general_check(const ComplexMatrix& a, const ComplexMatrix& b, double tol);

// Greedy maximum-overlap assignment between two eigenbases, restricted to
// clusters of near-equal eigenvalues (width `cluster_width`) so that
// degenerate subspaces are paired sensibly. Returns, for each column j of
// `a`, the matched column of `b`.
std::vector<std::size_t> pair_eigenvectors(const SpectralDecomposition& a,
                                           const SpectralDecomposition& b,
                                           double cluster_width = 1e-9);

}  // namespace qcovpca

#endif
