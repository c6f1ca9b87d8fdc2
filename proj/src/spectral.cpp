#include "qcovpca/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qcovpca/moments.hpp"

namespace qcovpca {

namespace {

void require_ascending(const std::vector<double>& vals, const char* what) {
    for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
        if (vals[i] > vals[i + 1]) {
            throw NotSorted(std::string(what) + ": eigenvalues must be in non-decreasing order");
        }
    }
}

void require_equal_lengths(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw LengthMismatch(std::string(what) + ": eigenvalue lists of lengths " +
                             std::to_string(a) + " and " + std::to_string(b));
    }
}

void require_unit_norm(const ComplexVector& psi, const char* what) {
    if (std::abs(psi.norm() - 1.0) > 1e-10) {
        throw NotNormalized(std::string(what) + ": state is not unit norm");
    }
}

}  // namespace

InterlacingReport interlacing_check(const std::vector<double>& upper,
                                    const std::vector<double>& lower, double tol) {
    require_equal_lengths(upper.size(), lower.size(), "interlacing_check");
    require_ascending(upper, "interlacing_check(upper)");
    require_ascending(lower, "interlacing_check(lower)");

    InterlacingReport report;
    report.upper = upper;
    report.lower = lower;
    const std::size_t d = upper.size();
    report.per_index_gaps.resize(d);
    double worst = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        report.per_index_gaps[j] = upper[j] - lower[j];
        worst = std::max(worst, lower[j] - upper[j]);          // r_j >= q_j
        if (j + 1 < d) {
            worst = std::max(worst, upper[j] - lower[j + 1]);  // q_{j+1} >= r_j
        }
    }
    report.max_violation = worst;
    report.satisfied = worst <= tol;
    return report;
}

bool eigenvalue_gap_bound_check(const std::vector<double>& r, const std::vector<double>& q,
                                double mean_norm_sq, double tol) {
    require_equal_lengths(r.size(), q.size(), "eigenvalue_gap_bound_check");
    if (mean_norm_sq < 0.0) throw OutOfRange("eigenvalue_gap_bound_check: |mu|^2 < 0");
    const std::size_t d = r.size();
    for (std::size_t j = 0; j < d; ++j) {
        const double delta = r[j] - q[j];
        if (delta < -tol) return false;                   // q_j <= r_j
        if (delta > mean_norm_sq + tol) return false;     // r_j <= q_j + |mu|^2
        if (j + 1 < d && delta > (q[j + 1] - q[j]) + tol) return false;
    }
    return true;
}

double eigenvector_error_direct(const ComplexMatrix& a, const ComplexVector& psi) {
    if (!is_hermitian(a)) {
        throw NotHermitian("eigenvector_error_direct: matrix is not Hermitian");
    }
    require_unit_norm(psi, "eigenvector_error_direct");
    const ComplexVector apsi = matvec(a, psi);
    const cplx lambda = inner(psi, apsi);
    ComplexVector delta = apsi;
    for (std::size_t i = 0; i < delta.dim(); ++i) delta[i] -= lambda * psi[i];
    return delta.norm_sq();
}

double eigenvector_error_closed_form(double mean_norm_sq, double overlap_sq) {
    if (mean_norm_sq < 0.0) {
        throw OutOfRange("eigenvector_error_closed_form: |mu|^2 < 0");
    }
    if (overlap_sq < -1e-9 || overlap_sq > 1.0 + 1e-9) {
        throw OutOfRange("eigenvector_error_closed_form: overlap outside [0, 1]");
    }
    const double s = std::clamp(overlap_sq, 0.0, 1.0);
    return mean_norm_sq * mean_norm_sq * s * (1.0 - s);
}

EigenvectorErrorReport eigenvector_error_report(const ComplexMatrix& matrix,
                                                const ComplexVector& psi,
                                                const ComplexVector& mu) {
    EigenvectorErrorReport report;
    report.direct_error = eigenvector_error_direct(matrix, psi);
    const double mu_sq = mu.norm_sq();
    if (mu_sq > 0.0) {
        // |mu|^2 |<v_mu|psi>|^2 == |<mu|psi>|^2
        report.overlap_with_mean = std::norm(inner(mu, psi)) / mu_sq;
        report.closed_form_error = eigenvector_error_closed_form(mu_sq, report.overlap_with_mean);
    }
    return report;
}

SharedSpectrumReport shared_spectrum_check(const PureStateEnsemble& ensemble, double tol,
                                           double overlap_threshold) {
    const ComplexVector mu = mean_vector(ensemble);
    const double mu_norm = mu.norm();
    if (mu_norm <= 1e-12) {
        throw ZeroMean("shared_spectrum_check: ensemble is centered");
    }
    ComplexVector v_mu = mu;
    v_mu *= cplx{1.0 / mu_norm, 0.0};

    const SpectralDecomposition rho_eig = hermitian_eigendecompose(ensemble_density(ensemble));
    const SpectralDecomposition q_eig = hermitian_eigendecompose(covariance_matrix(ensemble));
    const std::size_t d = rho_eig.eigenvalues.size();

    SharedSpectrumReport report;
    double best_q_overlap = -1.0;
    for (std::size_t j = 0; j < d; ++j) {
        const double o_rho = std::norm(inner(v_mu, rho_eig.eigenvector(j)));
        if (o_rho > report.best_overlap) {
            report.best_overlap = o_rho;
            report.matched_index_rho = j;
        }
        const double o_q = std::norm(inner(v_mu, q_eig.eigenvector(j)));
        if (o_q > best_q_overlap) {
            best_q_overlap = o_q;
            report.matched_index_q = j;
        }
    }
    report.claim_applicable = report.best_overlap >= overlap_threshold;

    report.shift_residual = std::abs(rho_eig.eigenvalues[report.matched_index_rho] -
                                     q_eig.eigenvalues[report.matched_index_q] -
                                     mu_norm * mu_norm);
    std::vector<double> r_rest;
    std::vector<double> q_rest;
    for (std::size_t j = 0; j < d; ++j) {
        if (j != report.matched_index_rho) r_rest.push_back(rho_eig.eigenvalues[j]);
        if (j != report.matched_index_q) q_rest.push_back(q_eig.eigenvalues[j]);
    }
    for (std::size_t j = 0; j < r_rest.size(); ++j) {
        report.max_pair_residual = std::max(report.max_pair_residual,
                                            std::abs(r_rest[j] - q_rest[j]));
    }
    report.spectra_match = report.claim_applicable && report.max_pair_residual <= tol &&
                           report.shift_residual <= tol;
    return report;
}

DiagonalRelation diagonal_relation(const PureStateEnsemble& ensemble, const ComplexVector& phi) {
    require_unit_norm(phi, "diagonal_relation");
    const ComplexVector mu = mean_vector(ensemble);
    DiagonalRelation rel;
    rel.r_phi = inner(phi, matvec(ensemble_density(ensemble), phi)).real();
    rel.q_phi = inner(phi, matvec(covariance_matrix(ensemble), phi)).real();
    const double mean_term = std::norm(inner(mu, phi));  // |mu|^2 |<v_mu|phi>|^2
    rel.residual = std::abs(rel.r_phi - rel.q_phi - mean_term);
    return rel;
}

bool weyl_rank_one_check(const ComplexMatrix& a, double b_eigenvalue,
                         const ComplexVector& b_vector, double tol) {
    if (!is_hermitian(a)) throw NotHermitian("weyl_rank_one_check: A is not Hermitian");
    require_unit_norm(b_vector, "weyl_rank_one_check");
    if (b_eigenvalue <= 0.0) throw OutOfRange("weyl_rank_one_check: eigenvalue must be positive");

    const ComplexMatrix b = cplx{b_eigenvalue, 0.0} * outer(b_vector);
    const std::vector<double> la = hermitian_eigendecompose(a).eigenvalues;
    const std::vector<double> lab = hermitian_eigendecompose(a + b).eigenvalues;
    const std::size_t d = la.size();
    for (std::size_t j = 0; j < d; ++j) {
        if (lab[j] > la[j] + b_eigenvalue + tol) return false;
        if (j + 1 < d && lab[j] > la[j + 1] + tol) return false;
        if (la[j] > lab[j] + tol) return false;
    }
    return true;
}

bool weyl_general_check(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
    if (!is_hermitian(a) || !is_hermitian(b)) {
        throw NotHermitian("weyl_general_check: inputs must be Hermitian");
    }
    const std::vector<double> la = hermitian_eigendecompose(a).eigenvalues;
    const std::vector<double> lb = hermitian_eigendecompose(b).eigenvalues;
    const std::vector<double> lab = hermitian_eigendecompose(a + b).eigenvalues;
    const std::size_t d = la.size();
    // 1-based chains: lambda_j(A+B) <= lambda_{j+k}(A) + lambda_{d-k}(B) and
    // lambda_{j-k+1}(A) + lambda_k(B) <= lambda_j(A+B)
    for (std::size_t j = 1; j <= d; ++j) {
        for (std::size_t k = 0; k <= d - j; ++k) {
            if (lab[j - 1] > la[j + k - 1] + lb[d - k - 1] + tol) return false;
        }
        for (std::size_t k = 1; k <= j; ++k) {
            if (la[j - k] + lb[k - 1] > lab[j - 1] + tol) return false;
        }
    }
    return true;
}

std::vector<std::size_t> pair_eigenvectors(const SpectralDecomposition& a,
                                           const SpectralDecomposition& b,
                                           double cluster_width) {
    const std::size_t d = a.eigenvalues.size();
    require_equal_lengths(d, b.eigenvalues.size(), "pair_eigenvectors");
    std::vector<std::size_t> match(d, 0);
    std::vector<bool> used(d, false);
    // largest eigenvalues first, mirroring principal-component order
    for (std::size_t step = 0; step < d; ++step) {
        const std::size_t j = d - 1 - step;
        double best = -1.0;
        std::size_t best_k = d;
        for (std::size_t k = 0; k < d; ++k) {
            if (used[k]) continue;
            if (std::abs(b.eigenvalues[k] - a.eigenvalues[j]) > cluster_width) continue;
            const double o = std::norm(inner(a.eigenvector(j), b.eigenvector(k)));
            if (o > best) {
                best = o;
                best_k = k;
            }
        }
        if (best_k == d) {
            // no unused candidate inside the cluster; take the best remaining
            for (std::size_t k = 0; k < d; ++k) {
                if (used[k]) continue;
                const double o = std::norm(inner(a.eigenvector(j), b.eigenvector(k)));
                if (o > best) {
                    best = o;
                    best_k = k;
                }
            }
        }
        match[j] = best_k;
        used[best_k] = true;
    }
    return match;
}

}  // namespace qcovpca
