#ifndef QCOVPCA_QPCA_HPP
#define QCOVPCA_QPCA_HPP

#include <vector>

#include "qcovpca/dataset.hpp"
#include "qcovpca/linalg.hpp"

namespace qcovpca {

enum class PcaSource { covariance, ensemble_density };

// Top-n eigenvectors of Q or rho_bar in descending eigenvalue order.
// Components are phase-canonicalized (largest-magnitude entry real positive)
// so repeated fits are deterministic.
struct PcaModel {
    std::vector<ComplexVector> components;
    std::vector<double> eigenvalues;
    PcaSource source = PcaSource::covariance;

    std::size_t n() const { return components.size(); }
    std::size_t dim() const { return components.empty() ? 0 : components.front().dim(); }
};

struct CompressionCurve {
    std::vector<std::size_t> n_values;
    std::vector<double> median_infidelity;
    std::vector<double> p90_infidelity;
};

PcaModel fit(const PureStateEnsemble& ensemble, std::size_t n, PcaSource source);

// Unnormalized projection onto the span of the first `use_components`
// components (all of them by default).
ComplexVector project(const ComplexVector& psi, const PcaModel& model);
ComplexVector project(const ComplexVector& psi, const PcaModel& model,
                      std::size_t use_components);

// I = 1 - |<projected|psi>|, with the raw (unnormalized) projection.
double infidelity(const ComplexVector& psi, const ComplexVector& projected);

// |<Q_{d-j}|R_{d-j-shift}>|^2 for j = 0, 1, ...; `model_q` supplies the
// unshifted components. Pairing is degeneracy-aware: within clusters of
// near-equal eigenvalues components are matched greedily by overlap.
std::vector<double> overlap_report(const PcaModel& model_q, const PcaModel& model_r,
                                   std::size_t shift, double cluster_width = 1e-9);

// Median uses the midpoint of the central order statistics for even counts;
// the 90th percentile uses the nearest-rank (ceil(0.9 N)) order statistic.
CompressionCurve compression_curve(const PureStateEnsemble& ensemble, const PcaModel& model,
                                   const std::vector<std::size_t>& n_values);

}  // namespace qcovpca

#endif
