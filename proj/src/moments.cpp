#include "qcovpca/moments.hpp"

#include <cmath>

#include "qcovpca/detail/kahan.hpp"

namespace qcovpca {

namespace {

// Accumulates sum_i p_i v_i v_i^dagger over the upper triangle (Kahan per
// entry) and mirrors, where v_i is supplied per datapoint.
template <typename VectorAt>
ComplexMatrix weighted_outer_sum(std::size_t n, std::size_t d,
                                 const std::vector<double>& probs, VectorAt&& vector_at) {
    std::vector<detail::KahanComplexSum> acc(d * (d + 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        const double p = probs[i];
        const ComplexVector& v = vector_at(i);
        std::size_t idx = 0;
        for (std::size_t j = 0; j < d; ++j) {
            for (std::size_t k = j; k < d; ++k, ++idx) {
                acc[idx].add(p * (v[j] * std::conj(v[k])));
            }
        }
    }
    ComplexMatrix out(d);
    std::size_t idx = 0;
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = j; k < d; ++k, ++idx) {
            const cplx z = acc[idx].value();
            out(j, k) = z;
            if (k != j) out(k, j) = std::conj(z);
        }
    }
    // diagonal of a Hermitian accumulation is real
    for (std::size_t j = 0; j < d; ++j) out(j, j) = cplx{out(j, j).real(), 0.0};
    return out;
}

}  // namespace

ComplexVector mean_vector(const PureStateEnsemble& ensemble) {
    const std::size_t d = ensemble.dim();
    std::vector<detail::KahanComplexSum> acc(d);
    for (std::size_t i = 0; i < ensemble.size(); ++i) {
        const double p = ensemble.probs[i];
        for (std::size_t j = 0; j < d; ++j) acc[j].add(p * ensemble.states[i][j]);
    }
    ComplexVector mu(d);
    for (std::size_t j = 0; j < d; ++j) mu[j] = acc[j].value();
    return mu;
}

ComplexMatrix covariance_matrix(const PureStateEnsemble& ensemble) {
    const ComplexVector mu = mean_vector(ensemble);
    const std::size_t d = ensemble.dim();
    std::vector<ComplexVector> centered;
    centered.reserve(ensemble.size());
    for (const auto& psi : ensemble.states) {
        ComplexVector b(d);
        for (std::size_t j = 0; j < d; ++j) b[j] = psi[j] - mu[j];
        centered.push_back(std::move(b));
    }
    return weighted_outer_sum(ensemble.size(), d, ensemble.probs,
                              [&centered](std::size_t i) -> const ComplexVector& {
                                  return centered[i];
                              });
}

ComplexMatrix second_moment_matrix(const PureStateEnsemble& ensemble) {
    return weighted_outer_sum(ensemble.size(), ensemble.dim(), ensemble.probs,
                              [&ensemble](std::size_t i) -> const ComplexVector& {
                                  return ensemble.states[i];
                              });
}

ComplexMatrix mean_outer(const ComplexVector& mu) { return outer(mu); }

ComplexMatrix ensemble_density(const PureStateEnsemble& ensemble) {
    return weighted_outer_sum(ensemble.size(), ensemble.dim(), ensemble.probs,
                              [&ensemble](std::size_t i) -> const ComplexVector& {
                                  return ensemble.states[i];
                              });
}

ComplexMatrix ensemble_density(const MixedStateEnsemble& ensemble) {
    const std::size_t d = ensemble.dim();
    std::vector<detail::KahanComplexSum> acc(d * d);
    for (std::size_t i = 0; i < ensemble.size(); ++i) {
        const double p = ensemble.probs[i];
        const auto& rho = ensemble.states[i];
        for (std::size_t e = 0; e < d * d; ++e) acc[e].add(p * rho.entries()[e]);
    }
    ComplexMatrix out(d);
    for (std::size_t e = 0; e < d * d; ++e) out.entries()[e] = acc[e].value();
    return out;
}

double decomposition_identity_residual(const PureStateEnsemble& ensemble) {
    const ComplexMatrix rho = ensemble_density(ensemble);
    const ComplexMatrix q = covariance_matrix(ensemble);
    const ComplexMatrix m = mean_outer(mean_vector(ensemble));
    return frobenius_distance(rho, q + m);
}

MomentSet compute_moments(const PureStateEnsemble& ensemble) {
    MomentSet ms;
    ms.mean = mean_vector(ensemble);
    ms.covariance = covariance_matrix(ensemble);
    ms.second_moments = second_moment_matrix(ensemble);
    ms.mean_outer = mean_outer(ms.mean);
    ms.ensemble_density = ensemble_density(ensemble);
    return ms;
}

}  // namespace qcovpca
