#ifndef QCOVPCA_MOMENTS_HPP
#define QCOVPCA_MOMENTS_HPP

#include "qcovpca/dataset.hpp"
#include "qcovpca/linalg.hpp"

namespace qcovpca {

// First and second moments of a statevector ensemble, plus the ensemble
// average density matrix. For normalized states the second-moment matrix
// equals the ensemble average density matrix entrywise, and
// ensemble_density = covariance + mean_outer.
struct MomentSet {
    ComplexVector mean;
    ComplexMatrix covariance;       // Q, accumulated from centered amplitudes
    ComplexMatrix second_moments;   // T, uncentered
    ComplexMatrix mean_outer;       // M = mu mu^dagger
    ComplexMatrix ensemble_density; // rho_bar, accumulated from outer products
};

// mu_j = sum_i p_i y_j^(i)
ComplexVector mean_vector(const PureStateEnsemble& ensemble);

// Q_jk = sum_i p_i (y_j - mu_j)(conj(y_k - mu_k)); Hermitian PSD
ComplexMatrix covariance_matrix(const PureStateEnsemble& ensemble);

// T_jk = sum_i p_i y_j conj(y_k)
ComplexMatrix second_moment_matrix(const PureStateEnsemble& ensemble);

// M = mu mu^dagger; rank one, nonzero eigenvalue |mu|^2 along mu/|mu|
ComplexMatrix mean_outer(const ComplexVector& mu);

// rho_bar = sum_i p_i |psi_i><psi_i|  (resp. sum_i p_i rho_i)
ComplexMatrix ensemble_density(const PureStateEnsemble& ensemble);
ComplexMatrix ensemble_density(const MixedStateEnsemble& ensemble);

// ||rho_bar - Q - M||_F, each term accumulated through its own route
double decomposition_identity_residual(const PureStateEnsemble& ensemble);

MomentSet compute_moments(const PureStateEnsemble& ensemble);

}  // namespace qcovpca

#endif
