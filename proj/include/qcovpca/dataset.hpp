#ifndef QCOVPCA_DATASET_HPP
#define QCOVPCA_DATASET_HPP

#include <vector>

#include "qcovpca/linalg.hpp"

namespace qcovpca {

// Probability validation shared by all dataset types: a sum within 1e-12 of
// one is accepted as-is, a sum within 1e-9 is renormalized (file-loaded
// probabilities carry decimal rounding), anything further off is an error.
std::vector<double> validate_probs(std::vector<double> probs);
std::vector<double> uniform_probs(std::size_t n);

// Classical feature vectors with datapoint probabilities.
struct RawDataset {
    std::vector<ComplexVector> vectors;
    std::vector<double> probs;

    RawDataset() = default;
    RawDataset(std::vector<ComplexVector> vecs, std::vector<double> p);
    explicit RawDataset(std::vector<ComplexVector> vecs);  // uniform probabilities

    std::size_t size() const { return vectors.size(); }
    std::size_t feature_dim() const { return vectors.empty() ? 0 : vectors.front().dim(); }
};

// Probability-weighted normalized statevectors.
struct PureStateEnsemble {
    std::vector<ComplexVector> states;
    std::vector<double> probs;

    PureStateEnsemble() = default;
    PureStateEnsemble(std::vector<ComplexVector> s, std::vector<double> p);

    std::size_t size() const { return states.size(); }
    std::size_t dim() const { return states.empty() ? 0 : states.front().dim(); }
};

// Probability-weighted density matrices.
struct MixedStateEnsemble {
    std::vector<ComplexMatrix> states;
    std::vector<double> probs;

    MixedStateEnsemble() = default;
    MixedStateEnsemble(std::vector<ComplexMatrix> s, std::vector<double> p);

    std::size_t size() const { return states.size(); }
    std::size_t dim() const { return states.empty() ? 0 : states.front().dim(); }
};

// Zero-pads each feature vector to target_dim and normalizes it to unit norm.
PureStateEnsemble amplitude_encode(const RawDataset& raw, std::size_t target_dim);

// The 2N-point ensemble {(p/2, psi)} U {(p/2, -psi)}; exactly centered and
// with the same ensemble average density matrix as the input.
PureStateEnsemble symmetrize(const PureStateEnsemble& ensemble);

// psi -> |psi><psi| per datapoint, probabilities preserved.
MixedStateEnsemble outer_product_map(const PureStateEnsemble& ensemble);

// Merges states within Frobenius distance tol (first-seen order kept,
// probabilities summed).
MixedStateEnsemble aggregate_duplicates(const MixedStateEnsemble& ensemble, double tol = 1e-12);

// Eigendecomposes each density matrix; eigenpairs with eigenvalue above the
// cutoff become pure datapoints with probability p * eigenvalue.
PureStateEnsemble mixed_to_effective(const MixedStateEnsemble& ensemble,
                                     double eigenvalue_cutoff = 1e-12);

// Subtracts the probability-weighted mean from every feature vector.
RawDataset center(const RawDataset& raw);

}  // namespace qcovpca

#endif
