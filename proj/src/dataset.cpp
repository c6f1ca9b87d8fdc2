#include "qcovpca/dataset.hpp"

#include <cmath>
#include <string>

#include "qcovpca/detail/kahan.hpp"
#include "qcovpca/eig.hpp"

namespace qcovpca {

namespace {

constexpr double kProbExactTol = 1e-12;
constexpr double kProbRenormTol = 1e-9;

void require_common_dim(std::size_t expected, std::size_t got, const char* what) {
    if (expected != got) {
        throw DimMismatch(std::string(what) + ": mixed dimensions " + std::to_string(expected) +
                          " and " + std::to_string(got));
    }
}

}  // namespace

std::vector<double> validate_probs(std::vector<double> probs) {
    if (probs.empty()) throw BadProbabilities("empty probability list");
    detail::KahanSum total;
    for (double p : probs) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            throw BadProbabilities("probabilities must be finite and nonnegative");
        }
        total.add(p);
    }
    const double sum = total.value();
    const double off = std::abs(sum - 1.0);
    if (off <= kProbExactTol) return probs;
    if (off <= kProbRenormTol) {
        for (double& p : probs) p /= sum;
        return probs;
    }
    throw BadProbabilities("probabilities sum to " + std::to_string(sum) +
                           ", beyond the renormalization tolerance");
}

std::vector<double> uniform_probs(std::size_t n) {
    if (n == 0) throw BadProbabilities("empty dataset");
    return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

namespace {

void validate_raw(const RawDataset& ds) {
    if (ds.vectors.size() != ds.probs.size()) {
        throw LengthMismatch("RawDataset: vector and probability counts differ");
    }
    for (const auto& v : ds.vectors) {
        require_common_dim(ds.feature_dim(), v.dim(), "RawDataset");
        if (!v.is_finite()) throw DataError("RawDataset: non-finite feature value");
    }
}

}  // namespace

RawDataset::RawDataset(std::vector<ComplexVector> vecs, std::vector<double> p)
    : vectors(std::move(vecs)), probs(validate_probs(std::move(p))) {
    validate_raw(*this);
}

RawDataset::RawDataset(std::vector<ComplexVector> vecs)
    : vectors(std::move(vecs)), probs(uniform_probs(vectors.size())) {
    validate_raw(*this);
}

PureStateEnsemble::PureStateEnsemble(std::vector<ComplexVector> s, std::vector<double> p)
    : states(std::move(s)), probs(validate_probs(std::move(p))) {
    if (states.size() != probs.size()) {
        throw LengthMismatch("PureStateEnsemble: state and probability counts differ");
    }
    for (const auto& st : states) {
        require_common_dim(dim(), st.dim(), "PureStateEnsemble");
        if (std::abs(st.norm() - 1.0) > 1e-10) {
            throw NotNormalized("PureStateEnsemble: state norm deviates from 1 by more than 1e-10");
        }
    }
}

MixedStateEnsemble::MixedStateEnsemble(std::vector<ComplexMatrix> s, std::vector<double> p)
    : states(std::move(s)), probs(validate_probs(std::move(p))) {
    if (states.size() != probs.size()) {
        throw LengthMismatch("MixedStateEnsemble: state and probability counts differ");
    }
    for (const auto& rho : states) {
        require_common_dim(dim(), rho.dim(), "MixedStateEnsemble");
        if (!is_hermitian(rho, 1e-10)) {
            throw NotDensity("MixedStateEnsemble: state is not Hermitian");
        }
        if (std::abs(trace(rho).real() - 1.0) > 1e-10 || std::abs(trace(rho).imag()) > 1e-10) {
            throw NotDensity("MixedStateEnsemble: state trace deviates from 1");
        }
    }
}

PureStateEnsemble amplitude_encode(const RawDataset& raw, std::size_t target_dim) {
    if (target_dim < raw.feature_dim()) {
        throw DimTooSmall("amplitude_encode: target dimension " + std::to_string(target_dim) +
                          " below feature length " + std::to_string(raw.feature_dim()));
    }
    std::vector<ComplexVector> states;
    states.reserve(raw.size());
    for (const auto& y : raw.vectors) {
        const double nrm = y.norm();
        if (nrm < 1e-300) throw ZeroVector("amplitude_encode: zero feature vector");
        ComplexVector psi(target_dim);
        for (std::size_t j = 0; j < y.dim(); ++j) psi[j] = y[j] / nrm;
        states.push_back(std::move(psi));
    }
    return PureStateEnsemble(std::move(states), raw.probs);
}

PureStateEnsemble symmetrize(const PureStateEnsemble& ensemble) {
    const std::size_t n = ensemble.size();
    std::vector<ComplexVector> states;
    std::vector<double> probs;
    states.reserve(2 * n);
    probs.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        states.push_back(ensemble.states[i]);
        probs.push_back(0.5 * ensemble.probs[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        ComplexVector negated = ensemble.states[i];
        for (cplx& z : negated.entries()) z = -z;
        states.push_back(std::move(negated));
        probs.push_back(0.5 * ensemble.probs[i]);
    }
    return PureStateEnsemble(std::move(states), std::move(probs));
}

MixedStateEnsemble outer_product_map(const PureStateEnsemble& ensemble) {
    std::vector<ComplexMatrix> states;
    states.reserve(ensemble.size());
    for (const auto& psi : ensemble.states) states.push_back(outer(psi));
    return MixedStateEnsemble(std::move(states), ensemble.probs);
}

MixedStateEnsemble aggregate_duplicates(const MixedStateEnsemble& ensemble, double tol) {
    if (tol < 0.0) throw OutOfRange("aggregate_duplicates: tolerance must be nonnegative");
    std::vector<ComplexMatrix> states;
    std::vector<double> probs;
    for (std::size_t i = 0; i < ensemble.size(); ++i) {
        bool merged = false;
        for (std::size_t k = 0; k < states.size(); ++k) {
            if (frobenius_distance(states[k], ensemble.states[i]) <= tol) {
                probs[k] += ensemble.probs[i];
                merged = true;
                break;
            }
        }
        if (!merged) {
            states.push_back(ensemble.states[i]);
            probs.push_back(ensemble.probs[i]);
        }
    }
    return MixedStateEnsemble(std::move(states), std::move(probs));
}

PureStateEnsemble mixed_to_effective(const MixedStateEnsemble& ensemble,
                                     double eigenvalue_cutoff) {
    std::vector<ComplexVector> states;
    std::vector<double> probs;
    for (std::size_t i = 0; i < ensemble.size(); ++i) {
        const SpectralDecomposition eig = hermitian_eigendecompose(ensemble.states[i]);
        for (std::size_t m = 0; m < eig.eigenvalues.size(); ++m) {
            const double s = eig.eigenvalues[m];
            if (s < -1e-10) {
                throw NotDensity("mixed_to_effective: negative eigenvalue in density matrix");
            }
            if (s > eigenvalue_cutoff) {
                states.push_back(eig.eigenvector(m));
                probs.push_back(ensemble.probs[i] * s);
            }
        }
    }
    return PureStateEnsemble(std::move(states), std::move(probs));
}

RawDataset center(const RawDataset& raw) {
    const std::size_t d = raw.feature_dim();
    std::vector<detail::KahanComplexSum> mean(d);
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const double p = raw.probs[i];
        for (std::size_t j = 0; j < d; ++j) mean[j].add(p * raw.vectors[i][j]);
    }
    std::vector<ComplexVector> centered;
    centered.reserve(raw.size());
    for (const auto& y : raw.vectors) {
        ComplexVector b(d);
        for (std::size_t j = 0; j < d; ++j) b[j] = y[j] - mean[j].value();
        centered.push_back(std::move(b));
    }
    RawDataset out;
    out.vectors = std::move(centered);
    out.probs = raw.probs;
    return out;
}

}  // namespace qcovpca
