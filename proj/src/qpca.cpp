#include "qcovpca/qpca.hpp"

#include <algorithm>
#include <cmath>

#include "qcovpca/eig.hpp"
#include "qcovpca/moments.hpp"

namespace qcovpca {

namespace {

void canonicalize_phase(ComplexVector& v) {
    std::size_t arg_max = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < v.dim(); ++i) {
        const double mag = std::abs(v[i]);
        if (mag > best) {
            best = mag;
            arg_max = i;
        }
    }
    if (best <= 0.0) return;
    const cplx phase = std::conj(v[arg_max]) / best;
    v *= phase;
}

}  // namespace

PcaModel fit(const PureStateEnsemble& ensemble, std::size_t n, PcaSource source) {
    const std::size_t d = ensemble.dim();
    if (n == 0 || n > d) {
        throw NTooLarge("fit: component count " + std::to_string(n) +
                        " outside [1, " + std::to_string(d) + "]");
    }
    const ComplexMatrix matrix = source == PcaSource::covariance
                                     ? covariance_matrix(ensemble)
                                     : ensemble_density(ensemble);
    const SpectralDecomposition eig = hermitian_eigendecompose(matrix);

    PcaModel model;
    model.source = source;
    model.components.reserve(n);
    model.eigenvalues.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t idx = d - 1 - j;  // descending order
        ComplexVector v = eig.eigenvector(idx);
        canonicalize_phase(v);
        model.components.push_back(std::move(v));
        model.eigenvalues.push_back(eig.eigenvalues[idx]);
    }
    return model;
}

ComplexVector project(const ComplexVector& psi, const PcaModel& model,
                      std::size_t use_components) {
    if (psi.dim() != model.dim()) {
        throw DimMismatch("project: state and model dimensions differ");
    }
    if (use_components > model.n()) {
        throw NTooLarge("project: more components requested than the model holds");
    }
    ComplexVector out(psi.dim());
    for (std::size_t j = 0; j < use_components; ++j) {
        const cplx coeff = inner(model.components[j], psi);
        for (std::size_t i = 0; i < psi.dim(); ++i) {
            out[i] += coeff * model.components[j][i];
        }
    }
    return out;
}

ComplexVector project(const ComplexVector& psi, const PcaModel& model) {
    return project(psi, model, model.n());
}

double infidelity(const ComplexVector& psi, const ComplexVector& projected) {
    if (psi.dim() != projected.dim()) {
        throw DimMismatch("infidelity: dimensions differ");
    }
    return 1.0 - std::abs(inner(projected, psi));
}

std::vector<double> overlap_report(const PcaModel& model_q, const PcaModel& model_r,
                                   std::size_t shift, double cluster_width) {
    if (model_q.dim() != model_r.dim()) {
        throw DimMismatch("overlap_report: model dimensions differ");
    }
    // Degeneracy-aware greedy matching: for each q-component (leading first),
    // candidates are unused r-components within the eigenvalue cluster around
    // the shift target r_{d-j-shift}.
    const std::size_t count =
        model_r.n() > shift ? std::min(model_q.n(), model_r.n() - shift) : 0;
    std::vector<bool> used(model_r.n(), false);
    std::vector<double> overlaps(count, 0.0);
    for (std::size_t j = 0; j < count; ++j) {
        const double target = model_r.eigenvalues[j + shift];
        double best = -1.0;
        std::size_t best_k = model_r.n();
        for (std::size_t k = 0; k < model_r.n(); ++k) {
            if (used[k]) continue;
            if (std::abs(model_r.eigenvalues[k] - target) > cluster_width) continue;
            const double o = std::norm(inner(model_q.components[j], model_r.components[k]));
            if (o > best) {
                best = o;
                best_k = k;
            }
        }
        if (best_k == model_r.n()) {  // cluster exhausted; fall back to the shift target
            best_k = j + shift;
            best = std::norm(inner(model_q.components[j], model_r.components[best_k]));
        }
        used[best_k] = true;
        overlaps[j] = best;
    }
    return overlaps;
}

CompressionCurve compression_curve(const PureStateEnsemble& ensemble, const PcaModel& model,
                                   const std::vector<std::size_t>& n_values) {
    CompressionCurve curve;
    curve.n_values = n_values;
    const std::size_t count = ensemble.size();
    for (const std::size_t n : n_values) {
        std::vector<double> infidelities(count);
        for (std::size_t i = 0; i < count; ++i) {
            const ComplexVector proj = project(ensemble.states[i], model, n);
            infidelities[i] = infidelity(ensemble.states[i], proj);
        }
        std::sort(infidelities.begin(), infidelities.end());
        double median;
        if (count % 2 == 1) {
            median = infidelities[count / 2];
        } else {
            median = 0.5 * (infidelities[count / 2 - 1] + infidelities[count / 2]);
        }
        const std::size_t rank =
            static_cast<std::size_t>(std::ceil(0.9 * static_cast<double>(count)));
        const double p90 = infidelities[rank == 0 ? 0 : rank - 1];
        curve.median_infidelity.push_back(median);
        curve.p90_infidelity.push_back(p90);
    }
    return curve;
}

}  // namespace qcovpca
