#include "qcovpca/varcost.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "qcovpca/detail/kahan.hpp"
#include "qcovpca/moments.hpp"
#include "qcovpca/rng.hpp"

namespace qcovpca {

namespace {

void check_unitary(const ComplexMatrix& u, const char* what) {
    if (!is_unitary(u, 1e-10)) {
        throw NotUnitary(std::string(what) + ": matrix is not unitary within 1e-10");
    }
}

void check_density(const ComplexMatrix& rho, const char* what) {
    if (!is_hermitian(rho, 1e-10)) {
        throw NotDensity(std::string(what) + ": state is not Hermitian");
    }
    const cplx tr = trace(rho);
    if (std::abs(tr.real() - 1.0) > 1e-10 || std::abs(tr.imag()) > 1e-10) {
        throw NotDensity(std::string(what) + ": state trace deviates from 1");
    }
}

// Tr(rho^2) for Hermitian rho
double purity(const ComplexMatrix& rho) {
    double s = 0.0;
    for (const cplx& z : rho.entries()) s += std::norm(z);
    return s;
}

ComplexMatrix conjugate_by(const ComplexMatrix& u, const ComplexMatrix& rho) {
    return matmul(matmul(u, rho), dagger(u));
}

// Cumulative distribution for deterministic inversion sampling (one uniform
// draw per sample).
struct Cdf {
    std::vector<double> cumulative;

    explicit Cdf(const std::vector<double>& probs) {
        cumulative.reserve(probs.size());
        double acc = 0.0;
        for (double p : probs) {
            acc += p;
            cumulative.push_back(acc);
        }
        if (!cumulative.empty()) cumulative.back() = std::max(cumulative.back(), 1.0);
    }

    std::size_t draw(Rng& rng) const {
        const double u = rng.uniform();
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        return it == cumulative.end() ? cumulative.size() - 1
                                      : static_cast<std::size_t>(it - cumulative.begin());
    }
};

// |(U psi_i)_z|^2 for every datapoint
std::vector<std::vector<double>> rotated_weights(const PureStateEnsemble& ensemble,
                                                 const ComplexMatrix& u) {
    std::vector<std::vector<double>> w(ensemble.size());
    for (std::size_t i = 0; i < ensemble.size(); ++i) {
        const ComplexVector phi = matvec(u, ensemble.states[i]);
        w[i].resize(phi.dim());
        for (std::size_t z = 0; z < phi.dim(); ++z) w[i][z] = std::norm(phi[z]);
    }
    return w;
}

// |<psi_i|psi_j>|^2 for every ordered pair
std::vector<std::vector<double>> gram_sq(const PureStateEnsemble& ensemble) {
    const std::size_t n = ensemble.size();
    std::vector<std::vector<double>> g(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        g[i][i] = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double o = std::norm(inner(ensemble.states[i], ensemble.states[j]));
            g[i][j] = o;
            g[j][i] = o;
        }
    }
    return g;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

VqseHamiltonian::VqseHamiltonian(std::size_t dim, std::vector<double> weights,
                                 std::vector<std::size_t> basis_indices)
    : dim_(dim), weights_(std::move(weights)), basis_indices_(std::move(basis_indices)) {
    if (weights_.empty() || weights_.size() != basis_indices_.size()) {
        throw LengthMismatch("VqseHamiltonian: weights and basis indices must match, nonempty");
    }
    if (weights_.size() > dim_) {
        throw OutOfRange("VqseHamiltonian: more levels than dimensions");
    }
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (!(weights_[i] > 0.0)) {
            throw OutOfRange("VqseHamiltonian: weights must be positive");
        }
        if (i > 0 && !(weights_[i - 1] > weights_[i])) {
            throw OutOfRange("VqseHamiltonian: weights must be strictly decreasing");
        }
        if (basis_indices_[i] >= dim_) {
            throw OutOfRange("VqseHamiltonian: basis index out of range");
        }
        for (std::size_t k = 0; k < i; ++k) {
            if (basis_indices_[k] == basis_indices_[i]) {
                throw OutOfRange("VqseHamiltonian: basis indices must be distinct");
            }
        }
    }
    diagonal_.assign(dim_, 1.0);
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        diagonal_[basis_indices_[i]] = 1.0 - weights_[i];
    }
}

double VqseHamiltonian::infinity_norm() const {
    return std::max(1.0, std::abs(1.0 - weights_.front()));
}

ComplexMatrix VqseHamiltonian::to_matrix() const {
    ComplexMatrix h(dim_);
    for (std::size_t z = 0; z < dim_; ++z) h(z, z) = diagonal_[z];
    return h;
}

RotationAnsatz RotationAnsatz::full_pairwise(std::size_t dim) {
    RotationAnsatz ansatz;
    for (std::size_t a = 0; a < dim; ++a) {
        for (std::size_t b = a + 1; b < dim; ++b) {
            ansatz.layout.emplace_back(a, b);
        }
    }
    ansatz.parameters.assign(ansatz.layout.size(), Params{});
    return ansatz;
}

ComplexMatrix RotationAnsatz::realize(std::size_t dim) const {
    if (layout.size() != parameters.size()) {
        throw LengthMismatch("RotationAnsatz: layout and parameter counts differ");
    }
    ComplexMatrix u = ComplexMatrix::identity(dim);
    for (std::size_t k = 0; k < layout.size(); ++k) {
        const auto [a, b] = layout[k];
        if (a >= b || b >= dim) {
            throw OutOfRange("RotationAnsatz: invalid pair in layout");
        }
        const double c = std::cos(parameters[k].theta);
        const double s = std::sin(parameters[k].theta);
        const cplx ephi = std::polar(1.0, parameters[k].phi);
        // u <- G_k u, touching rows a and b only
        for (std::size_t col = 0; col < dim; ++col) {
            const cplx ua = u(a, col);
            const cplx ub = u(b, col);
            u(a, col) = c * ua - ephi * s * ub;
            u(b, col) = std::conj(ephi) * s * ua + c * ub;
        }
    }
    return u;
}

ComplexMatrix dephase(const ComplexMatrix& rho) {
    ComplexMatrix out(rho.dim());
    for (std::size_t i = 0; i < rho.dim(); ++i) out(i, i) = rho(i, i);
    return out;
}

double vqsd_cost_exact(const ComplexMatrix& u, const ComplexMatrix& rho) {
    check_unitary(u, "vqsd_cost_exact");
    check_density(rho, "vqsd_cost_exact");
    const ComplexMatrix rotated = conjugate_by(u, rho);
    double dephased_purity = 0.0;
    for (std::size_t z = 0; z < rotated.dim(); ++z) {
        const double p = rotated(z, z).real();
        dephased_purity += p * p;
    }
    return purity(rho) - dephased_purity;
}

double vqse_cost_exact(const ComplexMatrix& v, const ComplexMatrix& rho,
                       const VqseHamiltonian& h) {
    check_unitary(v, "vqse_cost_exact");
    check_density(rho, "vqse_cost_exact");
    if (rho.dim() != h.dim()) throw DimMismatch("vqse_cost_exact: dimensions differ");
    const ComplexMatrix rotated = conjugate_by(v, rho);
    double cost = 0.0;
    for (std::size_t z = 0; z < rotated.dim(); ++z) {
        cost += h.diagonal()[z] * rotated(z, z).real();
    }
    return cost;
}

double vqsd_cost_deterministic(const PureStateEnsemble& ensemble, const ComplexMatrix& u) {
    check_unitary(u, "vqsd_cost_deterministic");
    const auto g = gram_sq(ensemble);
    const auto w = rotated_weights(ensemble, u);
    const std::size_t n = ensemble.size();
    detail::KahanSum total;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double x = g[i][j] - dot(w[i], w[j]);
            total.add(ensemble.probs[i] * ensemble.probs[j] * x);
        }
    }
    return total.value();
}

double vqse_cost_deterministic(const PureStateEnsemble& ensemble, const ComplexMatrix& v,
                               const VqseHamiltonian& h) {
    check_unitary(v, "vqse_cost_deterministic");
    if (ensemble.dim() != h.dim()) {
        throw DimMismatch("vqse_cost_deterministic: dimensions differ");
    }
    const auto w = rotated_weights(ensemble, v);
    detail::KahanSum total;
    for (std::size_t i = 0; i < ensemble.size(); ++i) {
        total.add(ensemble.probs[i] * dot(w[i], h.diagonal()));
    }
    return total.value();
}

std::size_t sample_count_vqsd(double epsilon, double delta) {
    if (!(epsilon > 0.0)) throw OutOfRange("sample_count_vqsd: epsilon must be positive");
    if (!(delta > 0.0 && delta < 1.0)) throw OutOfRange("sample_count_vqsd: delta outside (0,1)");
    const double m = 9.0 * std::log(2.0 / delta) / (2.0 * epsilon * epsilon);
    return static_cast<std::size_t>(std::ceil(m));
}

std::size_t sample_count_vqse(double epsilon, double delta, double h_norm) {
    if (!(epsilon > 0.0)) throw OutOfRange("sample_count_vqse: epsilon must be positive");
    if (!(delta > 0.0 && delta < 1.0)) throw OutOfRange("sample_count_vqse: delta outside (0,1)");
    if (h_norm < 0.0) throw OutOfRange("sample_count_vqse: negative Hamiltonian norm");
    const double m = 2.0 * h_norm * h_norm * std::log(2.0 / delta) / (epsilon * epsilon);
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(m)));
}

CostEstimate vqsd_cost_sampled(const PureStateEnsemble& ensemble, const ComplexMatrix& u,
                               double epsilon, double delta, std::uint64_t seed,
                               bool single_shot) {
    check_unitary(u, "vqsd_cost_sampled");
    const std::size_t m = sample_count_vqsd(epsilon, delta);
    const auto g = gram_sq(ensemble);
    const auto w = rotated_weights(ensemble, u);
    const Cdf cdf(ensemble.probs);
    Rng rng(seed);
    detail::KahanSum total;
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t i = cdf.draw(rng);
        const std::size_t j = cdf.draw(rng);
        const double swap_term = g[i][j];
        const double dip_term = dot(w[i], w[j]);
        if (single_shot) {
            const double swap_outcome = rng.uniform() < 0.5 * (1.0 + swap_term) ? 1.0 : -1.0;
            const double dip_outcome = rng.uniform() < dip_term ? 1.0 : 0.0;
            total.add(swap_outcome - dip_outcome);
        } else {
            total.add(swap_term - dip_term);
        }
    }
    CostEstimate est;
    est.value = total.value() / static_cast<double>(m);
    est.samples_used = m;
    est.epsilon = epsilon;
    est.delta = delta;
    est.seed = seed;
    return est;
}

CostEstimate vqse_cost_sampled(const PureStateEnsemble& ensemble, const ComplexMatrix& v,
                               const VqseHamiltonian& h, double epsilon, double delta,
                               std::uint64_t seed, bool single_shot) {
    check_unitary(v, "vqse_cost_sampled");
    if (ensemble.dim() != h.dim()) throw DimMismatch("vqse_cost_sampled: dimensions differ");
    const std::size_t m = sample_count_vqse(epsilon, delta, h.infinity_norm());
    const auto w = rotated_weights(ensemble, v);
    const Cdf state_cdf(ensemble.probs);
    std::vector<Cdf> level_cdfs;
    if (single_shot) {
        level_cdfs.reserve(w.size());
        for (const auto& wi : w) level_cdfs.emplace_back(wi);
    }
    Rng rng(seed);
    detail::KahanSum total;
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t i = state_cdf.draw(rng);
        if (single_shot) {
            const std::size_t z = level_cdfs[i].draw(rng);
            total.add(h.diagonal()[z]);
        } else {
            total.add(dot(w[i], h.diagonal()));
        }
    }
    CostEstimate est;
    est.value = total.value() / static_cast<double>(m);
    est.samples_used = m;
    est.epsilon = epsilon;
    est.delta = delta;
    est.seed = seed;
    return est;
}

namespace {

// minimizes f over [lo, hi]; keeps track of the best point seen
template <typename Fn>
void golden_section(Fn&& f, double lo, double hi, int iterations, double& best_x,
                    double& best_f) {
    constexpr double kInvPhi = 0.6180339887498949;
    double a = lo;
    double b = hi;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < iterations; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = f(x2);
        }
    }
    const double x = f1 < f2 ? x1 : x2;
    const double fx = std::min(f1, f2);
    if (fx < best_f) {
        best_f = fx;
        best_x = x;
    }
}

// m <- m * G(a,b,theta,phi); touches columns a and b only
void rotate_columns(ComplexMatrix& m, std::size_t a, std::size_t b, double theta, double phi) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const cplx eiphi = std::polar(1.0, phi);
    const std::size_t d = m.dim();
    for (std::size_t r = 0; r < d; ++r) {
        const cplx ma = m(r, a);
        const cplx mb = m(r, b);
        m(r, a) = c * ma + std::conj(eiphi) * s * mb;
        m(r, b) = -eiphi * s * ma + c * mb;
    }
}

// rho <- G rho G^dagger
void conjugate_two_level(ComplexMatrix& rho, std::size_t a, std::size_t b, double theta,
                         double phi) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const cplx eiphi = std::polar(1.0, phi);
    const std::size_t d = rho.dim();
    for (std::size_t col = 0; col < d; ++col) {
        const cplx ra = rho(a, col);
        const cplx rb = rho(b, col);
        rho(a, col) = c * ra - eiphi * s * rb;
        rho(b, col) = std::conj(eiphi) * s * ra + c * rb;
    }
    for (std::size_t row = 0; row < d; ++row) {
        const cplx ra = rho(row, a);
        const cplx rb = rho(row, b);
        rho(row, a) = c * ra - std::conj(eiphi) * s * rb;
        rho(row, b) = eiphi * s * ra + c * rb;
    }
}

// Exact cost of the full product as a function of one rotation's (theta, phi),
// with every other rotation frozen. With U = S G P and rho_p = P rho P^dagger,
// the rotated diagonal is w_z rho_p w_z^dagger where w_z differs from row z of
// S only in entries a and b, so each evaluation is O(d).
struct PairEvaluator {
    std::size_t a = 0;
    std::size_t b = 0;
    bool vqsd = true;
    double purity = 0.0;
    const std::vector<double>* h_diag = nullptr;
    std::vector<cplx> s_a, s_b, g_a, g_b;
    std::vector<double> base;
    double rho_aa = 0.0;
    double rho_bb = 0.0;
    cplx rho_ab;

    void prepare(const ComplexMatrix& suffix, const ComplexMatrix& rho_p, std::size_t pair_a,
                 std::size_t pair_b) {
        a = pair_a;
        b = pair_b;
        const std::size_t d = rho_p.dim();
        const ComplexMatrix t = matmul(suffix, rho_p);
        s_a.resize(d);
        s_b.resize(d);
        g_a.resize(d);
        g_b.resize(d);
        base.resize(d);
        for (std::size_t z = 0; z < d; ++z) {
            s_a[z] = suffix(z, a);
            s_b[z] = suffix(z, b);
            g_a[z] = t(z, a);
            g_b[z] = t(z, b);
            cplx acc{0.0, 0.0};
            for (std::size_t j = 0; j < d; ++j) acc += t(z, j) * std::conj(suffix(z, j));
            base[z] = acc.real();
        }
        rho_aa = rho_p(a, a).real();
        rho_bb = rho_p(b, b).real();
        rho_ab = rho_p(a, b);
    }

    double cost(double theta, double phi) const {
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const cplx eiphi = std::polar(1.0, phi);
        const std::size_t d = base.size();
        double acc = 0.0;
        for (std::size_t z = 0; z < d; ++z) {
            const cplx da = (c - 1.0) * s_a[z] + std::conj(eiphi) * s * s_b[z];
            const cplx db = -eiphi * s * s_a[z] + (c - 1.0) * s_b[z];
            const double v = base[z] +
                             2.0 * (std::conj(da) * g_a[z] + std::conj(db) * g_b[z]).real() +
                             std::norm(da) * rho_aa + std::norm(db) * rho_bb +
                             2.0 * (da * rho_ab * std::conj(db)).real();
            acc += vqsd ? v * v : (*h_diag)[z] * v;
        }
        return vqsd ? purity - acc : acc;
    }
};

// rho~ diagonal entries a and b under a single rotation of the current frame;
// everything else is unchanged, so each evaluation is O(1).
struct TwoLevelEvaluator {
    bool vqsd = true;
    double rest = 0.0;  // cost contribution of the untouched diagonal entries
    double rho_aa = 0.0;
    double rho_bb = 0.0;
    cplx rho_ab;
    double h_a = 0.0;
    double h_b = 0.0;

    double cost(double theta, double phi) const {
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const double cross =
            2.0 * c * s * (std::polar(1.0, -phi) * rho_ab).real();
        const double v_a = c * c * rho_aa + s * s * rho_bb - cross;
        const double v_b = s * s * rho_aa + c * c * rho_bb + cross;
        return vqsd ? rest - v_a * v_a - v_b * v_b : rest + h_a * v_a + h_b * v_b;
    }
};

constexpr double kPi = 3.141592653589793;
constexpr int kThetaGrid = 9;
constexpr int kPhiGrid = 8;

// joint (theta, phi) minimization of `cost` over the full period; joint
// search matters: at theta = 0 the phase is a dead coordinate for 1-D descent
template <typename Cost>
void joint_rotation_search(const Cost& cost, double& theta, double& phi, double& best_f) {
    double best_theta = theta;
    double best_phi = phi;
    for (int ti = 0; ti < kThetaGrid; ++ti) {
        const double th = -0.5 * kPi + kPi * ti / kThetaGrid;
        for (int pi = 0; pi < kPhiGrid; ++pi) {
            const double ph = -kPi + 2.0 * kPi * pi / kPhiGrid;
            const double f = cost(th, ph);
            if (f < best_f) {
                best_f = f;
                best_theta = th;
                best_phi = ph;
            }
        }
    }
    const double w_theta = kPi / kThetaGrid;
    const double w_phi = 2.0 * kPi / kPhiGrid;
    for (int round = 0; round < 2; ++round) {
        golden_section([&](double th) { return cost(th, best_phi); }, best_theta - w_theta,
                       best_theta + w_theta, 48, best_theta, best_f);
        golden_section([&](double ph) { return cost(best_theta, ph); }, best_phi - w_phi,
                       best_phi + w_phi, 48, best_phi, best_f);
    }
    theta = best_theta;
    phi = best_phi;
}

// u <- G(a,b,theta,phi) * u; touches rows a and b only
void rotate_rows(ComplexMatrix& u, std::size_t a, std::size_t b, double theta, double phi) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const cplx eiphi = std::polar(1.0, phi);
    const std::size_t d = u.dim();
    for (std::size_t col = 0; col < d; ++col) {
        const cplx ua = u(a, col);
        const cplx ub = u(b, col);
        u(a, col) = c * ua - eiphi * s * ub;
        u(b, col) = std::conj(eiphi) * s * ua + c * ub;
    }
}

bool is_full_pairwise(const std::vector<std::pair<std::size_t, std::size_t>>& layout,
                      std::size_t d) {
    if (layout.size() != d * (d - 1) / 2) return false;
    std::size_t k = 0;
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = a + 1; b < d; ++b, ++k) {
            if (layout[k].first != a || layout[k].second != b) return false;
        }
    }
    return true;
}

// Decomposes a unitary over the full pairwise layout: finds parameters with
// W = D * G_{L-1} ... G_0 for some diagonal phase matrix D (a Reck-style
// two-level decomposition; the costs here are invariant under D).
std::vector<RotationAnsatz::Params> mesh_synthesize(
    const ComplexMatrix& w, const std::vector<std::pair<std::size_t, std::size_t>>& layout) {
    ComplexMatrix m = w;
    std::vector<RotationAnsatz::Params> params(layout.size());
    for (std::size_t k = 0; k < layout.size(); ++k) {
        const auto [a, b] = layout[k];
        const cplx maa = m(a, a);
        const cplx mab = m(a, b);
        double theta = 0.0;
        double phi = 0.0;
        if (std::abs(mab) > 0.0) {
            if (std::abs(maa) == 0.0) {
                theta = 0.5 * kPi;
            } else {
                theta = std::atan2(std::abs(mab), std::abs(maa));
                phi = std::arg(mab) - std::arg(maa) + kPi;
            }
        }
        params[k] = {theta, phi};
        // m <- m * G^dagger zeroes m(a, b)
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const cplx eiphi = std::polar(1.0, phi);
        for (std::size_t r = 0; r < m.dim(); ++r) {
            const cplx ca = m(r, a);
            const cplx cb = m(r, b);
            m(r, a) = c * ca - std::conj(eiphi) * s * cb;
            m(r, b) = eiphi * s * ca + c * cb;
        }
    }
    return params;
}

// One Jacobi-style sweep in the output frame: for each pair, the exact joint
// (theta, phi) minimizer is applied to the current state and folded into the
// accumulated unitary. Converges quadratically for the dephasing cost.
void frame_sweep(ComplexMatrix& rho_cur, ComplexMatrix& u_acc, bool vqsd, double purity,
                 const std::vector<double>* h_diag,
                 const std::vector<std::pair<std::size_t, std::size_t>>& layout) {
    const std::size_t d = rho_cur.dim();
    TwoLevelEvaluator eval;
    eval.vqsd = vqsd;

    double vqsd_diag_sq = 0.0;
    double vqse_total = 0.0;
    for (std::size_t z = 0; z < d; ++z) {
        const double v = rho_cur(z, z).real();
        if (vqsd) vqsd_diag_sq += v * v;
        if (h_diag) vqse_total += (*h_diag)[z] * v;
    }

    for (const auto& [a, b] : layout) {
        const double v_a = rho_cur(a, a).real();
        const double v_b = rho_cur(b, b).real();
        eval.rho_aa = v_a;
        eval.rho_bb = v_b;
        eval.rho_ab = rho_cur(a, b);
        if (vqsd) {
            eval.rest = purity - (vqsd_diag_sq - v_a * v_a - v_b * v_b);
        } else {
            eval.h_a = (*h_diag)[a];
            eval.h_b = (*h_diag)[b];
            eval.rest = vqse_total - eval.h_a * v_a - eval.h_b * v_b;
        }

        double theta = 0.0;
        double phi = 0.0;
        double best = eval.cost(0.0, 0.0);
        const double before = best;
        joint_rotation_search([&eval](double th, double ph) { return eval.cost(th, ph); },
                              theta, phi, best);
        if (best < before) {
            conjugate_two_level(rho_cur, a, b, theta, phi);
            rotate_rows(u_acc, a, b, theta, phi);
            const double na = rho_cur(a, a).real();
            const double nb = rho_cur(b, b).real();
            if (vqsd) vqsd_diag_sq += na * na + nb * nb - v_a * v_a - v_b * v_b;
            if (h_diag) vqse_total += eval.h_a * (na - v_a) + eval.h_b * (nb - v_b);
        }
    }
}

// One exact coordinate-descent sweep over the raw ansatz slots, for layouts
// that are not the full mesh. Rotations are visited last-to-first, so the
// tail of the product acts directly on the output frame.
void exact_sweep(RotationAnsatz& ansatz, const ComplexMatrix& rho, bool vqsd, double purity,
                 const std::vector<double>* h_diag) {
    const std::size_t d = rho.dim();
    const std::size_t count = ansatz.layout.size();
    if (count == 0) return;

    // start at k = L-1: prefix = G_{L-2} ... G_0, empty suffix
    ComplexMatrix rho_p = rho;
    for (std::size_t k = 0; k + 1 < count; ++k) {
        conjugate_two_level(rho_p, ansatz.layout[k].first, ansatz.layout[k].second,
                            ansatz.parameters[k].theta, ansatz.parameters[k].phi);
    }
    ComplexMatrix suffix = ComplexMatrix::identity(d);

    PairEvaluator eval;
    eval.vqsd = vqsd;
    eval.purity = purity;
    eval.h_diag = h_diag;

    for (std::size_t k = count; k-- > 0;) {
        const auto [a, b] = ansatz.layout[k];
        eval.prepare(suffix, rho_p, a, b);

        double& theta = ansatz.parameters[k].theta;
        double& phi = ansatz.parameters[k].phi;
        double best = eval.cost(theta, phi);
        joint_rotation_search([&eval](double th, double ph) { return eval.cost(th, ph); },
                              theta, phi, best);

        // fold this rotation into the suffix; peel the previous one off the prefix
        if (k > 0) {
            rotate_columns(suffix, a, b, theta, phi);
            conjugate_two_level(rho_p, ansatz.layout[k - 1].first, ansatz.layout[k - 1].second,
                                -ansatz.parameters[k - 1].theta, ansatz.parameters[k - 1].phi);
        }
    }
}

}  // namespace

OptimizeResult optimize_diagonalization(const PureStateEnsemble& ensemble, CostKind kind,
                                        const RotationAnsatz& ansatz,
                                        const OptimizeConfig& config) {
    const std::size_t d = ensemble.dim();
    if (kind == CostKind::vqse) {
        if (!config.hamiltonian) {
            throw OutOfRange("optimize_diagonalization: VQSE requires a Hamiltonian");
        }
        if (config.hamiltonian->dim() != d) {
            throw DimMismatch("optimize_diagonalization: Hamiltonian dimension differs");
        }
    }
    const ComplexMatrix rho = ensemble_density(ensemble);

    const auto exact_cost = [&](const RotationAnsatz& a) {
        const ComplexMatrix u = a.realize(d);
        return kind == CostKind::vqsd ? vqsd_cost_exact(u, rho)
                                      : vqse_cost_exact(u, rho, *config.hamiltonian);
    };

    Rng master(config.seed);
    std::size_t samples_used = 0;
    const auto sampled_cost = [&](const RotationAnsatz& a, std::uint64_t sub_seed) {
        const ComplexMatrix u = a.realize(d);
        const CostEstimate est =
            kind == CostKind::vqsd
                ? vqsd_cost_sampled(ensemble, u, config.epsilon, config.delta, sub_seed,
                                    config.single_shot)
                : vqse_cost_sampled(ensemble, u, *config.hamiltonian, config.epsilon,
                                    config.delta, sub_seed, config.single_shot);
        samples_used += est.samples_used;
        return est.value;
    };

    const bool vqsd = kind == CostKind::vqsd;
    const std::vector<double>* h_diag =
        kind == CostKind::vqse ? &config.hamiltonian->diagonal() : nullptr;
    const double rho_purity = purity(rho);
    const bool mesh = !config.sampled && is_full_pairwise(ansatz.layout, d);

    OptimizeResult best;
    for (std::size_t attempt = 0; attempt <= config.restarts; ++attempt) {
        RotationAnsatz current = ansatz;
        if (attempt > 0) {
            for (auto& p : current.parameters) {
                p.theta = master.uniform(-1.5707963267948966, 1.5707963267948966);
                p.phi = master.uniform(-3.141592653589793, 3.141592653589793);
            }
        }

        OptimizeResult run;
        run.cost_trace.push_back(exact_cost(current));
        RotationAnsatz snapshot = current;       // best parameters by exact cost
        double snapshot_cost = run.cost_trace.front();

        // output-frame state for the mesh path
        ComplexMatrix u_acc = current.realize(d);
        ComplexMatrix rho_cur = conjugate_by(u_acc, rho);

        for (std::size_t pass = 1; pass <= config.max_passes; ++pass) {
            double pass_cost;
            if (config.sampled) {
                // fixed-step probes with common random numbers per comparison
                const double step = 0.5 * std::pow(0.8, static_cast<double>(pass - 1));
                for (std::size_t k = 0; k < current.parameters.size(); ++k) {
                    for (int comp = 0; comp < 2; ++comp) {
                        double& x = comp == 0 ? current.parameters[k].theta
                                              : current.parameters[k].phi;
                        const double x0 = x;
                        const std::uint64_t probe_seed = master.next_u64();
                        double best_val = sampled_cost(current, probe_seed);
                        double best_x = x0;
                        for (const double cand : {x0 - step, x0 + step}) {
                            x = cand;
                            const double val = sampled_cost(current, probe_seed);
                            if (val < best_val) {
                                best_val = val;
                                best_x = cand;
                            }
                        }
                        x = best_x;
                    }
                }
                pass_cost = exact_cost(current);
            } else if (mesh) {
                frame_sweep(rho_cur, u_acc, vqsd, rho_purity, h_diag, current.layout);
                current.parameters = mesh_synthesize(u_acc, current.layout);
                pass_cost = exact_cost(current);
            } else {
                exact_sweep(current, rho, vqsd, rho_purity, h_diag);
                pass_cost = exact_cost(current);
            }

            run.cost_trace.push_back(pass_cost);
            run.passes = pass;
            if (pass_cost < snapshot_cost) {
                snapshot_cost = pass_cost;
                snapshot = current;
            }
            const double prev = run.cost_trace[run.cost_trace.size() - 2];
            if (prev - pass_cost < config.tol) break;
        }

        run.ansatz = snapshot;
        run.improved = snapshot_cost < run.cost_trace.front() - config.tol;
        if (attempt == 0 || snapshot_cost < exact_cost(best.ansatz)) {
            best = std::move(run);
        }
    }
    best.samples_used = samples_used;
    return best;
}

std::vector<double> rotated_diagonal(const ComplexMatrix& u, const ComplexMatrix& rho) {
    check_unitary(u, "rotated_diagonal");
    const ComplexMatrix rotated = conjugate_by(u, rho);
    std::vector<double> diag(rotated.dim());
    for (std::size_t z = 0; z < rotated.dim(); ++z) diag[z] = rotated(z, z).real();
    std::sort(diag.begin(), diag.end());
    return diag;
}

}  // namespace qcovpca
