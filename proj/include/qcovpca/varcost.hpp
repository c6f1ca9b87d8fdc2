#ifndef QCOVPCA_VARCOST_HPP
#define QCOVPCA_VARCOST_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qcovpca/dataset.hpp"
#include "qcovpca/linalg.hpp"

namespace qcovpca {

// Diagonal Hamiltonian H = 1 - sum_i q_i |e_i><e_i| with strictly decreasing
// positive weights over m distinct standard-basis levels; non-degenerate over
// its m lowest energies by construction.
class VqseHamiltonian {
  public:
    VqseHamiltonian(std::size_t dim, std::vector<double> weights,
                    std::vector<std::size_t> basis_indices);

    std::size_t dim() const { return dim_; }
    std::size_t levels() const { return weights_.size(); }
    const std::vector<double>& weights() const { return weights_; }
    const std::vector<std::size_t>& basis_indices() const { return basis_indices_; }

    const std::vector<double>& diagonal() const { return diagonal_; }
    double infinity_norm() const;  // max(1, |1 - q_1|)
    ComplexMatrix to_matrix() const;

  private:
    std::size_t dim_;
    std::vector<double> weights_;
    std::vector<std::size_t> basis_indices_;
    std::vector<double> diagonal_;
};

// Product of two-level complex Givens rotations over a fixed pair layout.
// Rotation k acts on coordinates (a, b) of layout[k] as
//   [ cos(theta)              -e^{i phi} sin(theta) ]
//   [ e^{-i phi} sin(theta)    cos(theta)           ]
// and the realized unitary applies rotation 0 first: U = G_{L-1} ... G_1 G_0.
struct RotationAnsatz {
    struct Params {
        double theta = 0.0;
        double phi = 0.0;
    };

    std::vector<std::pair<std::size_t, std::size_t>> layout;
    std::vector<Params> parameters;

    static RotationAnsatz full_pairwise(std::size_t dim);  // identity-initialized

    ComplexMatrix realize(std::size_t dim) const;
};

// Output of a sampled cost evaluation.
struct CostEstimate {
    double value = 0.0;
    std::size_t samples_used = 0;
    double epsilon = 0.0;
    double delta = 0.0;
    std::uint64_t seed = 0;
};

// Zeroes the off-diagonal entries (the standard-basis dephasing channel).
ComplexMatrix dephase(const ComplexMatrix& rho);

// C = Tr(rho^2) - Tr(dephase(U rho U^dagger)^2)
double vqsd_cost_exact(const ComplexMatrix& u, const ComplexMatrix& rho);

// C = Tr(V rho V^dagger H)
double vqse_cost_exact(const ComplexMatrix& v, const ComplexMatrix& rho,
                       const VqseHamiltonian& h);

// Pairwise dataset expansion, sum_{ij} p_i p_j X^(i,j) with
// X^(i,j) = |<psi_i|psi_j>|^2 - sum_z |(U psi_i)_z|^2 |(U psi_j)_z|^2;
// equals vqsd_cost_exact on the ensemble average density matrix.
double vqsd_cost_deterministic(const PureStateEnsemble& ensemble, const ComplexMatrix& u);

// Single-copy expansion, sum_i p_i <psi_i|V^dagger H V|psi_i>.
double vqse_cost_deterministic(const PureStateEnsemble& ensemble, const ComplexMatrix& v,
                               const VqseHamiltonian& h);

// ceil(9 ln(2/delta) / (2 epsilon^2))
std::size_t sample_count_vqsd(double epsilon, double delta);
// ceil(2 h_norm^2 ln(2/delta) / epsilon^2), at least 1
std::size_t sample_count_vqse(double epsilon, double delta, double h_norm);

// Monte-Carlo estimates over the dataset with the Hoeffding-prescribed sample
// count. `single_shot` replaces each sample value with an unbiased one-shot
// measurement outcome (VQSD outcomes in [-2, 1], VQSE outcomes in the
// spectrum of H); default off.
CostEstimate vqsd_cost_sampled(const PureStateEnsemble& ensemble, const ComplexMatrix& u,
                               double epsilon, double delta, std::uint64_t seed,
                               bool single_shot = false);
CostEstimate vqse_cost_sampled(const PureStateEnsemble& ensemble, const ComplexMatrix& v,
                               const VqseHamiltonian& h, double epsilon, double delta,
                               std::uint64_t seed, bool single_shot = false);

enum class CostKind { vqsd, vqse };

struct OptimizeConfig {
    std::size_t max_passes = 100;
    double tol = 1e-10;              // minimum cost improvement per pass
    std::size_t restarts = 0;        // extra randomized starts, seeded
    bool sampled = false;            // estimate costs by sampling
    double epsilon = 0.05;
    double delta = 0.05;
    std::uint64_t seed = 1;
    bool single_shot = false;
    std::optional<VqseHamiltonian> hamiltonian;  // required for CostKind::vqse
};

struct OptimizeResult {
    RotationAnsatz ansatz;
    std::vector<double> cost_trace;  // exact cost after each pass (index 0 = start)
    bool improved = false;
    std::size_t passes = 0;
    std::size_t samples_used = 0;    // total, sampled mode only
};

// Coordinate descent over the ansatz parameters: golden-section line search
// per parameter in exact mode, fixed-step probes in sampled mode. The final
// exact cost never exceeds the initial one.
OptimizeResult optimize_diagonalization(const PureStateEnsemble& ensemble, CostKind kind,
                                        const RotationAnsatz& ansatz,
                                        const OptimizeConfig& config);

// Diagonal of U rho U^dagger, ascending; the eigenvalue estimates produced by
// a diagonalizing unitary.
std::vector<double> rotated_diagonal(const ComplexMatrix& u, const ComplexMatrix& rho);

}  // namespace qcovpca

#endif
