// pybind11 surface for the qcovpca core: ensembles, moments, spectral
// relations, PCA models and the variational cost machinery.
#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qcovpca/dataio.hpp"
#include "qcovpca/dataset.hpp"
#include "qcovpca/eig.hpp"
#include "qcovpca/moments.hpp"
#include "qcovpca/qpca.hpp"
#include "qcovpca/spectral.hpp"
#include "qcovpca/varcost.hpp"

namespace py = pybind11;
using namespace qcovpca;

namespace {

using ComplexArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

ComplexVector vector_from_array(const ComplexArray& arr) {
    if (arr.ndim() != 1) throw py::value_error("expected a 1-D array");
    ComplexVector v(static_cast<std::size_t>(arr.shape(0)));
    const auto r = arr.unchecked<1>();
    for (py::ssize_t i = 0; i < arr.shape(0); ++i) v[static_cast<std::size_t>(i)] = r(i);
    return v;
}

py::array_t<cplx> vector_to_array(const ComplexVector& v) {
    py::array_t<cplx> arr(static_cast<py::ssize_t>(v.dim()));
    auto w = arr.mutable_unchecked<1>();
    for (std::size_t i = 0; i < v.dim(); ++i) w(static_cast<py::ssize_t>(i)) = v[i];
    return arr;
}

ComplexMatrix matrix_from_array(const ComplexArray& arr) {
    if (arr.ndim() != 2 || arr.shape(0) != arr.shape(1)) {
        throw py::value_error("expected a square 2-D array");
    }
    const auto d = static_cast<std::size_t>(arr.shape(0));
    ComplexMatrix m(d);
    const auto r = arr.unchecked<2>();
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            m(i, j) = r(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j));
        }
    }
    return m;
}

py::array_t<cplx> matrix_to_array(const ComplexMatrix& m) {
    const auto d = static_cast<py::ssize_t>(m.dim());
    py::array_t<cplx> arr({d, d});
    auto w = arr.mutable_unchecked<2>();
    for (py::ssize_t i = 0; i < d; ++i) {
        for (py::ssize_t j = 0; j < d; ++j) {
            w(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        }
    }
    return arr;
}

PureStateEnsemble ensemble_from_arrays(const ComplexArray& states,
                                       const std::optional<std::vector<double>>& probs) {
    if (states.ndim() != 2) throw py::value_error("states must be a 2-D array (N, d)");
    const auto n = static_cast<std::size_t>(states.shape(0));
    const auto d = static_cast<std::size_t>(states.shape(1));
    const auto r = states.unchecked<2>();
    std::vector<ComplexVector> vecs;
    vecs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        ComplexVector v(d);
        for (std::size_t j = 0; j < d; ++j) {
            v[j] = r(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j));
        }
        vecs.push_back(std::move(v));
    }
    return PureStateEnsemble(std::move(vecs), probs ? *probs : uniform_probs(n));
}

py::array_t<cplx> states_to_array(const PureStateEnsemble& e) {
    const auto n = static_cast<py::ssize_t>(e.size());
    const auto d = static_cast<py::ssize_t>(e.dim());
    py::array_t<cplx> arr({n, d});
    auto w = arr.mutable_unchecked<2>();
    for (py::ssize_t i = 0; i < n; ++i) {
        for (py::ssize_t j = 0; j < d; ++j) {
            w(i, j) = e.states[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
    }
    return arr;
}

PcaSource source_from_string(const std::string& name) {
    if (name == "covariance") return PcaSource::covariance;
    if (name == "ensemble_density") return PcaSource::ensemble_density;
    throw py::value_error("source must be 'covariance' or 'ensemble_density'");
}

RawDataset raw_from_arrays(const ComplexArray& vectors,
                           const std::optional<std::vector<double>>& probs) {
    if (vectors.ndim() != 2) throw py::value_error("vectors must be a 2-D array (N, d)");
    const auto n = static_cast<std::size_t>(vectors.shape(0));
    const auto d = static_cast<std::size_t>(vectors.shape(1));
    const auto r = vectors.unchecked<2>();
    std::vector<ComplexVector> vecs;
    vecs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        ComplexVector v(d);
        for (std::size_t j = 0; j < d; ++j) {
            v[j] = r(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j));
        }
        vecs.push_back(std::move(v));
    }
    if (probs) return RawDataset(std::move(vecs), *probs);
    return RawDataset(std::move(vecs));
}

py::array_t<cplx> raw_to_array(const RawDataset& ds) {
    const auto n = static_cast<py::ssize_t>(ds.size());
    const auto d = static_cast<py::ssize_t>(ds.feature_dim());
    py::array_t<cplx> arr({n, d});
    auto w = arr.mutable_unchecked<2>();
    for (py::ssize_t i = 0; i < n; ++i) {
        for (py::ssize_t j = 0; j < d; ++j) {
            w(i, j) = ds.vectors[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
    }
    return arr;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "covariance-matrix preparation and quantum-PCA toolkit";

    py::register_exception<Error>(m, "QcovpcaError", PyExc_RuntimeError);

    py::class_<PureStateEnsemble>(m, "Ensemble")
        .def(py::init(&ensemble_from_arrays), py::arg("states"), py::arg("probs") = std::nullopt)
        .def_property_readonly("states", &states_to_array)
        .def_property_readonly("probs",
                               [](const PureStateEnsemble& e) { return e.probs; })
        .def_property_readonly("dim", &PureStateEnsemble::dim)
        .def("__len__", &PureStateEnsemble::size);

    py::class_<PcaModel>(m, "PcaModel")
        .def_property_readonly("components",
                               [](const PcaModel& model) {
                                   const auto n = static_cast<py::ssize_t>(model.n());
                                   const auto d = static_cast<py::ssize_t>(model.dim());
                                   py::array_t<cplx> arr({n, d});
                                   auto w = arr.mutable_unchecked<2>();
                                   for (py::ssize_t i = 0; i < n; ++i) {
                                       for (py::ssize_t j = 0; j < d; ++j) {
                                           w(i, j) = model.components[i][j];
                                       }
                                   }
                                   return arr;
                               })
        .def_property_readonly("eigenvalues",
                               [](const PcaModel& model) { return model.eigenvalues; });

    py::class_<CostEstimate>(m, "CostEstimate")
        .def_readonly("value", &CostEstimate::value)
        .def_readonly("samples_used", &CostEstimate::samples_used)
        .def_readonly("epsilon", &CostEstimate::epsilon)
        .def_readonly("delta", &CostEstimate::delta)
        .def_readonly("seed", &CostEstimate::seed);

    py::class_<VqseHamiltonian>(m, "VqseHamiltonian")
        .def(py::init<std::size_t, std::vector<double>, std::vector<std::size_t>>(),
             py::arg("dim"), py::arg("weights"), py::arg("basis_indices"))
        .def_property_readonly("diagonal", &VqseHamiltonian::diagonal)
        .def_property_readonly("infinity_norm", &VqseHamiltonian::infinity_norm);

    py::class_<InterlacingReport>(m, "InterlacingReport")
        .def_readonly("satisfied", &InterlacingReport::satisfied)
        .def_readonly("max_violation", &InterlacingReport::max_violation)
        .def_readonly("per_index_gaps", &InterlacingReport::per_index_gaps);

    // dataset operations
    m.def(
        "amplitude_encode",
        [](const ComplexArray& vectors, std::size_t dim,
           const std::optional<std::vector<double>>& probs) {
            return amplitude_encode(raw_from_arrays(vectors, probs), dim);
        },
        py::arg("vectors"), py::arg("dim"), py::arg("probs") = std::nullopt,
        "zero-pad feature vectors to `dim` and normalize them to unit states");
    m.def("symmetrize", &symmetrize, py::arg("ensemble"));
    m.def(
        "center",
        [](const ComplexArray& vectors, const std::optional<std::vector<double>>& probs) {
            return raw_to_array(center(raw_from_arrays(vectors, probs)));
        },
        py::arg("vectors"), py::arg("probs") = std::nullopt);

    // moments
    m.def("mean_vector",
          [](const PureStateEnsemble& e) { return vector_to_array(mean_vector(e)); });
    m.def("covariance_matrix",
          [](const PureStateEnsemble& e) { return matrix_to_array(covariance_matrix(e)); });
    m.def("second_moment_matrix",
          [](const PureStateEnsemble& e) { return matrix_to_array(second_moment_matrix(e)); });
    m.def("ensemble_density",
          [](const PureStateEnsemble& e) { return matrix_to_array(ensemble_density(e)); });
    m.def("mean_outer", [](const ComplexArray& mu) {
        return matrix_to_array(mean_outer(vector_from_array(mu)));
    });
    m.def("identity_residual", &decomposition_identity_residual, py::arg("ensemble"),
          "||rho - Q - M||_F");

    // eigensolver
    m.def(
        "eigh",
        [](const ComplexArray& a) {
            const SpectralDecomposition eig = hermitian_eigendecompose(matrix_from_array(a));
            return py::make_tuple(eig.eigenvalues, matrix_to_array(eig.eigenvectors));
        },
        py::arg("matrix"),
        "ascending eigenvalues and an eigenvector-column matrix of a Hermitian matrix");

    // spectral relations
    m.def("interlacing_check", &interlacing_check, py::arg("upper"), py::arg("lower"),
          py::arg("tol") = 1e-10);
    m.def("eigenvalue_gap_bound_check", &eigenvalue_gap_bound_check, py::arg("r"), py::arg("q"),
          py::arg("mean_norm_sq"), py::arg("tol") = 1e-10);
    m.def("eigenvector_error_direct", [](const ComplexArray& a, const ComplexArray& psi) {
        return eigenvector_error_direct(matrix_from_array(a), vector_from_array(psi));
    });
    m.def("eigenvector_error_closed_form", &eigenvector_error_closed_form,
          py::arg("mean_norm_sq"), py::arg("overlap_sq"));
    m.def(
        "diagonal_relation",
        [](const PureStateEnsemble& e, const ComplexArray& phi) {
            const auto rel = diagonal_relation(e, vector_from_array(phi));
            return py::make_tuple(rel.r_phi, rel.q_phi, rel.residual);
        },
        py::arg("ensemble"), py::arg("phi"));
    m.def(
        "weyl_rank_one_check",
        [](const ComplexArray& a, double b_eigenvalue, const ComplexArray& b_vector, double tol) {
            return weyl_rank_one_check(matrix_from_array(a), b_eigenvalue,
                                       vector_from_array(b_vector), tol);
        },
        py::arg("a"), py::arg("b_eigenvalue"), py::arg("b_vector"), py::arg("tol") = 1e-10);

    // qpca
    m.def(
        "fit",
        [](const PureStateEnsemble& e, std::size_t n, const std::string& source) {
            return fit(e, n, source_from_string(source));
        },
        py::arg("ensemble"), py::arg("n"), py::arg("source") = "ensemble_density");
    m.def(
        "project",
        [](const ComplexArray& psi, const PcaModel& model) {
            return vector_to_array(project(vector_from_array(psi), model));
        },
        py::arg("psi"), py::arg("model"));
    m.def(
        "infidelity",
        [](const ComplexArray& psi, const ComplexArray& projected) {
            return infidelity(vector_from_array(psi), vector_from_array(projected));
        },
        py::arg("psi"), py::arg("projected"));
    m.def("overlap_report", &overlap_report, py::arg("model_q"), py::arg("model_r"),
          py::arg("shift") = 1, py::arg("cluster_width") = 1e-9);
    m.def(
        "compression_curve",
        [](const PureStateEnsemble& e, const PcaModel& model,
           const std::vector<std::size_t>& n_values) {
            const CompressionCurve curve = compression_curve(e, model, n_values);
            return py::make_tuple(curve.n_values, curve.median_infidelity,
                                  curve.p90_infidelity);
        },
        py::arg("ensemble"), py::arg("model"), py::arg("n_values"));

    // variational costs
    m.def("dephase", [](const ComplexArray& rho) {
        return matrix_to_array(dephase(matrix_from_array(rho)));
    });
    m.def(
        "vqsd_cost_exact",
        [](const ComplexArray& u, const ComplexArray& rho) {
            return vqsd_cost_exact(matrix_from_array(u), matrix_from_array(rho));
        },
        py::arg("u"), py::arg("rho"));
    m.def(
        "vqse_cost_exact",
        [](const ComplexArray& v, const ComplexArray& rho, const VqseHamiltonian& h) {
            return vqse_cost_exact(matrix_from_array(v), matrix_from_array(rho), h);
        },
        py::arg("v"), py::arg("rho"), py::arg("hamiltonian"));
    m.def(
        "vqsd_cost_deterministic",
        [](const PureStateEnsemble& e, const ComplexArray& u) {
            return vqsd_cost_deterministic(e, matrix_from_array(u));
        },
        py::arg("ensemble"), py::arg("u"));
    m.def(
        "vqse_cost_deterministic",
        [](const PureStateEnsemble& e, const ComplexArray& v, const VqseHamiltonian& h) {
            return vqse_cost_deterministic(e, matrix_from_array(v), h);
        },
        py::arg("ensemble"), py::arg("v"), py::arg("hamiltonian"));
    m.def("sample_count_vqsd", &sample_count_vqsd, py::arg("epsilon"), py::arg("delta"));
    m.def("sample_count_vqse", &sample_count_vqse, py::arg("epsilon"), py::arg("delta"),
          py::arg("h_norm"));
    m.def(
        "vqsd_cost_sampled",
        [](const PureStateEnsemble& e, const ComplexArray& u, double epsilon, double delta,
           std::uint64_t seed, bool single_shot) {
            return vqsd_cost_sampled(e, matrix_from_array(u), epsilon, delta, seed, single_shot);
        },
        py::arg("ensemble"), py::arg("u"), py::arg("epsilon"), py::arg("delta"), py::arg("seed"),
        py::arg("single_shot") = false);
    m.def(
        "vqse_cost_sampled",
        [](const PureStateEnsemble& e, const ComplexArray& v, const VqseHamiltonian& h,
           double epsilon, double delta, std::uint64_t seed, bool single_shot) {
            return vqse_cost_sampled(e, matrix_from_array(v), h, epsilon, delta, seed,
                                     single_shot);
        },
        py::arg("ensemble"), py::arg("v"), py::arg("hamiltonian"), py::arg("epsilon"),
        py::arg("delta"), py::arg("seed"), py::arg("single_shot") = false);
    m.def(
        "optimize_diagonalization",
        [](const PureStateEnsemble& e, const std::string& cost, std::size_t max_passes,
           double tol, bool sampled, double epsilon, double delta, std::uint64_t seed,
           const std::optional<VqseHamiltonian>& hamiltonian) {
            OptimizeConfig config;
            config.max_passes = max_passes;
            config.tol = tol;
            config.sampled = sampled;
            config.epsilon = epsilon;
            config.delta = delta;
            config.seed = seed;
            config.hamiltonian = hamiltonian;
            const CostKind kind = cost == "vqse" ? CostKind::vqse : CostKind::vqsd;
            const OptimizeResult result = optimize_diagonalization(
                e, kind, RotationAnsatz::full_pairwise(e.dim()), config);
            return py::make_tuple(matrix_to_array(result.ansatz.realize(e.dim())),
                                  result.cost_trace);
        },
        py::arg("ensemble"), py::arg("cost") = "vqsd", py::arg("max_passes") = 60,
        py::arg("tol") = 1e-10, py::arg("sampled") = false, py::arg("epsilon") = 0.05,
        py::arg("delta") = 0.05, py::arg("seed") = 1,
        py::arg("hamiltonian") = std::nullopt,
        "returns (diagonalizing unitary, exact cost trace)");
    m.def(
        "rotated_diagonal",
        [](const ComplexArray& u, const ComplexArray& rho) {
            return rotated_diagonal(matrix_from_array(u), matrix_from_array(rho));
        },
        py::arg("u"), py::arg("rho"));

    // generators and serialization
    m.def(
        "bars_and_stripes",
        [](std::size_t n, bool include_uniform) {
            return raw_to_array(bars_and_stripes(n, include_uniform));
        },
        py::arg("n"), py::arg("include_uniform") = false);
    m.def(
        "gaussian_clusters",
        [](std::size_t dim, std::size_t num_clusters, std::size_t per_cluster,
           double center_offset, double center_scale, double noise_sigma, std::uint64_t seed) {
            return raw_to_array(gaussian_clusters(dim, num_clusters, per_cluster, center_offset,
                                                  center_scale, noise_sigma, seed));
        },
        py::arg("dim"), py::arg("num_clusters"), py::arg("per_cluster"),
        py::arg("center_offset") = 1.0, py::arg("center_scale") = 0.5,
        py::arg("noise_sigma") = 0.08, py::arg("seed") = 1);
    m.def(
        "random_phase_family",
        [](std::size_t dim, std::size_t num_points, double r_min, double r_max,
           std::uint64_t seed, bool randomize_global_phase) {
            SurrogateFamilyConfig config;
            config.dim = dim;
            config.num_points = num_points;
            config.r_min = r_min;
            config.r_max = r_max;
            config.seed = seed;
            config.randomize_global_phase = randomize_global_phase;
            return random_phase_family(config).ensemble;
        },
        py::arg("dim") = 64, py::arg("num_points") = 401, py::arg("r_min") = 0.3,
        py::arg("r_max") = 2.3, py::arg("seed") = 1, py::arg("randomize_global_phase") = true);
    m.def("write_ensemble", &write_ensemble, py::arg("path"), py::arg("ensemble"));
    m.def("read_ensemble", &read_ensemble, py::arg("path"));
}
