// qcovpca command-line front end: generate/ingest -> encode -> moments ->
// spectral reports -> compression curves -> variational cost runs.
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcovpca/dataio.hpp"
#include "qcovpca/dataset.hpp"
#include "qcovpca/eig.hpp"
#include "qcovpca/moments.hpp"
#include "qcovpca/qpca.hpp"
#include "qcovpca/report.hpp"
#include "qcovpca/spectral.hpp"
#include "qcovpca/varcost.hpp"

namespace {

using nlohmann::json;
using namespace qcovpca;

constexpr const char* kToolVersion = "0.1.0";
constexpr int kManifestSchemaVersion = 1;

std::string default_out_dir() {
    const char* env = std::getenv("QCOVPCA_OUT_DIR");
    return env && *env ? env : ".";
}

std::filesystem::path ensure_out_dir(const std::string& dir) {
    std::filesystem::path p(dir);
    std::filesystem::create_directories(p);
    return p;
}

void write_manifest(const std::filesystem::path& dir, const std::string& command,
                    const json& parameters) {
    json manifest = {
        {"schema_version", kManifestSchemaVersion},
        {"tool", "qcovpca"},
        {"tool_version", kToolVersion},
        {"command", command},
        {"parameters", parameters},
    };
    std::ofstream out(dir / "manifest.json");
    if (!out) throw DataError("cannot write manifest in " + dir.string());
    out << manifest.dump(2) << '\n';
}

std::size_t next_power_of_two(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

std::vector<std::size_t> parse_n_list(const std::string& text) {
    std::vector<std::size_t> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        values.push_back(static_cast<std::size_t>(std::stoul(item)));
    }
    if (values.empty()) throw CLI::ValidationError("--n-list", "no component counts given");
    return values;
}

// ---------------------------------------------------------------- encode

struct EncodeOptions {
    std::string input;
    std::string out_dir = default_out_dir();
    std::string name = "ensemble.qce";
    std::size_t dim = 0;  // 0 = automatic
    bool qubits = false;
};

void run_encode(const EncodeOptions& opt) {
    const auto rows = read_numeric_csv(opt.input);
    std::vector<ComplexVector> vectors;
    vectors.reserve(rows.size());
    for (const auto& row : rows) {
        ComplexVector v(row.size());
        for (std::size_t j = 0; j < row.size(); ++j) v[j] = cplx{row[j], 0.0};
        vectors.push_back(std::move(v));
    }
    RawDataset raw(std::move(vectors));
    std::size_t dim = opt.dim;
    if (dim == 0) dim = opt.qubits ? next_power_of_two(raw.feature_dim()) : raw.feature_dim();

    const PureStateEnsemble ensemble = amplitude_encode(raw, dim);
    const auto dir = ensure_out_dir(opt.out_dir);
    write_ensemble((dir / opt.name).string(), ensemble);
    write_manifest(dir, "encode",
                   {{"input", opt.input},
                    {"dim", dim},
                    {"qubits", opt.qubits},
                    {"name", opt.name},
                    {"count", ensemble.size()}});
    std::cout << "encoded " << ensemble.size() << " vectors into dim " << dim << " -> "
              << (dir / opt.name).string() << '\n';
}

// -------------------------------------------------------------- generate

struct GenerateCommon {
    std::string out_dir = default_out_dir();
    std::string name = "ensemble.qce";
    std::size_t dim = 0;  // 0 = next power of two over the feature length
};

void emit_generated(const GenerateCommon& common, const std::string& family,
                    const RawDataset& raw, json parameters) {
    const std::size_t dim =
        common.dim == 0 ? next_power_of_two(raw.feature_dim()) : common.dim;
    const PureStateEnsemble ensemble = amplitude_encode(raw, dim);
    const auto dir = ensure_out_dir(common.out_dir);
    write_ensemble((dir / common.name).string(), ensemble);
    parameters["family"] = family;
    parameters["dim"] = dim;
    parameters["count"] = ensemble.size();
    parameters["name"] = common.name;
    write_manifest(dir, "generate", parameters);
    std::cout << "generated " << family << ": " << ensemble.size() << " states of dim " << dim
              << " -> " << (dir / common.name).string() << '\n';
}

// --------------------------------------------------------------- moments

struct MomentsOptions {
    std::string ensemble;
    std::string out_dir = default_out_dir();
};

void run_moments(const MomentsOptions& opt) {
    const PureStateEnsemble e = read_ensemble(opt.ensemble);
    const MomentSet ms = compute_moments(e);
    const auto q_eig = hermitian_eigendecompose(ms.covariance);
    const auto r_eig = hermitian_eigendecompose(ms.ensemble_density);

    std::vector<ReportRow> rows;
    rows.push_back({"mean_norm_sq", 0, ms.mean.norm_sq()});
    rows.push_back({"trace_density", 0, trace(ms.ensemble_density).real()});
    rows.push_back({"identity_residual", 0,
                    frobenius_distance(ms.ensemble_density, ms.covariance + ms.mean_outer)});
    rows.push_back({"min_covariance_eigenvalue", 0, q_eig.eigenvalues.front()});
    const std::size_t d = e.dim();
    for (std::size_t j = 0; j < d; ++j) {
        rows.push_back({"eigenvalue_q", static_cast<std::int64_t>(j), q_eig.eigenvalues[j]});
        rows.push_back({"eigenvalue_r", static_cast<std::int64_t>(j), r_eig.eigenvalues[j]});
    }
    const auto dir = ensure_out_dir(opt.out_dir);
    write_report_csv((dir / "moments.csv").string(), rows);
    write_manifest(dir, "moments", {{"ensemble", opt.ensemble}, {"dim", d}, {"count", e.size()}});
    std::cout << "moments: |mu|^2 = " << ms.mean.norm_sq()
              << ", ||rho - Q - M||_F = " << rows[2].value << " -> "
              << (dir / "moments.csv").string() << '\n';
}

// --------------------------------------------------------------- compare

struct CompareOptions {
    std::string ensemble;
    std::string out_dir = default_out_dir();
    std::size_t n = 20;
    std::size_t shift = 1;
    double tol = 1e-10;
    bool svg = false;
};

void run_compare(const CompareOptions& opt) {
    const PureStateEnsemble e = read_ensemble(opt.ensemble);
    const std::size_t d = e.dim();
    const MomentSet ms = compute_moments(e);
    const auto q_eig = hermitian_eigendecompose(ms.covariance);
    const auto r_eig = hermitian_eigendecompose(ms.ensemble_density);

    const std::size_t listed = std::min(opt.n, d > opt.shift ? d - opt.shift : 0);
    const PcaModel model_q = fit(e, std::min(d, listed + opt.shift), PcaSource::covariance);
    const PcaModel model_r = fit(e, std::min(d, listed + opt.shift), PcaSource::ensemble_density);
    const auto overlaps = overlap_report(model_q, model_r, opt.shift);

    std::vector<ReportRow> rows;
    rows.push_back({"mean_norm_sq", 0, ms.mean.norm_sq()});
    for (std::size_t j = 0; j < listed; ++j) {
        rows.push_back({"eigenvalue_q", static_cast<std::int64_t>(j),
                        q_eig.eigenvalues[d - 1 - j]});
        rows.push_back({"eigenvalue_r_shifted", static_cast<std::int64_t>(j),
                        r_eig.eigenvalues[d - 1 - j - opt.shift]});
    }
    for (std::size_t j = 0; j < overlaps.size() && j < listed; ++j) {
        rows.push_back({"overlap", static_cast<std::int64_t>(j), overlaps[j]});
    }
    // eigenvector errors of the leading density-matrix components against Q
    for (std::size_t j = 0; j < listed; ++j) {
        const auto rep =
            eigenvector_error_report(ms.covariance, r_eig.eigenvector(d - 1 - j), ms.mean);
        rows.push_back({"evec_error_direct", static_cast<std::int64_t>(j), rep.direct_error});
        rows.push_back({"evec_error_closed", static_cast<std::int64_t>(j),
                        rep.closed_form_error});
    }
    const auto interlacing = interlacing_check(r_eig.eigenvalues, q_eig.eigenvalues, opt.tol);
    rows.push_back({"interlacing_satisfied", 0, interlacing.satisfied ? 1.0 : 0.0});
    rows.push_back({"interlacing_max_violation", 0, interlacing.max_violation});
    for (std::size_t j = 0; j < d; ++j) {
        rows.push_back({"interlacing_gap", static_cast<std::int64_t>(j),
                        interlacing.per_index_gaps[j]});
    }

    const auto dir = ensure_out_dir(opt.out_dir);
    write_report_csv((dir / "compare.csv").string(), rows);
    if (opt.svg) {
        PlotSeries sq{"q_{d-j}", {}, {}};
        PlotSeries sr{"r_{d-j-shift}", {}, {}};
        PlotSeries so{"overlap", {}, {}};
        PlotSeries se{"evec_error_direct", {}, {}};
        for (std::size_t j = 0; j < listed; ++j) {
            const double x = static_cast<double>(j);
            sq.x.push_back(x);
            sq.y.push_back(q_eig.eigenvalues[d - 1 - j]);
            sr.x.push_back(x);
            sr.y.push_back(r_eig.eigenvalues[d - 1 - j - opt.shift]);
            if (j < overlaps.size()) {
                so.x.push_back(x);
                so.y.push_back(overlaps[j]);
            }
        }
        for (const auto& row : rows) {
            if (row.quantity == "evec_error_direct") {
                se.x.push_back(static_cast<double>(row.index));
                se.y.push_back(row.value);
            }
        }
        write_svg_plot((dir / "compare_eigenvalues.svg").string(), "leading eigenvalues", "j",
                       "eigenvalue", {sq, sr});
        write_svg_plot((dir / "compare_overlaps.svg").string(), "component overlaps", "j",
                       "|<Q|R>|^2", {so});
        write_svg_plot((dir / "compare_errors.svg").string(), "eigenvector errors", "j",
                       "error", {se});
    }
    write_manifest(dir, "compare",
                   {{"ensemble", opt.ensemble},
                    {"n", opt.n},
                    {"shift", opt.shift},
                    {"tol", opt.tol},
                    {"svg", opt.svg}});
    std::cout << "compare: " << listed << " leading components, interlacing "
              << (interlacing.satisfied ? "satisfied" : "violated") << " -> "
              << (dir / "compare.csv").string() << '\n';
}

// ----------------------------------------------------------------- curve

struct CurveOptions {
    std::string ensemble;
    std::string out_dir = default_out_dir();
    std::string source = "both";
    std::string n_list = "1,2,4,8";
    bool svg = false;
};

void run_curve(const CurveOptions& opt) {
    const PureStateEnsemble e = read_ensemble(opt.ensemble);
    const std::vector<std::size_t> n_values = parse_n_list(opt.n_list);
    const std::size_t d = e.dim();
    std::size_t max_n = 0;
    for (std::size_t n : n_values) max_n = std::max(max_n, n);
    if (max_n > d) {
        throw NTooLarge("curve: component count " + std::to_string(max_n) + " exceeds dim " +
                        std::to_string(d));
    }

    std::vector<ReportRow> rows;
    std::vector<PlotSeries> series;
    const auto add_source = [&](PcaSource source, const std::string& tag) {
        const PcaModel model = fit(e, max_n, source);
        const CompressionCurve curve = compression_curve(e, model, n_values);
        PlotSeries med{"median_" + tag, {}, {}};
        PlotSeries p90{"p90_" + tag, {}, {}};
        for (std::size_t i = 0; i < n_values.size(); ++i) {
            rows.push_back({"median_infidelity_" + tag,
                            static_cast<std::int64_t>(n_values[i]),
                            curve.median_infidelity[i]});
            rows.push_back({"p90_infidelity_" + tag, static_cast<std::int64_t>(n_values[i]),
                            curve.p90_infidelity[i]});
            med.x.push_back(static_cast<double>(n_values[i]));
            med.y.push_back(curve.median_infidelity[i]);
            p90.x.push_back(static_cast<double>(n_values[i]));
            p90.y.push_back(curve.p90_infidelity[i]);
        }
        series.push_back(std::move(med));
        series.push_back(std::move(p90));
    };
    if (opt.source == "covariance" || opt.source == "both") {
        add_source(PcaSource::covariance, "covariance");
    }
    if (opt.source == "ensemble-density" || opt.source == "both") {
        add_source(PcaSource::ensemble_density, "ensemble_density");
    }

    const auto dir = ensure_out_dir(opt.out_dir);
    write_report_csv((dir / "curve.csv").string(), rows);
    if (opt.svg) {
        write_svg_plot((dir / "curve.svg").string(), "compression infidelity", "n",
                       "infidelity", series);
    }
    write_manifest(dir, "curve",
                   {{"ensemble", opt.ensemble},
                    {"source", opt.source},
                    {"n_list", opt.n_list},
                    {"svg", opt.svg}});
    std::cout << "curve: " << rows.size() << " rows -> " << (dir / "curve.csv").string() << '\n';
}

// --------------------------------------------------------------- varcost

struct VarcostOptions {
    std::string ensemble;
    std::string out_dir = default_out_dir();
    std::string cost = "vqsd";
    std::string mode = "exact";
    double epsilon = 0.05;
    double delta = 0.05;
    std::uint64_t seed = 1;
    std::size_t passes = 60;
    std::size_t levels = 3;
    bool single_shot = false;
};

void run_varcost(const VarcostOptions& opt) {
    const PureStateEnsemble e = read_ensemble(opt.ensemble);
    const std::size_t d = e.dim();
    const CostKind kind = opt.cost == "vqse" ? CostKind::vqse : CostKind::vqsd;

    OptimizeConfig config;
    config.max_passes = opt.passes;
    config.sampled = opt.mode == "sampled";
    config.epsilon = opt.epsilon;
    config.delta = opt.delta;
    config.seed = opt.seed;
    config.single_shot = opt.single_shot;
    if (kind == CostKind::vqse) {
        const std::size_t m = std::min(opt.levels, d);
        std::vector<double> weights(m);
        std::vector<std::size_t> indices(m);
        for (std::size_t i = 0; i < m; ++i) {
            weights[i] = static_cast<double>(m - i) / static_cast<double>(m);
            indices[i] = i;
        }
        config.hamiltonian = VqseHamiltonian(d, weights, indices);
    }

    const OptimizeResult result =
        optimize_diagonalization(e, kind, RotationAnsatz::full_pairwise(d), config);

    const ComplexMatrix rho = ensemble_density(e);
    const std::vector<double> recovered = rotated_diagonal(result.ansatz.realize(d), rho);
    const std::vector<double> reference = hermitian_eigendecompose(rho).eigenvalues;

    std::vector<ReportRow> rows;
    for (std::size_t p = 0; p < result.cost_trace.size(); ++p) {
        rows.push_back({"cost", static_cast<std::int64_t>(p), result.cost_trace[p]});
    }
    for (std::size_t j = 0; j < d; ++j) {
        rows.push_back({"eigenvalue_recovered", static_cast<std::int64_t>(j), recovered[j]});
        rows.push_back({"eigenvalue_reference", static_cast<std::int64_t>(j), reference[j]});
    }
    const auto dir = ensure_out_dir(opt.out_dir);
    write_report_csv((dir / "varcost.csv").string(), rows);

    json params = {{"ensemble", opt.ensemble}, {"cost", opt.cost},
                   {"mode", opt.mode},         {"epsilon", opt.epsilon},
                   {"delta", opt.delta},       {"seed", opt.seed},
                   {"passes", opt.passes},     {"single_shot", opt.single_shot},
                   {"samples_total", result.samples_used}};
    if (config.sampled) {
        params["samples_per_estimate"] =
            kind == CostKind::vqsd
                ? sample_count_vqsd(opt.epsilon, opt.delta)
                : sample_count_vqse(opt.epsilon, opt.delta, config.hamiltonian->infinity_norm());
    }
    if (kind == CostKind::vqse) params["levels"] = opt.levels;
    write_manifest(dir, "varcost", params);
    std::cout << "varcost " << opt.cost << " (" << opt.mode << "): cost "
              << result.cost_trace.front() << " -> " << result.cost_trace.back() << " in "
              << result.passes << " passes -> " << (dir / "varcost.csv").string() << '\n';
    if (!result.improved && result.cost_trace.front() > 1e-12) {
        std::cout << "note: no improvement found from the initial parameters\n";
    }
}

// --------------------------------------------------------------- idx-dump

struct IdxDumpOptions {
    std::string input;
    std::string out_dir = default_out_dir();
    std::size_t limit = 16;
};

void run_idx_dump(const IdxDumpOptions& opt) {
    const IdxTensor tensor = read_idx_file(opt.input);
    std::cout << "idx type 0x" << std::hex << static_cast<int>(tensor.element_type) << std::dec
              << ", rank " << tensor.dims.size() << ", dims (";
    for (std::size_t i = 0; i < tensor.dims.size(); ++i) {
        std::cout << tensor.dims[i] << (i + 1 < tensor.dims.size() ? ", " : "");
    }
    std::cout << "), " << tensor.element_count() << " elements\n";
    const std::size_t show = std::min(opt.limit, tensor.element_count());
    for (std::size_t i = 0; i < show; ++i) {
        std::cout << tensor.element_as_double(i) << (i + 1 < show ? ' ' : '\n');
    }
    write_manifest(ensure_out_dir(opt.out_dir), "idx-dump",
                   {{"input", opt.input}, {"limit", opt.limit}});
}

void print_error_json(const char* kind, const std::string& message) {
    json err = {{"error", kind}, {"message", message}};
    std::cerr << err.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"covariance-matrix preparation and quantum-PCA pipeline"};
    app.require_subcommand(1);

    EncodeOptions encode_opt;
    auto* encode = app.add_subcommand("encode", "amplitude-encode a CSV of feature vectors");
    encode->add_option("--input", encode_opt.input, "CSV file, one vector per row")->required();
    encode->add_option("--dim", encode_opt.dim, "target dimension (0 = automatic)");
    encode->add_flag("--qubits", encode_opt.qubits, "require a power-of-two dimension");
    encode->add_option("--out-dir", encode_opt.out_dir, "output directory");
    encode->add_option("--name", encode_opt.name, "ensemble file name");
    encode->callback([&] {
        if (encode_opt.qubits && encode_opt.dim != 0 && !is_power_of_two(encode_opt.dim)) {
            throw CLI::ValidationError("--dim", "must be a power of two with --qubits");
        }
        run_encode(encode_opt);
    });

    auto* generate = app.add_subcommand("generate", "synthesize a dataset and encode it");
    generate->require_subcommand(1);
    GenerateCommon gen_common;

    std::size_t bas_side = 4;
    bool bas_uniform = false;
    auto* bas = generate->add_subcommand("bars-and-stripes", "binary bars/stripes patterns");
    bas->add_option("--side", bas_side, "grid side length")->check(CLI::PositiveNumber);
    bas->add_flag("--include-uniform", bas_uniform, "include the all-zero/all-one patterns");
    bas->callback([&] {
        emit_generated(gen_common, "bars-and-stripes", bars_and_stripes(bas_side, bas_uniform),
                       {{"side", bas_side}, {"include_uniform", bas_uniform}});
    });

    std::size_t g_dim = 64, g_clusters = 10, g_per = 50;
    double g_offset = 1.0, g_scale = 0.5, g_noise = 0.08;
    std::uint64_t g_seed = 1;
    auto* gauss = generate->add_subcommand("gaussian", "Gaussian clusters with nonnegative centers");
    gauss->add_option("--dim", g_dim)->check(CLI::PositiveNumber);
    gauss->add_option("--clusters", g_clusters)->check(CLI::PositiveNumber);
    gauss->add_option("--per-cluster", g_per)->check(CLI::PositiveNumber);
    gauss->add_option("--center-offset", g_offset);
    gauss->add_option("--center-scale", g_scale);
    gauss->add_option("--noise", g_noise);
    gauss->add_option("--seed", g_seed);
    gauss->callback([&] {
        emit_generated(gen_common, "gaussian",
                       gaussian_clusters(g_dim, g_clusters, g_per, g_offset, g_scale, g_noise,
                                         g_seed),
                       {{"clusters", g_clusters},
                        {"per_cluster", g_per},
                        {"center_offset", g_offset},
                        {"center_scale", g_scale},
                        {"noise", g_noise},
                        {"seed", g_seed}});
    });

    SurrogateFamilyConfig s_config;
    bool s_no_phase = false;
    auto* surrogate = generate->add_subcommand("surrogate",
                                               "ground states of a one-parameter Hamiltonian family");
    surrogate->add_option("--dim", s_config.dim)->check(CLI::PositiveNumber);
    surrogate->add_option("--points", s_config.num_points)->check(CLI::PositiveNumber);
    surrogate->add_option("--r-min", s_config.r_min);
    surrogate->add_option("--r-max", s_config.r_max);
    surrogate->add_option("--seed", s_config.seed);
    surrogate->add_flag("--no-random-phase", s_no_phase, "keep deterministic global phases");
    surrogate->callback([&] {
        s_config.randomize_global_phase = !s_no_phase;
        const RandomPhaseFamily family = random_phase_family(s_config);
        if (!family.degenerate_points.empty()) {
            std::cout << "note: " << family.degenerate_points.size()
                      << " points had a near-degenerate ground state\n";
        }
        const auto dir = ensure_out_dir(gen_common.out_dir);
        write_ensemble((dir / gen_common.name).string(), family.ensemble);
        write_manifest(dir, "generate",
                       {{"family", "surrogate"},
                        {"dim", s_config.dim},
                        {"points", s_config.num_points},
                        {"r_min", s_config.r_min},
                        {"r_max", s_config.r_max},
                        {"seed", s_config.seed},
                        {"random_phase", s_config.randomize_global_phase},
                        {"degenerate_points", family.degenerate_points.size()},
                        {"name", gen_common.name}});
        std::cout << "generated surrogate: " << family.ensemble.size() << " states of dim "
                  << s_config.dim << " -> " << (dir / gen_common.name).string() << '\n';
    });

    for (auto* sub : {bas, gauss, surrogate}) {
        sub->add_option("--out-dir", gen_common.out_dir, "output directory");
        sub->add_option("--name", gen_common.name, "ensemble file name");
        sub->add_option("--encode-dim", gen_common.dim,
                        "amplitude-encoding dimension (0 = next power of two)");
    }

    MomentsOptions moments_opt;
    auto* moments_cmd = app.add_subcommand("moments", "mean, covariance and density summaries");
    moments_cmd->add_option("--ensemble", moments_opt.ensemble, "ensemble file")->required();
    moments_cmd->add_option("--out-dir", moments_opt.out_dir, "output directory");
    moments_cmd->callback([&] { run_moments(moments_opt); });

    CompareOptions compare_opt;
    auto* compare_cmd = app.add_subcommand("compare", "PCA vs quantum-PCA spectral reports");
    compare_cmd->add_option("--ensemble", compare_opt.ensemble, "ensemble file")->required();
    compare_cmd->add_option("--n", compare_opt.n, "leading components to list");
    compare_cmd->add_option("--shift", compare_opt.shift, "index shift between q and r columns");
    compare_cmd->add_option("--tol", compare_opt.tol, "interlacing tolerance");
    compare_cmd->add_flag("--svg", compare_opt.svg, "write SVG plots");
    compare_cmd->add_option("--out-dir", compare_opt.out_dir, "output directory");
    compare_cmd->callback([&] { run_compare(compare_opt); });

    CurveOptions curve_opt;
    auto* curve_cmd = app.add_subcommand("curve", "compression-infidelity curves");
    curve_cmd->add_option("--ensemble", curve_opt.ensemble, "ensemble file")->required();
    curve_cmd->add_option("--source", curve_opt.source, "covariance | ensemble-density | both")
        ->check(CLI::IsMember({"covariance", "ensemble-density", "both"}));
    curve_cmd->add_option("--n-list", curve_opt.n_list, "comma-separated component counts");
    curve_cmd->add_flag("--svg", curve_opt.svg, "write an SVG plot");
    curve_cmd->add_option("--out-dir", curve_opt.out_dir, "output directory");
    curve_cmd->callback([&] { run_curve(curve_opt); });

    VarcostOptions varcost_opt;
    auto* varcost_cmd = app.add_subcommand("varcost", "variational diagonalization runs");
    varcost_cmd->add_option("--ensemble", varcost_opt.ensemble, "ensemble file")->required();
    varcost_cmd->add_option("--cost", varcost_opt.cost, "vqsd | vqse")
        ->check(CLI::IsMember({"vqsd", "vqse"}));
    varcost_cmd->add_option("--mode", varcost_opt.mode, "exact | sampled")
        ->check(CLI::IsMember({"exact", "sampled"}));
    varcost_cmd->add_option("--epsilon", varcost_opt.epsilon, "target accuracy")
        ->check(CLI::PositiveNumber);
    varcost_cmd->add_option("--delta", varcost_opt.delta, "confidence parameter")
        ->check(CLI::Range(1e-12, 0.9999));
    varcost_cmd->add_option("--seed", varcost_opt.seed, "run seed");
    varcost_cmd->add_option("--passes", varcost_opt.passes, "maximum optimizer passes");
    varcost_cmd->add_option("--levels", varcost_opt.levels, "targeted VQSE levels");
    varcost_cmd->add_flag("--single-shot", varcost_opt.single_shot,
                          "one-shot sampling of each cost term");
    varcost_cmd->add_option("--out-dir", varcost_opt.out_dir, "output directory");
    varcost_cmd->callback([&] { run_varcost(varcost_opt); });

    IdxDumpOptions idx_opt;
    auto* idx_cmd = app.add_subcommand("idx-dump", "inspect an IDX binary file");
    idx_cmd->add_option("--input", idx_opt.input, "IDX file")->required();
    idx_cmd->add_option("--limit", idx_opt.limit, "elements to print");
    idx_cmd->add_option("--out-dir", idx_opt.out_dir, "output directory");
    idx_cmd->callback([&] { run_idx_dump(idx_opt); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const NumericalError& e) {
        print_error_json(e.kind(), e.what());
        return 4;
    } catch (const DataError& e) {
        print_error_json(e.kind(), e.what());
        return 3;
    } catch (const Error& e) {
        print_error_json(e.kind(), e.what());
        return 3;
    } catch (const std::exception& e) {
        print_error_json("internal", e.what());
        return 4;
    }
    return 0;
}
