#include "qcovpca/dataio.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qcovpca/eig.hpp"
#include "qcovpca/rng.hpp"

namespace qcovpca {

namespace {

constexpr char kEnsembleMagic[8] = {'Q', 'C', 'P', 'C', 'A', 'E', 'N', 'S'};
constexpr std::uint32_t kEnsembleVersion = 1;

std::size_t idx_type_size(std::uint8_t code) {
    switch (code) {
        case 0x08:
        case 0x09:
            return 1;
        case 0x0B:
            return 2;
        case 0x0C:
        case 0x0D:
            return 4;
        case 0x0E:
            return 8;
        default:
            throw UnsupportedType("IDX type code " + std::to_string(code) + " not supported");
    }
}

std::uint32_t read_be32(const std::uint8_t* p) {
    return (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) |
           (std::uint32_t(p[2]) << 8) | std::uint32_t(p[3]);
}

void append_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

void append_le64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t read_le64(const std::uint8_t* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(p[i]) << (8 * i);
    return v;
}

void append_f64(std::vector<std::uint8_t>& out, double x) {
    append_le64(out, std::bit_cast<std::uint64_t>(x));
}

double read_f64(const std::uint8_t* p) { return std::bit_cast<double>(read_le64(p)); }

}  // namespace

std::size_t IdxTensor::element_size() const { return idx_type_size(element_type); }

std::size_t IdxTensor::element_count() const {
    std::size_t n = 1;
    for (std::uint32_t d : dims) n *= d;
    return dims.empty() ? 0 : n;
}

double IdxTensor::element_as_double(std::size_t index) const {
    const std::size_t sz = element_size();
    const std::uint8_t* p = payload.data() + index * sz;
    switch (element_type) {
        case 0x08:
            return static_cast<double>(*p);
        case 0x09:
            return static_cast<double>(static_cast<std::int8_t>(*p));
        case 0x0B: {
            const std::uint16_t v = (std::uint16_t(p[0]) << 8) | p[1];
            return static_cast<double>(static_cast<std::int16_t>(v));
        }
        case 0x0C:
            return static_cast<double>(static_cast<std::int32_t>(read_be32(p)));
        case 0x0D: {
            const std::uint32_t v = read_be32(p);
            return static_cast<double>(std::bit_cast<float>(v));
        }
        case 0x0E: {
            std::uint64_t v = 0;
            for (int i = 0; i < 8; ++i) v = (v << 8) | p[i];
            return std::bit_cast<double>(v);
        }
        default:
            throw UnsupportedType("IDX type code not supported");
    }
}

IdxTensor parse_idx(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 4) throw BadMagic("IDX stream shorter than the 4-byte magic");
    if (bytes[0] != 0 || bytes[1] != 0) {
        throw BadMagic("IDX magic must start with two zero bytes");
    }
    IdxTensor tensor;
    tensor.element_type = bytes[2];
    const std::size_t elem_size = idx_type_size(tensor.element_type);  // may throw
    const std::size_t rank = bytes[3];
    const std::size_t header = 4 + 4 * rank;
    if (bytes.size() < header) throw TruncatedPayload("IDX header truncated");
    std::size_t count = 1;
    for (std::size_t i = 0; i < rank; ++i) {
        tensor.dims.push_back(read_be32(bytes.data() + 4 + 4 * i));
        count *= tensor.dims.back();
    }
    if (rank == 0) count = 0;
    const std::size_t expected = header + count * elem_size;
    if (bytes.size() < expected) {
        throw TruncatedPayload("IDX payload truncated: expected " + std::to_string(expected) +
                               " bytes, got " + std::to_string(bytes.size()));
    }
    tensor.payload.assign(bytes.begin() + header, bytes.begin() + expected);
    return tensor;
}

std::vector<std::uint8_t> write_idx(const IdxTensor& tensor) {
    idx_type_size(tensor.element_type);  // validate
    if (tensor.dims.size() > 255) throw OutOfRange("IDX rank exceeds 255");
    std::vector<std::uint8_t> out;
    out.push_back(0);
    out.push_back(0);
    out.push_back(tensor.element_type);
    out.push_back(static_cast<std::uint8_t>(tensor.dims.size()));
    for (std::uint32_t d : tensor.dims) append_be32(out, d);
    if (tensor.payload.size() != tensor.element_count() * tensor.element_size()) {
        throw TruncatedPayload("IDX payload size does not match the declared dims");
    }
    out.insert(out.end(), tensor.payload.begin(), tensor.payload.end());
    return out;
}

IdxTensor read_idx_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return parse_idx(bytes);
}

void write_idx_file(const std::string& path, const IdxTensor& tensor) {
    const std::vector<std::uint8_t> bytes = write_idx(tensor);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

RawDataset load_mnist(const IdxTensor& images, const IdxTensor& labels,
                      std::size_t per_class, std::uint64_t seed) {
    if (images.dims.size() != 3) throw DataError("load_mnist: image tensor must have rank 3");
    if (labels.dims.size() != 1) throw DataError("load_mnist: label tensor must have rank 1");
    if (images.element_type != 0x08 || labels.element_type != 0x08) {
        throw UnsupportedType("load_mnist: expected unsigned-byte tensors");
    }
    const std::size_t count = images.dims[0];
    if (labels.dims[0] != count) {
        throw DataError("load_mnist: image and label counts differ");
    }
    const std::size_t pixels = std::size_t{images.dims[1]} * images.dims[2];

    std::vector<std::vector<std::size_t>> by_class(10);
    for (std::size_t i = 0; i < count; ++i) {
        const auto digit = static_cast<std::size_t>(labels.payload[i]);
        if (digit > 9) throw DataError("load_mnist: label outside 0..9");
        by_class[digit].push_back(i);
    }

    Rng rng(seed);
    std::vector<ComplexVector> vectors;
    vectors.reserve(10 * per_class);
    for (std::size_t digit = 0; digit < 10; ++digit) {
        auto& pool = by_class[digit];
        if (pool.size() < per_class) {
            throw NotEnoughInstances("load_mnist: class " + std::to_string(digit) + " has " +
                                     std::to_string(pool.size()) + " < " +
                                     std::to_string(per_class) + " instances");
        }
        // Fisher-Yates prefix shuffle, then keep the selection in file order
        for (std::size_t k = 0; k < per_class; ++k) {
            const std::size_t swap_with = k + rng.below(pool.size() - k);
            std::swap(pool[k], pool[swap_with]);
        }
        std::vector<std::size_t> picked(pool.begin(), pool.begin() + per_class);
        std::sort(picked.begin(), picked.end());
        for (const std::size_t idx : picked) {
            ComplexVector v(pixels);
            const std::uint8_t* base = images.payload.data() + idx * pixels;
            for (std::size_t j = 0; j < pixels; ++j) {
                v[j] = cplx{static_cast<double>(base[j]) / 255.0, 0.0};
            }
            vectors.push_back(std::move(v));
        }
    }
    return RawDataset(std::move(vectors));
}

RawDataset bars_and_stripes(std::size_t n, bool include_uniform) {
    if (n < 1) throw OutOfRange("bars_and_stripes: grid side must be positive");
    const std::size_t total = std::size_t{1} << n;
    std::vector<ComplexVector> vectors;
    const auto emit = [&](bool rows_constant, std::size_t bits) {
        ComplexVector img(n * n);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                const std::size_t which = rows_constant ? r : c;
                img[r * n + c] = cplx{(bits >> which) & 1 ? 1.0 : 0.0, 0.0};
            }
        }
        vectors.push_back(std::move(img));
    };
    for (std::size_t bits = 1; bits + 1 < total; ++bits) emit(true, bits);   // stripes
    for (std::size_t bits = 1; bits + 1 < total; ++bits) emit(false, bits);  // bars
    if (include_uniform) {
        emit(true, 0);
        emit(true, total - 1);
    }
    if (vectors.empty()) {
        throw OutOfRange("bars_and_stripes: no patterns (n = 1 without uniform patterns)");
    }
    return RawDataset(std::move(vectors));
}

RawDataset gaussian_clusters(std::size_t dim, std::size_t num_clusters,
                             std::size_t per_cluster, double center_offset,
                             double center_scale, double noise_sigma, std::uint64_t seed) {
    if (dim == 0 || num_clusters == 0 || per_cluster == 0) {
        throw OutOfRange("gaussian_clusters: dim, clusters and per_cluster must be positive");
    }
    Rng rng(seed);
    std::vector<std::vector<double>> centers(num_clusters, std::vector<double>(dim));
    for (auto& c : centers) {
        for (double& x : c) x = center_offset + center_scale * std::abs(rng.normal());
    }
    std::vector<ComplexVector> vectors;
    vectors.reserve(num_clusters * per_cluster);
    for (std::size_t k = 0; k < num_clusters; ++k) {
        for (std::size_t i = 0; i < per_cluster; ++i) {
            ComplexVector v(dim);
            for (std::size_t j = 0; j < dim; ++j) {
                v[j] = cplx{centers[k][j] + noise_sigma * rng.normal(), 0.0};
            }
            vectors.push_back(std::move(v));
        }
    }
    return RawDataset(std::move(vectors));
}

namespace {

ComplexMatrix random_hermitian(std::size_t dim, Rng& rng) {
    ComplexMatrix a(dim);
    constexpr double inv_sqrt2 = 0.7071067811865476;
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            a(i, j) = cplx{rng.normal(), rng.normal()} * inv_sqrt2;
        }
    }
    return hermitian_part(a);
}

void canonicalize_state_phase(ComplexVector& v) {
    std::size_t arg_max = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < v.dim(); ++i) {
        if (std::abs(v[i]) > best) {
            best = std::abs(v[i]);
            arg_max = i;
        }
    }
    if (best > 0.0) v *= std::conj(v[arg_max]) / best;
}

}  // namespace

RandomPhaseFamily random_phase_family(const SurrogateFamilyConfig& config) {
    if (config.num_points < 2) throw OutOfRange("random_phase_family: need at least 2 points");
    if (!(config.r_min < config.r_max)) {
        throw OutOfRange("random_phase_family: r_min must be below r_max");
    }
    if (config.dim < 2) throw OutOfRange("random_phase_family: dimension must be at least 2");

    Rng rng(config.seed);
    const ComplexMatrix h0 = random_hermitian(config.dim, rng);
    const ComplexMatrix h1 = random_hermitian(config.dim, rng);

    RandomPhaseFamily family;
    std::vector<ComplexVector> states;
    states.reserve(config.num_points);
    const double step = (config.r_max - config.r_min) / static_cast<double>(config.num_points - 1);
    for (std::size_t k = 0; k < config.num_points; ++k) {
        const double r = config.r_min + step * static_cast<double>(k);
        const SpectralDecomposition eig = hermitian_eigendecompose(h0 + cplx{r, 0.0} * h1);
        if (eig.eigenvalues[1] - eig.eigenvalues[0] < 1e-10) {
            family.degenerate_points.push_back(k);
        }
        ComplexVector ground = eig.eigenvector(0);
        canonicalize_state_phase(ground);
        if (config.randomize_global_phase) {
            ground *= std::polar(1.0, rng.uniform(0.0, 6.283185307179586));
        }
        states.push_back(std::move(ground));
    }
    family.ensemble = PureStateEnsemble(std::move(states), uniform_probs(config.num_points));
    return family;
}

std::vector<std::uint8_t> serialize_ensemble(const PureStateEnsemble& ensemble) {
    nlohmann::json meta = {
        {"format_version", kEnsembleVersion},
        {"kind", "pure"},
        {"dim", ensemble.dim()},
        {"count", ensemble.size()},
    };
    const std::string meta_str = meta.dump();

    std::vector<std::uint8_t> out;
    out.insert(out.end(), std::begin(kEnsembleMagic), std::end(kEnsembleMagic));
    append_be32(out, kEnsembleVersion);
    append_le64(out, meta_str.size());
    out.insert(out.end(), meta_str.begin(), meta_str.end());
    for (double p : ensemble.probs) append_f64(out, p);
    for (const auto& psi : ensemble.states) {
        for (const cplx& z : psi.entries()) {
            append_f64(out, z.real());
            append_f64(out, z.imag());
        }
    }
    return out;
}

PureStateEnsemble deserialize_ensemble(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 20 || std::memcmp(bytes.data(), kEnsembleMagic, 8) != 0) {
        throw CorruptFile("ensemble container: bad magic");
    }
    const std::uint32_t version = read_be32(bytes.data() + 8);
    if (version != kEnsembleVersion) {
        throw VersionMismatch("ensemble container: version " + std::to_string(version) +
                              " (expected " + std::to_string(kEnsembleVersion) + ")");
    }
    const std::uint64_t meta_len = read_le64(bytes.data() + 12);
    const std::size_t meta_start = 20;
    if (bytes.size() < meta_start + meta_len) {
        throw CorruptFile("ensemble container: truncated metadata");
    }
    nlohmann::json meta;
    try {
        meta = nlohmann::json::parse(bytes.begin() + meta_start,
                                     bytes.begin() + meta_start + meta_len);
    } catch (const nlohmann::json::exception&) {
        throw CorruptFile("ensemble container: unreadable metadata");
    }
    if (!meta.contains("dim") || !meta.contains("count") ||
        meta.value("kind", "") != "pure") {
        throw CorruptFile("ensemble container: missing metadata fields");
    }
    const auto dim = meta["dim"].get<std::size_t>();
    const auto count = meta["count"].get<std::size_t>();
    if (count == 0 || dim == 0) throw CorruptFile("ensemble container: empty ensemble");

    const std::size_t payload_start = meta_start + meta_len;
    const std::size_t expected = payload_start + 8 * count + 16 * count * dim;
    if (bytes.size() < expected) throw CorruptFile("ensemble container: truncated payload");

    std::vector<double> probs(count);
    for (std::size_t i = 0; i < count; ++i) {
        probs[i] = read_f64(bytes.data() + payload_start + 8 * i);
    }
    std::vector<ComplexVector> states;
    states.reserve(count);
    const std::size_t amp_start = payload_start + 8 * count;
    for (std::size_t i = 0; i < count; ++i) {
        ComplexVector psi(dim);
        for (std::size_t j = 0; j < dim; ++j) {
            const std::uint8_t* p = bytes.data() + amp_start + 16 * (i * dim + j);
            psi[j] = cplx{read_f64(p), read_f64(p + 8)};
        }
        states.push_back(std::move(psi));
    }
    try {
        return PureStateEnsemble(std::move(states), std::move(probs));
    } catch (const Error& e) {
        throw CorruptFile(std::string("ensemble container: ") + e.what());
    }
}

void write_ensemble(const std::string& path, const PureStateEnsemble& ensemble) {
    const std::vector<std::uint8_t> bytes = serialize_ensemble(ensemble);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw DataError("failed writing " + path);
}

PureStateEnsemble read_ensemble(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return deserialize_ensemble(bytes);
}

std::vector<std::vector<double>> read_numeric_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw DataError("non-numeric CSV cell '" + cell + "' in " + path);
            }
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw DataError("no numeric rows in " + path);
    return rows;
}

}  // namespace qcovpca
