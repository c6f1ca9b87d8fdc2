#ifndef QCOVPCA_DATAIO_HPP
#define QCOVPCA_DATAIO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qcovpca/dataset.hpp"

namespace qcovpca {

// IDX binary tensor (big-endian header and payload; payload kept raw so
// parse/write round-trips bit-exactly).
struct IdxTensor {
    std::uint8_t element_type = 0x08;
    std::vector<std::uint32_t> dims;
    std::vector<std::uint8_t> payload;

    std::size_t element_size() const;
    std::size_t element_count() const;
    double element_as_double(std::size_t index) const;
};

// type codes: 0x08 ubyte, 0x09 sbyte, 0x0B int16, 0x0C int32,
//             0x0D float32, 0x0E float64
IdxTensor parse_idx(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> write_idx(const IdxTensor& tensor);

IdxTensor read_idx_file(const std::string& path);
void write_idx_file(const std::string& path, const IdxTensor& tensor);

// Selects per_class instances of each digit 0..9 uniformly at random,
// flattens each image row-major and maps pixels to [0, 1] by dividing by 255.
RawDataset load_mnist(const IdxTensor& images, const IdxTensor& labels,
                      std::size_t per_class, std::uint64_t seed);

// All n x n binary images whose rows are constant (stripes) or columns are
// constant (bars); the all-zero and all-one patterns appear once each iff
// include_uniform.
RawDataset bars_and_stripes(std::size_t n, bool include_uniform);

// Isotropic Gaussian clusters around nonnegative random centers; a synthetic
// stand-in for image-like data with a strong common bias.
RawDataset gaussian_clusters(std::size_t dim, std::size_t num_clusters,
                             std::size_t per_cluster, double center_offset,
                             double center_scale, double noise_sigma, std::uint64_t seed);

// One-parameter family of ground states of H0 + r H1 for random Hermitian
// H0, H1, mirroring a molecular bond-length scan.
struct SurrogateFamilyConfig {
    std::size_t dim = 64;
    std::size_t num_points = 401;
    double r_min = 0.3;
    double r_max = 2.3;
    std::uint64_t seed = 1;
    bool randomize_global_phase = true;
};

struct RandomPhaseFamily {
    PureStateEnsemble ensemble;
    // points whose two lowest energies were closer than 1e-10; the reported
    // state is still chosen deterministically
    std::vector<std::size_t> degenerate_points;
};

RandomPhaseFamily random_phase_family(const SurrogateFamilyConfig& config);

// Single-file container: magic, format version, JSON metadata, then packed
// little-endian probabilities and (re, im) amplitude pairs. Lossless for
// finite doubles.
std::vector<std::uint8_t> serialize_ensemble(const PureStateEnsemble& ensemble);
PureStateEnsemble deserialize_ensemble(const std::vector<std::uint8_t>& bytes);

void write_ensemble(const std::string& path, const PureStateEnsemble& ensemble);
PureStateEnsemble read_ensemble(const std::string& path);

// Rows of real-valued features, one datapoint per line.
std::vector<std::vector<double>> read_numeric_csv(const std::string& path);

}  // namespace qcovpca

#endif
