#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "oracles.hpp"
#include "qcovpca/dataio.hpp"
#include "qcovpca/moments.hpp"

using namespace qcovpca;

namespace {

// 1 image of 2x2 pixels, values (0, 255, 128, 7)
std::vector<std::uint8_t> tiny_idx_image() {
    return {0, 0, 0x08, 3, 0, 0, 0, 1, 0, 0, 0, 2, 0, 0, 0, 2, 0, 255, 128, 7};
}

}  // namespace

TEST_SUITE_BEGIN("dataio");

TEST_CASE("parse_idx on frozen examples") {
    const IdxTensor img = parse_idx(tiny_idx_image());
    CHECK(img.element_type == 0x08);
    REQUIRE(img.dims.size() == 3);
    CHECK(img.dims[0] == 1);
    CHECK(img.dims[1] == 2);
    CHECK(img.dims[2] == 2);
    CHECK(img.element_as_double(0) == 0.0);
    CHECK(img.element_as_double(1) == 255.0);
    CHECK(img.element_as_double(2) == 128.0);
    CHECK(img.element_as_double(3) == 7.0);

    const std::vector<std::uint8_t> labels = {0, 0, 0x08, 1, 0, 0, 0, 3, 5, 0, 9};
    const IdxTensor lbl = parse_idx(labels);
    REQUIRE(lbl.dims.size() == 1);
    CHECK(lbl.dims[0] == 3);
    CHECK(lbl.payload[0] == 5);
    CHECK(lbl.payload[2] == 9);
}

TEST_CASE("parse_idx error paths") {
    std::vector<std::uint8_t> truncated = tiny_idx_image();
    truncated.pop_back();
    CHECK_THROWS_AS(parse_idx(truncated), TruncatedPayload);

    std::vector<std::uint8_t> bad_magic = tiny_idx_image();
    bad_magic[0] = 1;
    CHECK_THROWS_AS(parse_idx(bad_magic), BadMagic);

    std::vector<std::uint8_t> bad_type = tiny_idx_image();
    bad_type[2] = 0x05;
    CHECK_THROWS_AS(parse_idx(bad_type), UnsupportedType);

    CHECK_THROWS_AS(parse_idx({0, 0}), BadMagic);
}

TEST_CASE("idx round-trips bit-exactly on fuzzed tensors") {
    Rng rng(501);
    for (int rep = 0; rep < 50; ++rep) {
        IdxTensor t;
        t.element_type = rng.uniform() < 0.5 ? 0x08 : 0x0D;
        const std::size_t rank = 1 + rng.below(3);
        std::size_t count = 1;
        for (std::size_t r = 0; r < rank; ++r) {
            t.dims.push_back(1 + static_cast<std::uint32_t>(rng.below(5)));
            count *= t.dims.back();
        }
        t.payload.resize(count * t.element_size());
        for (auto& b : t.payload) b = static_cast<std::uint8_t>(rng.below(256));

        const IdxTensor back = parse_idx(write_idx(t));
        CHECK(back.element_type == t.element_type);
        CHECK(back.dims == t.dims);
        CHECK(back.payload == t.payload);
    }

    IdxTensor bad;
    bad.element_type = 0x08;
    bad.dims = {4};
    bad.payload = {1, 2};  // wrong size
    CHECK_THROWS_AS(write_idx(bad), TruncatedPayload);
}

TEST_CASE("load_mnist selections") {
    // 30 images of 4x4 pixels: labels cycle 0..9 three times
    IdxTensor images;
    images.element_type = 0x08;
    images.dims = {30, 4, 4};
    images.payload.resize(30 * 16);
    for (std::size_t i = 0; i < images.payload.size(); ++i) {
        images.payload[i] = static_cast<std::uint8_t>(i % 251);
    }
    IdxTensor labels;
    labels.element_type = 0x08;
    labels.dims = {30};
    for (std::size_t i = 0; i < 30; ++i) {
        labels.payload.push_back(static_cast<std::uint8_t>(i % 10));
    }

    const RawDataset ds = load_mnist(images, labels, 2, 77);
    CHECK(ds.size() == 20);
    CHECK(ds.feature_dim() == 16);
    for (const auto& v : ds.vectors) {
        for (std::size_t j = 0; j < v.dim(); ++j) {
            CHECK(v[j].real() >= 0.0);
            CHECK(v[j].real() <= 1.0);
            CHECK(v[j].imag() == 0.0);
        }
    }

    const RawDataset again = load_mnist(images, labels, 2, 77);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        for (std::size_t j = 0; j < ds.feature_dim(); ++j) {
            CHECK(ds.vectors[i][j] == again.vectors[i][j]);
        }
    }

    CHECK_THROWS_AS(load_mnist(images, labels, 4, 77), NotEnoughInstances);
}

TEST_CASE("pixel scaling divides by 255") {
    IdxTensor images;
    images.element_type = 0x08;
    images.dims = {10, 1, 2};
    images.payload.assign(20, 0);
    images.payload[0] = 255;  // first pixel of the digit-0 image
    images.payload[1] = 51;
    IdxTensor labels;
    labels.element_type = 0x08;
    labels.dims = {10};
    for (std::uint8_t digit = 0; digit < 10; ++digit) labels.payload.push_back(digit);

    const RawDataset ds = load_mnist(images, labels, 1, 3);
    REQUIRE(ds.size() == 10);
    CHECK(ds.vectors[0][0].real() == doctest::Approx(1.0));
    CHECK(ds.vectors[0][1].real() == doctest::Approx(51.0 / 255.0));
}

TEST_CASE("bars_and_stripes enumeration") {
    const RawDataset two = bars_and_stripes(2, false);
    CHECK(two.size() == 4);  // 2 proper stripes + 2 proper bars

    for (std::size_t n = 2; n <= 4; ++n) {
        const RawDataset proper = bars_and_stripes(n, false);
        CHECK(proper.size() == 2 * ((std::size_t{1} << n) - 2));
        const RawDataset with_uniform = bars_and_stripes(n, true);
        CHECK(with_uniform.size() == proper.size() + 2);

        // brute-force validity predicate: rows constant or columns constant
        for (const auto& img : with_uniform.vectors) {
            bool rows_ok = true;
            bool cols_ok = true;
            for (std::size_t r = 0; r < n; ++r) {
                for (std::size_t c = 0; c < n; ++c) {
                    if (img[r * n + c] != img[r * n]) rows_ok = false;
                    if (img[r * n + c] != img[c]) cols_ok = false;
                }
            }
            CHECK((rows_ok || cols_ok));
        }
    }

    const RawDataset degenerate = bars_and_stripes(1, true);
    CHECK(degenerate.size() == 2);
}

TEST_CASE("gaussian clusters shape") {
    const RawDataset ds = gaussian_clusters(16, 3, 5, 1.0, 0.4, 0.05, 9);
    CHECK(ds.size() == 15);
    CHECK(ds.feature_dim() == 16);
    const RawDataset same = gaussian_clusters(16, 3, 5, 1.0, 0.4, 0.05, 9);
    CHECK(ds.vectors[7][3] == same.vectors[7][3]);
}

TEST_CASE("random phase family determinism and structure") {
    SurrogateFamilyConfig config;
    config.dim = 8;
    config.num_points = 31;
    config.seed = 5;
    const RandomPhaseFamily fam = random_phase_family(config);
    CHECK(fam.ensemble.size() == 31);
    for (const auto& s : fam.ensemble.states) CHECK(std::abs(s.norm() - 1.0) <= 1e-10);

    const RandomPhaseFamily again = random_phase_family(config);
    for (std::size_t i = 0; i < fam.ensemble.size(); ++i) {
        for (std::size_t j = 0; j < 8; ++j) {
            CHECK(fam.ensemble.states[i][j] == again.ensemble.states[i][j]);
        }
    }

    SurrogateFamilyConfig no_phase = config;
    no_phase.randomize_global_phase = false;
    const RandomPhaseFamily plain = random_phase_family(no_phase);
    CHECK(frobenius_distance(ensemble_density(fam.ensemble),
                             ensemble_density(plain.ensemble)) <= 1e-13);
    CHECK(mean_vector(plain.ensemble).norm() >= mean_vector(fam.ensemble).norm());
}

TEST_CASE("random phases approximately center the family") {
    SurrogateFamilyConfig config;
    config.dim = 16;
    config.num_points = 101;
    config.seed = 11;
    const RandomPhaseFamily fam = random_phase_family(config);
    const ComplexMatrix rho = ensemble_density(fam.ensemble);
    const ComplexMatrix q = covariance_matrix(fam.ensemble);
    CHECK(frobenius_distance(rho, q) / frobenius_norm(rho) <= 0.05);
}

TEST_CASE("ensemble container round-trips bit-exactly") {
    Rng rng(521);
    const PureStateEnsemble e = oracles::random_ensemble(rng, 6, 9);
    const std::vector<std::uint8_t> bytes = serialize_ensemble(e);
    const PureStateEnsemble back = deserialize_ensemble(bytes);
    REQUIRE(back.size() == e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
        CHECK(back.probs[i] == e.probs[i]);
        for (std::size_t j = 0; j < e.dim(); ++j) {
            CHECK(back.states[i][j] == e.states[i][j]);
        }
    }
}

TEST_CASE("ensemble container error paths") {
    Rng rng(523);
    const PureStateEnsemble e = oracles::random_ensemble(rng, 3, 4);
    std::vector<std::uint8_t> bytes = serialize_ensemble(e);

    std::vector<std::uint8_t> bad_magic = bytes;
    bad_magic[0] = 'X';
    CHECK_THROWS_AS(deserialize_ensemble(bad_magic), CorruptFile);

    std::vector<std::uint8_t> bad_version = bytes;
    bad_version[11] = 9;  // big-endian version field
    CHECK_THROWS_AS(deserialize_ensemble(bad_version), VersionMismatch);

    std::vector<std::uint8_t> truncated = bytes;
    truncated.resize(truncated.size() - 5);
    CHECK_THROWS_AS(deserialize_ensemble(truncated), CorruptFile);

    // probabilities scaled to 0.9 total are beyond the renormalization window
    PureStateEnsemble skewed = e;
    for (double& p : skewed.probs) p *= 0.9;
    CHECK_THROWS_AS(deserialize_ensemble(serialize_ensemble(skewed)), CorruptFile);
}

TEST_CASE("ensemble file io") {
    Rng rng(541);
    const PureStateEnsemble e = oracles::random_ensemble(rng, 4, 5);
    const std::string path =
        (std::filesystem::temp_directory_path() / "qcovpca_ensemble_test.bin").string();
    write_ensemble(path, e);
    const PureStateEnsemble back = read_ensemble(path);
    CHECK(back.size() == e.size());
    CHECK(back.states[2][1] == e.states[2][1]);
    std::remove(path.c_str());
}

TEST_SUITE_END();
