#ifndef QCOVPCA_ERRORS_HPP
#define QCOVPCA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qcovpca {

// Base class for everything thrown by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
    virtual const char* kind() const noexcept { return "error"; }
};

// Bad or inconsistent input data (files, datasets, probabilities).
struct DataError : Error {
    using Error::Error;
    const char* kind() const noexcept override { return "data_error"; }
};

// A numerical contract was violated (non-Hermitian input, no convergence, ...).
struct NumericalError : Error {
    using Error::Error;
    const char* kind() const noexcept override { return "numerical_error"; }
};

#define QCOVPCA_DEFINE_ERROR(name, base, tag)                        \
    struct name : base {                                             \
        explicit name(const std::string& msg) : base(msg) {}         \
        const char* kind() const noexcept override { return tag; }   \
    }

QCOVPCA_DEFINE_ERROR(DimMismatch, DataError, "dim_mismatch");
QCOVPCA_DEFINE_ERROR(LengthMismatch, DataError, "length_mismatch");
QCOVPCA_DEFINE_ERROR(NotSorted, DataError, "not_sorted");
QCOVPCA_DEFINE_ERROR(OutOfRange, DataError, "out_of_range");
QCOVPCA_DEFINE_ERROR(ZeroVector, DataError, "zero_vector");
QCOVPCA_DEFINE_ERROR(ZeroMean, DataError, "zero_mean");
QCOVPCA_DEFINE_ERROR(DimTooSmall, DataError, "dim_too_small");
QCOVPCA_DEFINE_ERROR(NTooLarge, DataError, "n_too_large");
QCOVPCA_DEFINE_ERROR(BadProbabilities, DataError, "bad_probabilities");
QCOVPCA_DEFINE_ERROR(NotEnoughInstances, DataError, "not_enough_instances");
QCOVPCA_DEFINE_ERROR(BadMagic, DataError, "bad_magic");
QCOVPCA_DEFINE_ERROR(TruncatedPayload, DataError, "truncated_payload");
QCOVPCA_DEFINE_ERROR(UnsupportedType, DataError, "unsupported_type");
QCOVPCA_DEFINE_ERROR(CorruptFile, DataError, "corrupt_file");
QCOVPCA_DEFINE_ERROR(VersionMismatch, DataError, "version_mismatch");

QCOVPCA_DEFINE_ERROR(NotHermitian, NumericalError, "not_hermitian");
QCOVPCA_DEFINE_ERROR(NoConvergence, NumericalError, "no_convergence");
QCOVPCA_DEFINE_ERROR(NotNormalized, NumericalError, "not_normalized");
QCOVPCA_DEFINE_ERROR(NotUnitary, NumericalError, "not_unitary");
QCOVPCA_DEFINE_ERROR(NotDensity, NumericalError, "not_density");
QCOVPCA_DEFINE_ERROR(DegenerateGroundState, NumericalError, "degenerate_ground_state");

#undef QCOVPCA_DEFINE_ERROR

}  // namespace qcovpca

#endif
