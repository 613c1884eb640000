#pragma once

#include <stdexcept>
#include <string>

namespace subspace_round {

/// Base class for every error raised by the library. The message can be
/// extended with context (stage name, iteration index) while the exception
/// propagates, so callers keep the dynamic type.
class Error : public std::exception {
public:
    explicit Error(std::string message) : message_(std::move(message)) {}

    const char* what() const noexcept override { return message_.c_str(); }

    void add_context(const std::string& context) { message_ = context + ": " + message_; }

private:
    std::string message_;
};

#define SUBSPACE_ROUND_ERROR(Name)                                  \
    class Name : public Error {                                     \
    public:                                                         \
        explicit Name(const std::string& message) : Error(message) {} \
    }

// dense-linalg
SUBSPACE_ROUND_ERROR(ZeroMatrix);
SUBSPACE_ROUND_ERROR(NotSymmetric);
SUBSPACE_ROUND_ERROR(ConvergenceFailure);
SUBSPACE_ROUND_ERROR(DimensionMismatch);
SUBSPACE_ROUND_ERROR(NonFinite);

// partitions / rounding
SUBSPACE_ROUND_ERROR(EmptySet);
SUBSPACE_ROUND_ERROR(OverlapDetected);
SUBSPACE_ROUND_ERROR(NodeOutOfRange);
SUBSPACE_ROUND_ERROR(SizeMismatch);
SUBSPACE_ROUND_ERROR(NotBijective);
SUBSPACE_ROUND_ERROR(ZeroVector);
SUBSPACE_ROUND_ERROR(EmptyUnion);

// unravel / spectral clustering
SUBSPACE_ROUND_ERROR(Infeasible);
SUBSPACE_ROUND_ERROR(NoClusterFound);
SUBSPACE_ROUND_ERROR(DegenerateCenters);
SUBSPACE_ROUND_ERROR(NotOrthonormal);

// graphs / synth / io
SUBSPACE_ROUND_ERROR(IncompleteCover);
SUBSPACE_ROUND_ERROR(EmptyOrFullSet);
SUBSPACE_ROUND_ERROR(InvalidGraph);
SUBSPACE_ROUND_ERROR(SizesExceedN);
SUBSPACE_ROUND_ERROR(ParseError);
SUBSPACE_ROUND_ERROR(IoError);

#undef SUBSPACE_ROUND_ERROR

} // namespace subspace_round
