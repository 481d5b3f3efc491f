#pragma once

#include <stdexcept>
#include <string>

namespace mpt {

// Input/shape errors. The CLI maps these to exit code 2.
struct DimMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct SizeMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct IndexOutOfRange : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotSymmetric : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct InvalidProbability : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct BlockSizeMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Mathematical precondition failures. The CLI maps these to exit code 3.
struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ZeroGap : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonPositiveGap : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct AllEqual : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SpectralDominance : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PreconditionViolated : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DivergentSeries : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct KTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace mpt
