#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dpbkit {

// Numeric values are part of the C ABI (see dpbkit.h); append only.
enum class ErrorCode : int {
    Ok = 0,
    InvalidArgument = 1,
    DimensionMismatch = 2,
    SingularMatrix = 3,
    NonConvergence = 4,
    ClusterTooCoarse = 5,
    DivisionByZeroPoly = 6,
    IllConditionedGcd = 7,
    NotCoprime = 8,
    NotAnnihilated = 9,
    DuplicateLambdas = 10,
    QuadratureNotConverged = 11,
    ResolventSingular = 12,
    NotDpb = 13,
    LambdaNotInSpectrum = 14,
    NotPeriodic = 15,
    IndexOutOfRange = 16,
    NotInvertible = 17,
    ParseError = 18,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace dpbkit
