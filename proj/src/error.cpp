#include "dpbkit/error.hpp"

namespace dpbkit {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::Ok: return "Ok";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::ClusterTooCoarse: return "ClusterTooCoarse";
    case ErrorCode::DivisionByZeroPoly: return "DivisionByZeroPoly";
    case ErrorCode::IllConditionedGcd: return "IllConditionedGcd";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::NotAnnihilated: return "NotAnnihilated";
    case ErrorCode::DuplicateLambdas: return "DuplicateLambdas";
    case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorCode::ResolventSingular: return "ResolventSingular";
    case ErrorCode::NotDpb: return "NotDpb";
    case ErrorCode::LambdaNotInSpectrum: return "LambdaNotInSpectrum";
    case ErrorCode::NotPeriodic: return "NotPeriodic";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

} // namespace dpbkit
