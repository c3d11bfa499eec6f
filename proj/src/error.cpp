#include "torusmd/error.hpp"

namespace torusmd {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::DeterminantError: return "DeterminantError";
    case ErrorCode::NotSolError: return "NotSolError";
    case ErrorCode::DegenerateBundle: return "DegenerateBundle";
    case ErrorCode::OrderMismatch: return "OrderMismatch";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::NonRationalTwist: return "NonRationalTwist";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::BijectionFailure: return "BijectionFailure";
    }
    return "Unknown";
}

} // namespace torusmd
