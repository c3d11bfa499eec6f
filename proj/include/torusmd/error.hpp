#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace torusmd {

enum class ErrorCode {
    InvalidInput,
    DeterminantError,
    NotSolError,
    DegenerateBundle,
    OrderMismatch,
    Overflow,
    NonRationalTwist,
    InternalInconsistency,
    BijectionFailure,
};

std::string_view to_string(ErrorCode code) noexcept;

// Single exception type for the library; the code says which contract failed.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

} // namespace torusmd
