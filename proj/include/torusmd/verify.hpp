#pragma once

#include "torusmd/analysis.hpp"

#include <optional>
#include <string>
#include <vector>

namespace torusmd {

/// Exact counterexample: the offending indices plus both sides of the failed identity.
struct Witness {
    std::vector<std::size_t> indices;
    std::string expected;
    std::string actual;
    std::string detail;
};

enum class CheckStatus { Pass, Fail, Skip };

std::string_view to_string(CheckStatus status) noexcept;

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    /// Exploratory checks are reported but never decide the verdict.
    bool exploratory = false;
    std::optional<Witness> witness; // always present when status == Fail
    std::string note;

    bool failed() const noexcept { return status == CheckStatus::Fail; }
};

struct ReportSummary {
    std::size_t rank = 0;
    std::int64_t order = 0;
    std::int64_t r = 0;
    std::string parity_row;
    std::size_t invertible_count = 0;
    std::size_t two_dim_count = 0;
    Rational global_dim_sq;
    bool det_s_zero = false;
    int h1_z2_dim = 0;
    std::size_t fusion_edge_cases = 0;
};

struct VerificationReport {
    explicit VerificationReport(const Monodromy& m) : bundle(m) {}

    Monodromy bundle;
    int epsilon = 1;
    bool degenerate = false;
    std::vector<CheckResult> checks;
    ReportSummary summary;
    std::vector<std::string> warnings;

    /// True when no non-exploratory check failed.
    bool passed() const;
    const CheckResult* find(std::string_view name) const;
};

/// Names of the standard checks, in report order.
const std::vector<std::string>& standard_check_names();

/// Runs the standard suite on an analysis computed at epsilon = +1. When
/// the analysis was computed at epsilon = -1 the suite still uses +1 for the
/// verdict and the epsilon = -1 comparison is appended as an exploratory entry.
/// Throws Error(BijectionFailure) if the two object lists cannot be matched.
VerificationReport verify(const Analysis& analysis);

VerificationReport verify_bundle(const Monodromy& m, int epsilon = 1);

/// Compares (d, theta) and T multisets of A and B A B^-1. For det B = -1 the
/// orientation is reversed and the twists of A are conjugated first.
/// Throws Error(InvalidInput) unless det B = +-1.
std::vector<CheckResult> check_conjugation(const Monodromy& m, const IntMatrix2& b);

} // namespace torusmd
