#pragma once

#include "torusmd/analysis.hpp"
#include "torusmd/error.hpp"
#include "torusmd/verify.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace torusmd {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

enum class Format { Json, Csv, Latex, Pretty };

/// "json", "csv", "latex" or "pretty"; throws Error(InvalidInput) otherwise.
Format parse_format(std::string_view name);

/// Optional provenance block. Never part of the default output, so that
/// identical inputs give identical bytes.
struct Metadata {
    std::string generated_at; // ISO-8601 UTC
};

std::string render_analysis(const Analysis& a, Format format, const std::optional<Metadata>& meta = {});
std::string render_report(const VerificationReport& r, Format format, const std::optional<Metadata>& meta = {});
/// Brute-force solution table with per-solution qtilde, CS and torsion.
std::string render_oracle(const Monodromy& m, Format format, const std::optional<Metadata>& meta = {});
/// {"schema_version":1,"error":{"code":...,"message":...}}
std::string render_error(ErrorCode code, std::string_view message);

/// CycloNum value rendered as display floats, rounded to 12 decimals.
std::pair<double, double> display_value(const CycloNum& x);

} // namespace torusmd
