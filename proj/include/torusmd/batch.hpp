#pragma once

#include "torusmd/intmatrix.hpp"
#include "torusmd/serialize.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace torusmd {

/// Every SL(2,Z) matrix with |entries| <= entry_bound and
/// 2 < |trace| <= trace_range, lexicographic in (a, b, c, d).
std::vector<IntMatrix2> enumerate_sol(std::int64_t entry_bound, std::int64_t trace_range);

struct BatchConfig {
    std::int64_t entry_bound = 10;
    std::int64_t trace_range = 7;
    int epsilon = 1;
    /// 0 means: TORUSMD_THREADS if set, else the hardware concurrency.
    int threads = 0;
};

enum class RowStatus { Pass, Fail, Degenerate, Error };

std::string_view to_string(RowStatus status) noexcept;

/// Per-bundle summary; errors are recorded, never thrown.
struct BatchRow {
    IntMatrix2 matrix;
    RowStatus status = RowStatus::Pass;
    ReportSummary summary;
    std::vector<std::string> failed_checks;
    std::string error_code;
    std::string error_message;
};

struct BatchAggregate {
    std::size_t total = 0, passed = 0, failed = 0, degenerate = 0, errors = 0;

    void add(const BatchRow& row);
    bool ok() const noexcept { return failed == 0 && errors == 0; }
};

/// Verifies one bundle and condenses the report.
BatchRow run_one(const IntMatrix2& m, int epsilon);

/// Thread count from BatchConfig::threads / TORUSMD_THREADS / hardware.
int resolve_threads(int requested);

/// Runs every bundle of the corpus, possibly in parallel, and hands rows to
/// emit strictly in corpus order.
BatchAggregate run_batch(const BatchConfig& cfg, const std::function<void(const BatchRow&)>& emit);

std::string batch_header(Format format);
std::string render_batch_row(const BatchRow& row, Format format);
std::string render_aggregate(const BatchAggregate& agg, Format format);

/// Object counts per parity row of (r, N/r) over a corpus, against the expected counts.
struct TableRow {
    std::string parity_row;
    std::size_t bundles = 0;
    std::size_t matching = 0;
    std::size_t degenerate = 0;
    std::map<std::int64_t, std::pair<std::int64_t, std::int64_t>> counts_by_order; // N -> (invertible, two-dim)
};

struct TableSummary {
    std::int64_t entry_bound = 0;
    std::int64_t trace_range = 0;
    std::vector<TableRow> rows; // (o,o), (o,e), (e,o), (e,e)
    bool ok() const;
};

TableSummary build_table(const BatchConfig& cfg);
std::string render_table(const TableSummary& table, Format format, const std::optional<Metadata>& meta = {});

} // namespace torusmd
