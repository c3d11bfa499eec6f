#include "torusmd/batch.hpp"

#include "torusmd/error.hpp"
#include "torusmd/verify.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstdlib>
#include <iomanip>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

namespace torusmd {

using Json = nlohmann::ordered_json;

std::vector<IntMatrix2> enumerate_sol(std::int64_t bound, std::int64_t trace_range) {
    if (bound < 0 || trace_range < 0) throw Error(ErrorCode::InvalidInput, "batch bounds must be non-negative");
    if (bound > 2000) throw Error(ErrorCode::InvalidInput, "entry bound above 2000 is not supported");
    std::vector<IntMatrix2> out;
    auto keep = [&](std::int64_t a, std::int64_t d) {
        const std::int64_t t = std::llabs(a + d);
        return t > 2 && t <= trace_range;
    };
    for (std::int64_t a = -bound; a <= bound; ++a)
        for (std::int64_t b = -bound; b <= bound; ++b)
            for (std::int64_t c = -bound; c <= bound; ++c) {
                if (a == 0) {
                    if (b * c != -1) continue;
                    for (std::int64_t d = -bound; d <= bound; ++d)
                        if (keep(a, d)) out.push_back({a, b, c, d});
                } else {
                    const std::int64_t rhs = 1 + b * c;
                    if (rhs % a != 0) continue;
                    const std::int64_t d = rhs / a;
                    if (std::llabs(d) <= bound && keep(a, d)) out.push_back({a, b, c, d});
                }
            }
    return out;
}

std::string_view to_string(RowStatus status) noexcept {
    switch (status) {
    case RowStatus::Pass: return "pass";
    case RowStatus::Fail: return "fail";
    case RowStatus::Degenerate: return "degenerate";
    case RowStatus::Error: return "error";
    }
    return "unknown";
}

void BatchAggregate::add(const BatchRow& row) {
    ++total;
    switch (row.status) {
    case RowStatus::Pass: ++passed; break;
    case RowStatus::Fail: ++failed; break;
    case RowStatus::Degenerate: ++degenerate; break;
    case RowStatus::Error: ++errors; break;
    }
}

BatchRow run_one(const IntMatrix2& m, int epsilon) {
    BatchRow row;
    row.matrix = m;
    try {
        const VerificationReport report = verify_bundle(Monodromy::validate(m), epsilon);
        row.summary = report.summary;
        for (const CheckResult& c : report.checks)
            if (c.failed() && !c.exploratory) row.failed_checks.push_back(c.name);
        row.status = report.degenerate ? RowStatus::Degenerate : (report.passed() ? RowStatus::Pass : RowStatus::Fail);
    } catch (const Error& e) {
        row.status = RowStatus::Error;
        row.error_code = std::string(to_string(e.code()));
        row.error_message = e.what();
    } catch (const std::exception& e) {
        row.status = RowStatus::Error;
        row.error_code = "InternalInconsistency";
        row.error_message = e.what();
    }
    return row;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("TORUSMD_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : int(hw);
}

namespace {

// Evaluates f over [0, count) on a worker pool and delivers results in index order.
template <class Result, class Work, class Deliver>
void ordered_parallel(std::size_t count, int threads, Work work, Deliver deliver) {
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) deliver(work(i));
        return;
    }
    std::vector<std::optional<Result>> slots(count);
    std::mutex mutex;
    std::condition_variable ready;
    std::atomic<std::size_t> next{0};
    // Workers may not run further than this many slots ahead of delivery.
    const std::size_t window = std::size_t(threads) * 64;
    std::size_t delivered = 0;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            {
                std::unique_lock lock(mutex);
                ready.wait(lock, [&] { return i < delivered + window; });
            }
            Result r = work(i);
            std::lock_guard lock(mutex);
            slots[i] = std::move(r);
            ready.notify_all();
        }
    };
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);

    for (std::size_t i = 0; i < count; ++i) {
        Result r;
        {
            std::unique_lock lock(mutex);
            ready.wait(lock, [&] { return slots[i].has_value(); });
            r = std::move(*slots[i]);
            slots[i].reset();
            delivered = i + 1;
        }
        ready.notify_all();
        deliver(r);
    }
}

std::string matrix_csv(const IntMatrix2& m) {
    return std::to_string(m.a) + "," + std::to_string(m.b) + "," + std::to_string(m.c) + "," + std::to_string(m.d);
}

std::string joined(const std::vector<std::string>& xs, const char* sep) {
    std::string out;
    for (const std::string& x : xs) out += (out.empty() ? "" : sep) + x;
    return out;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

BatchAggregate run_batch(const BatchConfig& cfg, const std::function<void(const BatchRow&)>& emit) {
    if (cfg.epsilon != 1 && cfg.epsilon != -1) throw Error(ErrorCode::InvalidInput, "epsilon must be +1 or -1");
    const auto corpus = enumerate_sol(cfg.entry_bound, cfg.trace_range);
    BatchAggregate agg;
    ordered_parallel<BatchRow>(
        corpus.size(), resolve_threads(cfg.threads), [&](std::size_t i) { return run_one(corpus[i], cfg.epsilon); },
        [&](const BatchRow& row) {
            agg.add(row);
            emit(row);
        });
    return agg;
}

std::string batch_header(Format format) {
    switch (format) {
    case Format::Csv:
        return "a,b,c,d,trace,N,r,parity_row,rank,invertible,two_dim,D2,det_s_zero,h1_z2_dim,fusion_edge_cases,"
               "status,failed_checks,error\n";
    case Format::Pretty: return "matrix                 N     r   row    rank  status\n";
    case Format::Json: return {};
    case Format::Latex: break;
    }
    throw Error(ErrorCode::InvalidInput, "batch output supports json, csv and pretty");
}

std::string render_batch_row(const BatchRow& row, Format format) {
    const ReportSummary& s = row.summary;
    const IntMatrix2& m = row.matrix;
    const std::string status(to_string(row.status));
    const std::string error = row.error_code.empty() ? "" : row.error_code + ": " + row.error_message;
    switch (format) {
    case Format::Csv:
        return matrix_csv(m) + "," + std::to_string(m.a + m.d) + "," + std::to_string(s.order) + "," +
               std::to_string(s.r) + "," + csv_escape(s.parity_row) + "," + std::to_string(s.rank) + "," +
               std::to_string(s.invertible_count) + "," + std::to_string(s.two_dim_count) + "," +
               s.global_dim_sq.to_string() + "," + (s.det_s_zero ? "true" : "false") + "," +
               std::to_string(s.h1_z2_dim) + "," + std::to_string(s.fusion_edge_cases) + "," + status + "," +
               joined(row.failed_checks, ";") + "," + csv_escape(error) + "\n";
    case Format::Json: {
        Json j{{"matrix", {m.a, m.b, m.c, m.d}},
               {"trace", m.a + m.d},
               {"N", s.order},
               {"r", s.r},
               {"parity_row", s.parity_row},
               {"rank", s.rank},
               {"invertible", s.invertible_count},
               {"two_dim", s.two_dim_count},
               {"D2", s.global_dim_sq.to_string()},
               {"det_s_zero", s.det_s_zero},
               {"h1_z2_dim", s.h1_z2_dim},
               {"fusion_edge_cases", s.fusion_edge_cases},
               {"status", status},
               {"failed_checks", row.failed_checks},
               {"error", row.error_code.empty() ? Json(nullptr)
                                                 : Json{{"code", row.error_code}, {"message", row.error_message}}}};
        return j.dump() + "\n";
    }
    case Format::Pretty: {
        std::ostringstream out;
        out << std::left << std::setw(23) << ("(" + matrix_csv(m) + ")") << std::setw(6) << s.order << std::setw(4)
            << s.r << std::setw(7) << s.parity_row << std::setw(6) << s.rank << status;
        if (!row.failed_checks.empty()) out << " " << joined(row.failed_checks, ",");
        if (!error.empty()) out << " " << error;
        out << "\n";
        return out.str();
    }
    case Format::Latex: break;
    }
    throw Error(ErrorCode::InvalidInput, "batch output supports json, csv and pretty");
}

std::string render_aggregate(const BatchAggregate& agg, Format format) {
    if (format == Format::Json)
        return Json{{"aggregate",
                     {{"total", agg.total},
                      {"passed", agg.passed},
                      {"failed", agg.failed},
                      {"degenerate", agg.degenerate},
                      {"errors", agg.errors}}}}
                   .dump() +
               "\n";
    return "# aggregate total=" + std::to_string(agg.total) + " passed=" + std::to_string(agg.passed) +
           " failed=" + std::to_string(agg.failed) + " degenerate=" + std::to_string(agg.degenerate) +
           " errors=" + std::to_string(agg.errors) + "\n";
}

bool TableSummary::ok() const {
    for (const TableRow& r : rows)
        if (r.matching + r.degenerate != r.bundles) return false;
    return true;
}

TableSummary build_table(const BatchConfig& cfg) {
    TableSummary table{cfg.entry_bound, cfg.trace_range, {}};
    const std::vector<std::string> order{"(o,o)", "(o,e)", "(e,o)", "(e,e)"};
    for (const std::string& row : order) table.rows.push_back({row, 0, 0, 0, {}});

    struct Counted {
        BundleInvariants inv;
        std::size_t labels_inv = 0, labels_two = 0, objects_inv = 0, objects_two = 0;
    };
    const auto corpus = enumerate_sol(cfg.entry_bound, cfg.trace_range);
    ordered_parallel<Counted>(
        corpus.size(), resolve_threads(cfg.threads),
        [&](std::size_t i) {
            const Monodromy m = Monodromy::validate(corpus[i]);
            Counted c{compute_invariants(m)};
            if (c.inv.degenerate()) return c;
            const LabelSet labels = solve_characters(m);
            c.labels_inv = labels.invertible_count();
            c.labels_two = labels.two_dim_count();
            for (const SimpleObject& x : simple_objects(build_quad_group(m))) ++(x.invertible() ? c.objects_inv : c.objects_two);
            return c;
        },
        [&](const Counted& c) {
            const auto it = std::find(order.begin(), order.end(), c.inv.parity_row());
            TableRow& row = table.rows[std::size_t(it - order.begin())];
            ++row.bundles;
            if (c.inv.degenerate()) {
                ++row.degenerate;
                return;
            }
            const auto [e_inv, e_two] = c.inv.expected_counts();
            if (std::int64_t(c.labels_inv) == e_inv && std::int64_t(c.labels_two) == e_two &&
                std::int64_t(c.objects_inv) == e_inv && std::int64_t(c.objects_two) == e_two)
                ++row.matching;
            row.counts_by_order[c.inv.order] = {std::int64_t(c.objects_inv), std::int64_t(c.objects_two)};
        });
    return table;
}

namespace {

const char* formula(const std::string& row) {
    if (row == "(o,o)") return "(N-1)/2";
    if (row == "(e,e)") return "N/2-2";
    return "N/2-1";
}

const char* formula_latex(const std::string& row) {
    if (row == "(o,o)") return "$\\frac{N-1}{2}$";
    if (row == "(e,e)") return "$\\frac{N}{2}-2$";
    return "$\\frac{N}{2}-1$";
}

int expected_invertibles(const std::string& row) { return row == "(o,o)" ? 2 : (row == "(e,e)" ? 8 : 4); }

} // namespace

std::string render_table(const TableSummary& table, Format format, const std::optional<Metadata>& meta) {
    std::ostringstream out;
    switch (format) {
    case Format::Json: {
        Json j{{"schema_version", kSchemaVersion}, {"kind", "table"}};
        if (meta) j["metadata"] = Json{{"tool", "torusmd"}, {"version", kVersion}, {"generated_at", meta->generated_at}};
        j["entry_bound"] = table.entry_bound;
        j["trace_range"] = table.trace_range;
        Json rows = Json::array();
        for (const TableRow& r : table.rows) {
            Json by_order = Json::array();
            for (const auto& [n, counts] : r.counts_by_order)
                by_order.push_back(Json{{"N", n}, {"invertible", counts.first}, {"two_dim", counts.second}});
            rows.push_back(Json{{"parity_row", r.parity_row},
                                {"invertible", expected_invertibles(r.parity_row)},
                                {"two_dim_formula", formula(r.parity_row)},
                                {"bundles", r.bundles},
                                {"matching", r.matching},
                                {"degenerate", r.degenerate},
                                {"observed", std::move(by_order)}});
        }
        j["rows"] = std::move(rows);
        j["all_match"] = table.ok();
        return j.dump(2) + "\n";
    }
    case Format::Csv:
        if (meta) out << "# torusmd " << kVersion << " generated " << meta->generated_at << "\n";
        out << "parity_row,N,invertible,two_dim,expected_invertible,expected_two_dim,bundles_in_row,matching_in_row\n";
        for (const TableRow& r : table.rows)
            for (const auto& [n, counts] : r.counts_by_order) {
                const std::int64_t e_two = r.parity_row == "(o,o)" ? (n - 1) / 2 : (r.parity_row == "(e,e)" ? n / 2 - 2 : n / 2 - 1);
                out << "\"" << r.parity_row << "\"," << n << "," << counts.first << "," << counts.second << ","
                    << expected_invertibles(r.parity_row) << "," << e_two << "," << r.bundles << "," << r.matching
                    << "\n";
            }
        return out.str();
    case Format::Latex:
        if (meta) out << "% torusmd " << kVersion << " generated " << meta->generated_at << "\n";
        out << "% corpus: |entries| <= " << table.entry_bound << ", 2 < |trace| <= " << table.trace_range << "\n";
        out << "\\begin{tabular}{|l|c|c|c|c|}\n\\hline\n";
        out << "$(r, \\frac{N}{r})$ & $|\\mathrm{Irr}_{\\mathrm{pt}}|$ & Number of $Y_{(a,b)}$ & Bundles & Matching "
               "\\\\ \\hline\n";
        for (const TableRow& r : table.rows)
            out << "$" << r.parity_row << "$ & $" << expected_invertibles(r.parity_row) << "$ & "
                << formula_latex(r.parity_row) << " & " << r.bundles << " & " << r.matching << " \\\\ \\hline\n";
        out << "\\end{tabular}\n";
        return out.str();
    case Format::Pretty:
        if (meta) out << "# torusmd " << kVersion << " generated " << meta->generated_at << "\n";
        out << "corpus: |entries| <= " << table.entry_bound << ", 2 < |trace| <= " << table.trace_range << "\n";
        out << std::left << std::setw(8) << "row" << std::setw(12) << "invertible" << std::setw(10) << "two-dim"
            << std::setw(9) << "bundles" << std::setw(10) << "matching" << "degenerate\n";
        for (const TableRow& r : table.rows)
            out << std::setw(8) << r.parity_row << std::setw(12) << expected_invertibles(r.parity_row) << std::setw(10)
                << formula(r.parity_row) << std::setw(9) << r.bundles << std::setw(10) << r.matching << r.degenerate
                << "\n";
        out << (table.ok() ? "all rows match\n" : "MISMATCH\n");
        return out.str();
    }
    return {};
}

} // namespace torusmd
