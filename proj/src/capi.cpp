#include "torusmd.h"

#include "torusmd/analysis.hpp"
#include "torusmd/batch.hpp"
#include "torusmd/error.hpp"
#include "torusmd/serialize.hpp"
#include "torusmd/verify.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>

using namespace torusmd;

struct torusmd_bundle {
    Monodromy monodromy;
};

namespace {

struct LastError {
    torusmd_status status = TORUSMD_OK;
    std::string message;
};

thread_local LastError last_error;

torusmd_status status_of(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidInput: return TORUSMD_INVALID_INPUT;
    case ErrorCode::DeterminantError: return TORUSMD_DETERMINANT_ERROR;
    case ErrorCode::NotSolError: return TORUSMD_NOT_SOL_ERROR;
    case ErrorCode::DegenerateBundle: return TORUSMD_DEGENERATE_BUNDLE;
    case ErrorCode::OrderMismatch: return TORUSMD_ORDER_MISMATCH;
    case ErrorCode::Overflow: return TORUSMD_OVERFLOW;
    case ErrorCode::NonRationalTwist: return TORUSMD_NON_RATIONAL_TWIST;
    case ErrorCode::InternalInconsistency: return TORUSMD_INTERNAL_INCONSISTENCY;
    case ErrorCode::BijectionFailure: return TORUSMD_BIJECTION_FAILURE;
    }
    return TORUSMD_INTERNAL_INCONSISTENCY;
}

torusmd_status fail(torusmd_status status, std::string message) {
    last_error = {status, std::move(message)};
    return status;
}

// Runs body, mapping exceptions to status codes and the thread-local error.
template <class F>
torusmd_status guarded(F&& body) {
    try {
        last_error = {};
        return body();
    } catch (const Error& e) {
        return fail(status_of(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(TORUSMD_OUT_OF_MEMORY, "out of memory");
    } catch (const std::exception& e) {
        return fail(TORUSMD_INTERNAL_INCONSISTENCY, e.what());
    }
}

char* copy_out(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

struct Options {
    Format format = Format::Json;
    int epsilon = 1;
    std::optional<Metadata> meta;
};

Options read_options(const torusmd_options* opts) {
    Options o;
    if (!opts) return o;
    switch (opts->format) {
    case TORUSMD_FORMAT_JSON: o.format = Format::Json; break;
    case TORUSMD_FORMAT_CSV: o.format = Format::Csv; break;
    case TORUSMD_FORMAT_LATEX: o.format = Format::Latex; break;
    case TORUSMD_FORMAT_PRETTY: o.format = Format::Pretty; break;
    default: throw Error(ErrorCode::InvalidInput, "unknown output format");
    }
    if (opts->epsilon != 1 && opts->epsilon != -1) throw Error(ErrorCode::InvalidInput, "epsilon must be +1 or -1");
    o.epsilon = opts->epsilon;
    if (opts->generated_at) o.meta = Metadata{opts->generated_at};
    return o;
}

void require(const void* p, const char* what) {
    if (!p) throw Error(ErrorCode::InvalidInput, std::string(what) + " must not be NULL");
}

torusmd_status report_out(const VerificationReport& report, const Options& o, char** out) {
    *out = copy_out(render_report(report, o.format, o.meta));
    return report.passed() ? TORUSMD_OK : TORUSMD_VERIFICATION_FAILED;
}

} // namespace

extern "C" {

void torusmd_options_init(torusmd_options* opts) {
    if (!opts) return;
    opts->format = TORUSMD_FORMAT_JSON;
    opts->epsilon = 1;
    opts->generated_at = nullptr;
}

torusmd_status torusmd_bundle_create(int64_t a, int64_t b, int64_t c, int64_t d, torusmd_bundle** out) {
    return guarded([&] {
        require(out, "out");
        *out = nullptr;
        *out = new torusmd_bundle{Monodromy::validate(a, b, c, d)};
        return TORUSMD_OK;
    });
}

void torusmd_bundle_free(torusmd_bundle* bundle) { delete bundle; }

torusmd_status torusmd_bundle_order(const torusmd_bundle* bundle, int64_t* out) {
    return guarded([&] {
        require(bundle, "bundle");
        require(out, "out");
        *out = compute_invariants(bundle->monodromy).order;
        return TORUSMD_OK;
    });
}

torusmd_status torusmd_analyze(const torusmd_bundle* bundle, const torusmd_options* opts, char** out) {
    return guarded([&] {
        require(bundle, "bundle");
        require(out, "out");
        *out = nullptr;
        const Options o = read_options(opts);
        *out = copy_out(render_analysis(analyze(bundle->monodromy, o.epsilon), o.format, o.meta));
        return TORUSMD_OK;
    });
}

torusmd_status torusmd_verify(const torusmd_bundle* bundle, const torusmd_options* opts, char** out) {
    return guarded([&] {
        require(bundle, "bundle");
        require(out, "out");
        *out = nullptr;
        const Options o = read_options(opts);
        return report_out(verify_bundle(bundle->monodromy, o.epsilon), o, out);
    });
}

torusmd_status torusmd_oracle(const torusmd_bundle* bundle, const torusmd_options* opts, char** out) {
    return guarded([&] {
        require(bundle, "bundle");
        require(out, "out");
        *out = nullptr;
        const Options o = read_options(opts);
        *out = copy_out(render_oracle(bundle->monodromy, o.format, o.meta));
        return TORUSMD_OK;
    });
}

torusmd_status torusmd_conjugate(const torusmd_bundle* bundle, int64_t ba, int64_t bb, int64_t bc, int64_t bd,
                                 const torusmd_options* opts, char** out) {
    return guarded([&] {
        require(bundle, "bundle");
        require(out, "out");
        *out = nullptr;
        const Options o = read_options(opts);
        VerificationReport report = verify_bundle(bundle->monodromy, o.epsilon);
        for (CheckResult& c : check_conjugation(bundle->monodromy, {ba, bb, bc, bd}))
            report.checks.push_back(std::move(c));
        return report_out(report, o, out);
    });
}

torusmd_status torusmd_batch(int64_t entry_bound, int64_t trace_range, int threads, const torusmd_options* opts,
                             torusmd_sink sink, void* user) {
    return guarded([&] {
        require(reinterpret_cast<const void*>(sink), "sink");
        const Options o = read_options(opts);
        BatchConfig cfg{entry_bound, trace_range, o.epsilon, threads};
        const std::string header = batch_header(o.format);
        // Validate bounds before the header goes out.
        const bool empty = enumerate_sol(entry_bound, trace_range).empty();
        if (!header.empty()) sink(header.data(), header.size(), user);
        if (empty) return TORUSMD_OK;
        const BatchAggregate agg = run_batch(cfg, [&](const BatchRow& row) {
            const std::string line = render_batch_row(row, o.format);
            sink(line.data(), line.size(), user);
        });
        const std::string tail = render_aggregate(agg, o.format);
        sink(tail.data(), tail.size(), user);
        return agg.ok() ? TORUSMD_OK : TORUSMD_VERIFICATION_FAILED;
    });
}

torusmd_status torusmd_table(int64_t entry_bound, int64_t trace_range, int threads, const torusmd_options* opts,
                             char** out) {
    return guarded([&] {
        require(out, "out");
        *out = nullptr;
        const Options o = read_options(opts);
        const TableSummary table = build_table({entry_bound, trace_range, o.epsilon, threads});
        *out = copy_out(render_table(table, o.format, o.meta));
        return table.ok() ? TORUSMD_OK : TORUSMD_VERIFICATION_FAILED;
    });
}

torusmd_status torusmd_error_json(char** out) {
    if (!out) return TORUSMD_INVALID_INPUT;
    const LastError e = last_error;
    ErrorCode code = ErrorCode::InternalInconsistency;
    for (ErrorCode c : {ErrorCode::InvalidInput, ErrorCode::DeterminantError, ErrorCode::NotSolError,
                        ErrorCode::DegenerateBundle, ErrorCode::OrderMismatch, ErrorCode::Overflow,
                        ErrorCode::NonRationalTwist, ErrorCode::InternalInconsistency, ErrorCode::BijectionFailure})
        if (status_of(c) == e.status) code = c;
    try {
        *out = copy_out(render_error(code, e.message));
    } catch (...) {
        *out = nullptr;
        return TORUSMD_OUT_OF_MEMORY;
    }
    return TORUSMD_OK;
}

void torusmd_string_free(char* s) { std::free(s); }

const char* torusmd_last_error(void) { return last_error.message.c_str(); }

const char* torusmd_status_name(torusmd_status status) {
    switch (status) {
    case TORUSMD_OK: return "Ok";
    case TORUSMD_VERIFICATION_FAILED: return "VerificationFailed";
    case TORUSMD_INVALID_INPUT: return "InvalidInput";
    case TORUSMD_DETERMINANT_ERROR: return "DeterminantError";
    case TORUSMD_NOT_SOL_ERROR: return "NotSolError";
    case TORUSMD_DEGENERATE_BUNDLE: return "DegenerateBundle";
    case TORUSMD_ORDER_MISMATCH: return "OrderMismatch";
    case TORUSMD_OVERFLOW: return "Overflow";
    case TORUSMD_NON_RATIONAL_TWIST: return "NonRationalTwist";
    case TORUSMD_INTERNAL_INCONSISTENCY: return "InternalInconsistency";
    case TORUSMD_BIJECTION_FAILURE: return "BijectionFailure";
    case TORUSMD_OUT_OF_MEMORY: return "OutOfMemory";
    }
    return "Unknown";
}

const char* torusmd_version(void) { return kVersion; }

int torusmd_schema_version(void) { return kSchemaVersion; }

} // extern "C"
