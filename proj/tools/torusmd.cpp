// Command-line front end over the torusmd C API.
#include "torusmd.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <array>
#include <chrono>
#include <cstring>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

enum Exit { kPass = 0, kVerificationFailed = 1, kInvalidInput = 2, kInternal = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Settings {
    std::string matrix;
    std::string matrix_file;
    std::string conjugate;
    std::string format = "json";
    int epsilon = 1;
    std::string output;
    bool metadata = false;
    std::int64_t trace_range = 7;
    std::int64_t entry_bound = 10;
    int threads = 0;
};

std::string error_object(const std::string& code, const std::string& message) {
    return nlohmann::ordered_json{{"schema_version", torusmd_schema_version()},
                                  {"error", {{"code", code}, {"message", message}}}}
               .dump() +
           "\n";
}

std::int64_t parse_int(const std::string& s) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        throw UsageError("not an integer: '" + s + "'");
    }
    if (used != s.size()) throw UsageError("not an integer: '" + s + "'");
    return v;
}

std::array<std::int64_t, 4> parse_four(const std::string& text, const char* what) {
    std::vector<std::int64_t> xs;
    std::stringstream in(text);
    for (std::string item; std::getline(in, item, ',');) xs.push_back(parse_int(item));
    if (xs.size() != 4 || text.empty() || text.back() == ',')
        throw UsageError(std::string(what) + " needs four comma-separated integers a,b,c,d");
    return {xs[0], xs[1], xs[2], xs[3]};
}

// Accepts [a,b,c,d], [[a,b],[c,d]] or {"matrix": either}.
std::array<std::int64_t, 4> read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read matrix file '" + path + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
        if (j.is_object()) j = j.at("matrix");
        std::vector<std::int64_t> xs;
        if (j.is_array() && j.size() == 2 && j[0].is_array()) {
            for (const auto& row : j) {
                if (row.size() != 2) throw UsageError("matrix rows must have two entries");
                for (const auto& x : row) xs.push_back(x.get<std::int64_t>());
            }
        } else {
            xs = j.get<std::vector<std::int64_t>>();
        }
        if (xs.size() != 4) throw UsageError("matrix file must hold four integers");
        return {xs[0], xs[1], xs[2], xs[3]};
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("malformed matrix file '" + path + "': " + e.what());
    }
}

torusmd_format parse_format(const std::string& name) {
    if (name == "json") return TORUSMD_FORMAT_JSON;
    if (name == "csv") return TORUSMD_FORMAT_CSV;
    if (name == "latex") return TORUSMD_FORMAT_LATEX;
    if (name == "pretty") return TORUSMD_FORMAT_PRETTY;
    throw UsageError("unknown format '" + name + "' (json, csv, latex, pretty)");
}

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

class Sink {
  public:
    explicit Sink(const std::string& path) {
        if (path.empty()) return;
        file_.open(path, std::ios::binary);
        if (!file_) throw UsageError("cannot open output file '" + path + "'");
    }
    void write(const char* data, std::size_t len) {
        std::ostream& out = file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout;
        out.write(data, std::streamsize(len));
        out.flush();
    }

  private:
    std::ofstream file_;
};

int exit_for(torusmd_status status) {
    switch (status) {
    case TORUSMD_OK: return kPass;
    case TORUSMD_VERIFICATION_FAILED:
    case TORUSMD_BIJECTION_FAILURE: return kVerificationFailed;
    case TORUSMD_INVALID_INPUT:
    case TORUSMD_DETERMINANT_ERROR:
    case TORUSMD_NOT_SOL_ERROR:
    case TORUSMD_OVERFLOW: return kInvalidInput;
    default: return kInternal;
    }
}

// Prints the library's error object on stdout and a one-line message on stderr.
int library_failure(torusmd_status status) {
    char* json = nullptr;
    if (torusmd_error_json(&json) == TORUSMD_OK) {
        std::cout << json;
        torusmd_string_free(json);
    }
    std::cerr << "torusmd: " << torusmd_status_name(status) << ": " << torusmd_last_error() << "\n";
    return exit_for(status);
}

struct BundleHandle {
    torusmd_bundle* ptr = nullptr;
    ~BundleHandle() { torusmd_bundle_free(ptr); }
};

int run(const std::string& command, const Settings& s) {
    torusmd_options opts;
    torusmd_options_init(&opts);
    opts.format = parse_format(s.format);
    if (s.epsilon != 1 && s.epsilon != -1) throw UsageError("--epsilon must be 1 or -1");
    opts.epsilon = s.epsilon;
    const std::string stamp = s.metadata ? utc_now() : std::string();
    if (s.metadata) opts.generated_at = stamp.c_str();

    if (command == "batch" || command == "table") {
        if (s.entry_bound <= 0 || s.trace_range <= 0) throw UsageError("--entry-bound and --trace-range must be positive");
        if (s.threads < 0) throw UsageError("--threads must be non-negative");
        Sink sink(s.output);
        torusmd_status st;
        if (command == "batch") {
            st = torusmd_batch(
                s.entry_bound, s.trace_range, s.threads, &opts,
                [](const char* chunk, size_t len, void* user) { static_cast<Sink*>(user)->write(chunk, len); }, &sink);
        } else {
            char* out = nullptr;
            st = torusmd_table(s.entry_bound, s.trace_range, s.threads, &opts, &out);
            if (out) {
                sink.write(out, std::strlen(out));
                torusmd_string_free(out);
            }
        }
        if (st != TORUSMD_OK && st != TORUSMD_VERIFICATION_FAILED) return library_failure(st);
        return exit_for(st);
    }

    if (s.matrix.empty() == s.matrix_file.empty()) throw UsageError("give exactly one of --matrix or --matrix-file");
    const auto m = s.matrix.empty() ? read_matrix_file(s.matrix_file) : parse_four(s.matrix, "--matrix");
    std::optional<std::array<std::int64_t, 4>> conj;
    if (!s.conjugate.empty()) conj = parse_four(s.conjugate, "--conjugate");

    BundleHandle bundle;
    if (torusmd_status st = torusmd_bundle_create(m[0], m[1], m[2], m[3], &bundle.ptr); st != TORUSMD_OK)
        return library_failure(st);
    std::int64_t order = 0;
    torusmd_bundle_order(bundle.ptr, &order);
    if (order == 1)
        std::cerr << "torusmd: warning: DegenerateBundle: N = 1, the data is empty apart from the trivial character\n";

    Sink sink(s.output);
    char* out = nullptr;
    torusmd_status st;
    if (command == "analyze")
        st = torusmd_analyze(bundle.ptr, &opts, &out);
    else if (command == "oracle")
        st = torusmd_oracle(bundle.ptr, &opts, &out);
    else if (conj)
        st = torusmd_conjugate(bundle.ptr, (*conj)[0], (*conj)[1], (*conj)[2], (*conj)[3], &opts, &out);
    else
        st = torusmd_verify(bundle.ptr, &opts, &out);
    if (!out) return library_failure(st);
    sink.write(out, std::strlen(out));
    torusmd_string_free(out);
    return exit_for(st);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Modular data of SOL torus bundles: analysis, verification and batch sweeps"};
    app.set_version_flag("--version", torusmd_version());
    app.require_subcommand(1);
    Settings s;

    auto common = [&](CLI::App* sub, bool matrix) {
        sub->add_option("--format,-f", s.format, "json, csv, latex or pretty")->capture_default_str();
        sub->add_option("--epsilon", s.epsilon, "sign branch, 1 or -1")->capture_default_str();
        sub->add_option("--output,-o", s.output, "write to this file instead of stdout");
        if (matrix) {
            sub->add_option("--matrix,-m", s.matrix, "monodromy a,b,c,d (row-major)");
            sub->add_option("--matrix-file", s.matrix_file, "JSON file with [a,b,c,d] or {\"matrix\": ...}");
        } else {
            sub->add_option("--entry-bound", s.entry_bound, "bound on |entries|")->capture_default_str();
            sub->add_option("--trace-range", s.trace_range, "bound on |trace|")->capture_default_str();
            sub->add_option("--threads", s.threads, "worker threads, 0 = TORUSMD_THREADS or all cores");
        }
    };
    CLI::App* analyze = app.add_subcommand("analyze", "full modular data of one bundle");
    CLI::App* verify = app.add_subcommand("verify", "check the loop-operator and equivariant data agree");
    CLI::App* oracle = app.add_subcommand("oracle", "brute-force character solutions of one bundle");
    CLI::App* batch = app.add_subcommand("batch", "verify every bundle in a range");
    CLI::App* table = app.add_subcommand("table", "object counts per parity row over a range");
    for (CLI::App* sub : {analyze, verify, oracle}) common(sub, true);
    for (CLI::App* sub : {batch, table}) common(sub, false);
    // Batch streams rows only, so it has no metadata header.
    for (CLI::App* sub : {analyze, verify, oracle, table})
        sub->add_flag("--metadata", s.metadata, "add a generated_at metadata header");
    verify->add_option("--conjugate", s.conjugate, "also compare against B A B^-1 for B = a,b,c,d");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cout << error_object("InvalidInput", e.what());
        std::cerr << "torusmd: " << e.what() << "\n";
        return kInvalidInput;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        return run(command, s);
    } catch (const UsageError& e) {
        std::cout << error_object("InvalidInput", e.what());
        std::cerr << "torusmd: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const std::exception& e) {
        std::cout << error_object("InternalInconsistency", e.what());
        std::cerr << "torusmd: " << e.what() << "\n";
        return kInternal;
    }
}
