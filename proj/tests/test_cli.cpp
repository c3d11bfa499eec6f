#include "doctest.h"
#include "json.hpp"

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#ifndef TORUSMD_CLI_PATH
#error "TORUSMD_CLI_PATH must name the CLI binary"
#endif

using Json = nlohmann::ordered_json;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

// stdout only; stderr goes to /dev/null.
Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + "'" TORUSMD_CLI_PATH "' " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    Run r;
    char buf[4096];
    for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("torusmd_cli_test_" + name);
}

} // namespace

TEST_SUITE("cli") {
    TEST_CASE("exit codes") {
        CHECK(run("analyze --matrix 2,1,1,1 --format json").code == 0);
        CHECK(run("verify --matrix 3,1,2,1").code == 0);
        CHECK(run("verify --matrix -7,4,-2,1").code == 0);

        const Run not_sol = run("analyze --matrix 1,0,0,1");
        CHECK(not_sol.code == 2);
        CHECK(Json::parse(not_sol.out)["error"]["code"] == "NotSolError");
        const Run det = run("verify --matrix 2,1,1,2");
        CHECK(det.code == 2);
        CHECK(Json::parse(det.out)["error"]["code"] == "DeterminantError");

        for (const char* bad : {"analyze --matrix 1,2,3", "analyze --matrix a,b,c,d", "analyze",
                                "analyze --matrix 2,1,1,1 --format xml", "analyze --matrix 2,1,1,1 --epsilon 2",
                                "frobnicate", "batch --entry-bound 0", "verify --matrix 2,1,1,1 --conjugate 2,0,0,1"}) {
            const Run r = run(bad);
            INFO(bad);
            CHECK(r.code == 2);
            CHECK(Json::parse(r.out).contains("error"));
        }
    }

    TEST_CASE("degenerate bundle exits 0 with a warning") {
        const Run r = run("analyze --matrix -2,1,1,-1");
        CHECK(r.code == 0);
        CHECK(Json::parse(r.out)["warnings"].size() == 1);
        CHECK(run("verify --matrix -2,1,1,-1").code == 0);
        const Run o = run("oracle --matrix -2,1,1,-1");
        CHECK(Json::parse(o.out)["solutions"].size() == 1);
    }

    TEST_CASE("epsilon = -1 entry") {
        const Run r = run("verify --matrix 5,1,4,1 --epsilon -1");
        CHECK(r.code == 0);
        CHECK(r.out.find("theorem.s_equal.epsilon_minus") != std::string::npos);
    }

    TEST_CASE("formats") {
        CHECK(run("analyze --matrix 2,1,1,1 --format latex").out.find("\\begin{tabular}") != std::string::npos);
        CHECK(run("analyze --matrix 2,1,1,1 --format csv").code == 0);
        CHECK(run("verify --matrix 2,1,1,1 --format pretty").out.find("PASSED") != std::string::npos);
        CHECK(run("table --format latex --entry-bound 6 --trace-range 6").out.find("\\end{tabular}") !=
              std::string::npos);
    }

    TEST_CASE("byte-identical output and JSON round trip") {
        for (const char* m : {"2,1,1,1", "5,1,4,1", "-7,4,-2,1"}) {
            const std::string args = std::string("analyze --matrix=") + m;
            const Run a = run(args), b = run(args);
            CHECK(a.out == b.out);
            CHECK(Json::parse(a.out).dump(2) + "\n" == a.out);
            const Run v = run(std::string("verify --matrix=") + m);
            CHECK(Json::parse(v.out).dump(2) + "\n" == v.out);
        }
        const Run meta = run("analyze --matrix 2,1,1,1 --metadata");
        CHECK(Json::parse(meta.out)["metadata"].contains("generated_at"));
        CHECK_FALSE(Json::parse(run("analyze --matrix 2,1,1,1").out).contains("metadata"));
    }

    TEST_CASE("matrix file and output file") {
        const auto in = temp_file("matrix.json"), out = temp_file("out.json");
        const std::string flag = run("analyze --matrix 3,1,2,1").out;
        for (const char* body : {"[3,1,2,1]", "[[3,1],[2,1]]", "{\"matrix\": [3,1,2,1]}"}) {
            std::ofstream(in) << body;
            CHECK(run("analyze --matrix-file '" + in.string() + "'").out == flag);
        }
        std::ofstream(in) << "[3,1,2]";
        CHECK(run("analyze --matrix-file '" + in.string() + "'").code == 2);
        CHECK(run("analyze --matrix 3,1,2,1 --matrix-file '" + in.string() + "'").code == 2);

        CHECK(run("analyze --matrix 3,1,2,1 --output '" + out.string() + "'").out.empty());
        std::ifstream f(out);
        std::stringstream ss;
        ss << f.rdbuf();
        CHECK(ss.str() == flag);
        std::filesystem::remove(in);
        std::filesystem::remove(out);
    }

    TEST_CASE("oracle and analyze agree on shared fields") {
        for (const char* m : {"2,1,1,1", "5,2,2,1", "5,1,4,1", "-7,4,-2,1", "3,1,2,1"}) {
            INFO(m);
            const Json oracle = Json::parse(run(std::string("oracle --matrix=") + m).out);
            const Json analysis = Json::parse(run(std::string("analyze --matrix=") + m).out);
            const std::int64_t n = analysis["bundle"]["N"];
            std::map<std::pair<std::int64_t, std::int64_t>, Json> by_kl;
            for (const Json& o : analysis["objects"]) by_kl[{o["kl"][0], o["kl"][1]}] = o;
            std::set<std::pair<std::int64_t, std::int64_t>> seen;
            for (const Json& s : oracle["solutions"]) {
                const std::int64_t k = s["kl"][0], l = s["kl"][1];
                auto it = by_kl.find({k, l});
                if (it == by_kl.end()) it = by_kl.find({(n - k) % n, (n - l) % n});
                REQUIRE(it != by_kl.end());
                seen.insert(it->first);
                CHECK(s["qtilde"] == it->second["qtilde"]);
                CHECK(s["chern_simons"] == it->second["chern_simons"]);
                CHECK(s["torsion"] == it->second["torsion"]);
            }
            CHECK(seen.size() == by_kl.size());
        }
    }

    TEST_CASE("batch sweep") {
        const Run csv = run("batch --format csv");
        CHECK(csv.code == 0);
        std::istringstream in(csv.out);
        std::string line, last;
        bool negative = false, positive = false;
        std::getline(in, line);
        CHECK(line.rfind("a,b,c,d,trace,", 0) == 0);
        while (std::getline(in, line)) {
            last = line;
            if (line[0] == '#') continue;
            CHECK((line.find(",pass,") != std::string::npos || line.find(",degenerate,") != std::string::npos));
            std::istringstream fields(line);
            std::string f;
            for (int i = 0; i < 5; ++i) std::getline(fields, f, ',');
            (std::stoll(f) < 0 ? negative : positive) = true;
        }
        CHECK(negative);
        CHECK(positive);
        CHECK(last.find("failed=0 degenerate=16 errors=0") != std::string::npos);

        const Run one = run("batch --format json --entry-bound 6", "TORUSMD_THREADS=1");
        const Run many = run("batch --format json --entry-bound 6", "TORUSMD_THREADS=8");
        CHECK(one.out == many.out);
        CHECK(run("batch --format json --entry-bound 6 --threads 3").out == one.out);

        const Run empty = run("batch --trace-range 2 --format csv");
        CHECK(empty.code == 0);
        CHECK(std::count(empty.out.begin(), empty.out.end(), '\n') == 1);
    }
}
