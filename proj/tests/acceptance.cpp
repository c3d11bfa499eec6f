// Acceptance gate: one PASS/FAIL line per criterion. All comparisons are
// exact (tolerance 0); floating point is never consulted.
#include "oracles.hpp"

#include "torusmd/analysis.hpp"
#include "torusmd/batch.hpp"
#include "torusmd/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

using namespace torusmd;

namespace {

constexpr std::int64_t kEntryBound = 25;
constexpr std::int64_t kTraceRange = 30;
constexpr std::uint64_t kSeed = 0x70125ULL;

struct Outcome {
    bool ok = true;
    std::string detail;
    void fail(const std::string& why) {
        if (ok) detail = why;
        ok = false;
    }
};

std::string text(const Monodromy& m) {
    return "(" + std::to_string(m.a()) + "," + std::to_string(m.b()) + "," + std::to_string(m.c()) + "," +
           std::to_string(m.d()) + ")";
}

// Test-side closed forms, written out independently of the library.
long long qhat_ref(long long a, long long b, long long c, long long d, long long mu, long long nu) {
    return c * nu * nu + (a - d) * mu * nu - b * mu * mu;
}

long long sign_ref(long long a, long long d) { return a + d + 2 > 0 ? 1 : -1; }

struct Corpus {
    std::vector<Analysis> analyses;
    std::vector<VerificationReport> reports;
};

int run_criterion(int id, const std::string& name, const std::string& tolerance, const std::function<Outcome()>& f) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = f();
    } catch (const std::exception& e) {
        out.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2d: %s  %s [tolerance: %s] (%.2fs)%s%s\n", id, out.ok ? "PASS" : "FAIL", name.c_str(),
                tolerance.c_str(), secs, out.detail.empty() ? "" : " -- ", out.detail.c_str());
    std::fflush(stdout);
    return out.ok ? 0 : 1;
}

std::string run_capture(const std::string& cmd) {
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("cannot run " + cmd);
    std::string out;
    char buf[4096];
    for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) out.append(buf, n);
    if (pclose(pipe) != 0) throw std::runtime_error("non-zero exit from " + cmd);
    return out;
}

} // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    std::printf("acceptance corpus: entries in [-%lld,%lld], 2 < |trace| <= %lld, seed %llu\n",
                (long long)kEntryBound, (long long)kEntryBound, (long long)kTraceRange, (unsigned long long)kSeed);

    Corpus corpus;
    const auto start = std::chrono::steady_clock::now();
    for (const IntMatrix2& x : enumerate_sol(kEntryBound, kTraceRange)) {
        corpus.analyses.push_back(analyze(Monodromy::validate(x)));
        corpus.reports.push_back(verify(corpus.analyses.back()));
    }
    // The library enumeration must agree with the test-side one.
    const auto ref = oracle::sol_corpus(kEntryBound, 2, kTraceRange);
    bool same_corpus = ref.size() == corpus.analyses.size();
    for (std::size_t i = 0; same_corpus && i < ref.size(); ++i) {
        const Monodromy& m = corpus.analyses[i].bundle;
        same_corpus = ref[i] == std::array<long long, 4>{m.a(), m.b(), m.c(), m.d()};
    }
    std::printf("corpus: %zu bundles (%s test-side enumeration), analysed in %.2fs\n", corpus.analyses.size(),
                same_corpus ? "matches" : "DIFFERS FROM",
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    std::fflush(stdout);

    std::mt19937_64 rng(kSeed);
    int failures = same_corpus ? 0 : 1;

    failures += run_criterion(1, "S^l = S^e and T^l = T^e entrywise on the corpus", "exact, 0", [&] {
        Outcome out;
        std::size_t compared = 0;
        for (std::size_t b = 0; b < corpus.analyses.size(); ++b) {
            const Analysis& an = corpus.analyses[b];
            if (an.degenerate()) continue;
            ++compared;
            const auto n = an.inv.order;
            const Monodromy& m = an.bundle;
            for (std::size_t i = 0; i < an.rank(); ++i) {
                for (std::size_t j = 0; j < an.rank(); ++j)
                    if (!(an.s_loops(i, j) == an.equiv.s(i, j)))
                        out.fail(text(m) + " S(" + std::to_string(i) + "," + std::to_string(j) + ")");
                if (!same_value(an.twists.theta[i], an.equiv.t[i])) out.fail(text(m) + " T(" + std::to_string(i) + ")");
                // T^e against zeta_N^qtilde from the test-side form on the lift.
                const Lift& x = an.labels.classes[i].munu;
                const long long q = oracle::mod(sign_ref(m.a(), m.d()) * qhat_ref(m.a(), m.b(), m.c(), m.d(), x.mu, x.nu), n);
                if (!same_value(an.equiv.t[i], root_of_unity(int(n), q))) out.fail(text(m) + " T vs zeta^q");
            }
            for (const char* name : {"theorem.bijection", "theorem.s_equal", "theorem.t_equal"})
                if (corpus.reports[b].find(name)->status != CheckStatus::Pass) out.fail(text(m) + " " + name);
        }
        out.detail = out.ok ? std::to_string(compared) + " non-degenerate bundles" : out.detail;
        return out;
    });

    failures += run_criterion(2, "simple object counts per parity row of (r, N/r)", "exact, 0", [&] {
        Outcome out;
        std::map<std::string, std::size_t> rows;
        for (const Analysis& an : corpus.analyses) {
            if (an.degenerate()) continue;
            const Monodromy& m = an.bundle;
            const auto sols = oracle::character_solutions(m.a(), m.b(), m.c(), m.d());
            const long long n = an.inv.order;
            const long long r = std::gcd(std::gcd(m.a() + 1, m.c()), std::gcd(m.b(), m.d() + 1));
            long long two_torsion = 0;
            for (const auto& [k, l] : sols) two_torsion += (2 * k) % n == 0 && (2 * l) % n == 0;
            const long long inv = 2 * two_torsion, two = (long long)(sols.size() - two_torsion) / 2;
            const bool ro = r % 2 == 1, co = (n / r) % 2 == 1;
            const std::string row = std::string("(") + (ro ? "o" : "e") + "," + (co ? "o" : "e") + ")";
            const long long e_inv = ro && co ? 2 : (!ro && !co ? 8 : 4);
            const long long e_two = ro && co ? (n - 1) / 2 : (!ro && !co ? n / 2 - 2 : n / 2 - 1);
            ++rows[row];
            if (inv != e_inv || two != e_two) out.fail(text(m) + " brute force vs table in row " + row);
            if ((long long)an.labels.invertible_count() != e_inv || (long long)an.labels.two_dim_count() != e_two)
                out.fail(text(m) + " label set vs table");
            long long obj_inv = 0;
            for (const SimpleObject& x : an.equiv.objects) obj_inv += x.invertible();
            if (obj_inv != e_inv || (long long)an.equiv.objects.size() - obj_inv != e_two)
                out.fail(text(m) + " equivariant objects vs table");
            if (an.inv.parity_row() != row) out.fail(text(m) + " parity row " + an.inv.parity_row());
        }
        if (!build_table({kEntryBound, kTraceRange, 1, 0}).ok()) out.fail("table summary reports a mismatch");
        if (out.ok)
            for (const auto& [row, count] : rows) out.detail += row + ":" + std::to_string(count) + " ";
        return out;
    });

    failures += run_criterion(3, "sum d^2 = D^2 = 2 Tor(chi_0) = 2N, d from torsion", "exact, 0", [&] {
        Outcome out;
        for (const Analysis& an : corpus.analyses) {
            if (an.degenerate()) continue;
            const Monodromy& m = an.bundle;
            const Rational n(an.inv.order);
            const Rational d2 = Rational(2) * n;
            if (an.twists.global_dim_sq != d2 || an.torsions.front() * Rational(2) != d2) out.fail(text(m) + " D^2");
            Rational sum(0), sum_e(0);
            for (std::size_t i = 0; i < an.rank(); ++i) {
                const bool irr = an.labels.classes[i].kind == CharKind::Irreducible;
                const Rational tor = irr ? n / Rational(4) : n;
                const Rational d(irr ? 2 : 1);
                if (an.torsions[i] != tor) out.fail(text(m) + " torsion of " + an.labels.classes[i].label());
                if (d * d * Rational(2) * tor != d2) out.fail(text(m) + " d^2 = D^2/(2 Tor)");
                if (an.twists.dims[i] != d || an.equiv.dims[i] != d) out.fail(text(m) + " d of " + an.labels.classes[i].label());
                sum = sum + an.twists.dims[i] * an.twists.dims[i];
                sum_e = sum_e + an.equiv.dims[i] * an.equiv.dims[i];
            }
            if (sum != d2 || sum_e != d2) out.fail(text(m) + " sum d^2");
        }
        return out;
    });

    failures += run_criterion(4, "quadratic form invariant under both generators of Im(g), 50 bundles x 1000 trials",
                              "exact, 0", [&] {
        Outcome out;
        std::vector<const Analysis*> pool;
        for (const Analysis& an : corpus.analyses)
            if (!an.degenerate()) pool.push_back(&an);
        std::shuffle(pool.begin(), pool.end(), rng);
        pool.resize(std::min<std::size_t>(50, pool.size()));
        if (pool.size() != 50) out.fail("sample smaller than 50");
        std::uniform_int_distribution<long long> coord(-10000, 10000);
        std::uniform_int_distribution<long long> mult(-5, 5);
        for (const Analysis* an : pool) {
            const Monodromy& m = an->bundle;
            const long long a = m.a(), b = m.b(), c = m.c(), d = m.d(), n = an->inv.order;
            const std::array<std::pair<long long, long long>, 2> gens{{{a + 1, b}, {c, d + 1}}};
            for (int trial = 0; trial < 1000; ++trial) {
                const long long mu = coord(rng), nu = coord(rng);
                const long long q0 = qhat_ref(a, b, c, d, mu, nu);
                for (const auto& [gm, gn] : gens) {
                    // Displayed step, then a random multiple of the generator.
                    if (oracle::mod(qhat_ref(a, b, c, d, mu + gm, nu + gn) - q0, n) != 0)
                        out.fail(text(m) + " qhat moves under a generator");
                    const long long t = mult(rng);
                    const Lift moved{mu + t * gm, nu + t * gn};
                    if (qtilde(m, moved) != qtilde(m, {mu, nu})) out.fail(text(m) + " library qtilde moves");
                    if (oracle::mod(qhat(m, moved) - q0, n) != 0) out.fail(text(m) + " library qhat disagrees");
                }
                // Bi-additivity of lambda in the first slot.
                const Lift x{coord(rng), coord(rng)}, y{coord(rng), coord(rng)}, z{mu, nu};
                const std::int64_t lhs = bilinear_lambda(m, {x.mu + y.mu, x.nu + y.nu}, z);
                if (oracle::mod(lhs - bilinear_lambda(m, x, z) - bilinear_lambda(m, y, z), n) != 0)
                    out.fail(text(m) + " lambda not bi-additive");
            }
        }
        return out;
    });

    failures += run_criterion(5, "solution group equals brute-force enumeration for all N <= 60", "exact set equality",
                              [&] {
        Outcome out;
        std::size_t bundles = 0;
        std::set<std::int64_t> orders;
        // The box misses odd N >= 51; companion matrices of every trace fill the gaps.
        std::vector<IntMatrix2> mats = enumerate_sol(32, 62);
        for (std::int64_t t = -62; t <= 62; ++t)
            if (std::llabs(t) > 2) {
                mats.push_back({t, -1, 1, 0});
                mats.push_back({0, 1, -1, t});
            }
        for (const IntMatrix2& x : mats) {
            const Monodromy m = Monodromy::validate(x);
            const long long n = std::llabs(m.trace() + 2);
            if (n > 60) continue;
            ++bundles;
            orders.insert(n);
            std::set<std::pair<long long, long long>> structured, brute;
            for (const Element& e : solution_group(m)) structured.insert({e.k, e.l});
            for (const Element& e : brute_force_solutions(m)) brute.insert({e.k, e.l});
            if (structured != brute || brute != oracle::character_solutions(m.a(), m.b(), m.c(), m.d()))
                out.fail(text(m));
        }
        if (orders.size() != 60) out.fail("not every N in 1..60 is represented");
        if (out.ok) out.detail = std::to_string(bundles) + " bundles (|entries| <= 32 plus companions), N = 1..60";
        return out;
    });

    failures += run_criterion(6, "balancing equation for all object pairs", "exact, 0", [&] {
        Outcome out;
        std::size_t edge_bundles = 0;
        bool z8 = false;
        for (const Analysis& an : corpus.analyses) {
            if (an.degenerate()) continue;
            const auto& e = an.equiv;
            const std::size_t rank = e.objects.size();
            edge_bundles += !e.edge_case_pairs.empty();
            const Monodromy& m = an.bundle;
            if (m.a() == 5 && m.b() == 1 && m.c() == 4 && m.d() == 1) z8 = !e.edge_case_pairs.empty();
            for (std::size_t i = 0; i < rank; ++i) {
                // Duals: i* is the unique j with N_ij^0 = 1.
                std::size_t dual = rank;
                for (std::size_t j = 0; j < rank; ++j)
                    if (e.fusion.coefficient(i, j, 0) == 1) dual = j;
                if (dual == rank) {
                    out.fail(text(m) + " no dual");
                    continue;
                }
                for (std::size_t j = 0; j < rank; ++j) {
                    CycloNum rhs = CycloNum::zero(int(an.inv.order));
                    for (std::size_t k = 0; k < rank; ++k)
                        if (const int nk = e.fusion.coefficient(dual, j, k))
                            rhs += (Rational(nk) * e.dims[k]) * e.t[k];
                    if (!(e.t[i] * e.t[j] * e.s(i, j) == rhs))
                        out.fail(text(m) + " pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
                }
            }
        }
        if (!z8) out.fail("(5,1,4,1) missing or without orbit-rule products");
        if (out.ok) out.detail = std::to_string(edge_bundles) + " bundles with orbit-rule products, incl. (5,1,4,1)";
        return out;
    });

    failures += run_criterion(7, "det S = 0 via identical X+/X- rows; h1(Z2) >= 1", "exact, 0", [&] {
        Outcome out;
        std::size_t checked = 0;
        for (const Analysis& an : corpus.analyses) {
            if (an.degenerate() || an.rank() < 2) continue;
            ++checked;
            const Monodromy& m = an.bundle;
            if (an.labels.classes[0].kind != CharKind::ReduciblePlus ||
                an.labels.classes[1].kind != CharKind::ReducibleMinus || an.labels.classes[1].kl != Element{})
                out.fail(text(m) + " X+-[0,0] not in rows 0 and 1");
            for (std::size_t j = 0; j < an.rank(); ++j)
                if (!(an.s_loops(0, j) == an.s_loops(1, j)) || !(an.equiv.s(0, j) == an.equiv.s(1, j)))
                    out.fail(text(m) + " rows 0 and 1 differ");
            const int h1 = 3 - oracle::rank_mod2({{int(oracle::mod(m.a() - 1, 2)), int(oracle::mod(m.b(), 2))},
                                                  {int(oracle::mod(m.c(), 2)), int(oracle::mod(m.d() - 1, 2))}});
            if (h1 < 1 || an.inv.h1_z2_dim != h1) out.fail(text(m) + " h1_z2_dim");
            if (!corpus.reports[&an - corpus.analyses.data()].summary.det_s_zero) out.fail(text(m) + " summary");
        }
        if (out.ok) out.detail = std::to_string(checked) + " bundles of rank >= 2";
        return out;
    });

    failures += run_criterion(8, "odd N, r = 1: rank (N+3)/2 and the (o,o) row data", "exact, 0", [&] {
        Outcome out;
        std::size_t checked = 0;
        for (const Analysis& an : corpus.analyses) {
            const long long n = an.inv.order;
            if (an.degenerate() || n % 2 == 0 || an.inv.r != 1) continue;
            ++checked;
            const Monodromy& m = an.bundle;
            if ((long long)an.rank() != (n + 3) / 2) out.fail(text(m) + " rank");
            const CycloNum one = CycloNum::from_rational(int(n), Rational(1));
            for (std::size_t i = 0; i < an.rank(); ++i) {
                const bool inv = i < 2;
                if (an.equiv.objects[i].invertible() != inv) out.fail(text(m) + " object order");
                if (inv && !same_value(an.equiv.t[i], one)) out.fail(text(m) + " invertible twist");
                // S entries: 1 between invertibles, 2 between an invertible and a Y.
                for (std::size_t j = 0; j < an.rank(); ++j) {
                    const bool jinv = j < 2;
                    if (inv && !same_value(an.equiv.s(i, j), CycloNum::from_rational(int(n), Rational(jinv ? 1 : 2))))
                        out.fail(text(m) + " S row of an invertible");
                    if (!inv && !jinv) {
                        const auto& g = an.equiv.objects[i].element;
                        const auto& h = an.equiv.objects[j].element;
                        const std::int64_t l = an.group->lambda(g, h);
                        const CycloNum want = Rational(2) * (root_of_unity(int(n), l) + root_of_unity(int(n), -l));
                        if (!(an.equiv.s(i, j) == want)) out.fail(text(m) + " Y-Y entry");
                    }
                }
            }
            if (corpus.reports[&an - corpus.analyses.data()].find("odd_trace.specialization")->status !=
                CheckStatus::Pass)
                out.fail(text(m) + " report");
        }
        if (checked == 0) out.fail("no odd-N, r = 1 bundles");
        if (out.ok) out.detail = std::to_string(checked) + " bundles";
        return out;
    });

    failures += run_criterion(9, "sorted (d, theta) multisets equal for A and B A B^-1, 20 bundles x 200 B",
                              "exact, 0", [&] {
        Outcome out;
        std::vector<const Analysis*> pool;
        for (const Analysis& an : corpus.analyses)
            if (!an.degenerate()) pool.push_back(&an);
        std::shuffle(pool.begin(), pool.end(), rng);
        pool.resize(20);
        const std::array<IntMatrix2, 4> gens{{{1, 1, 0, 1}, {1, -1, 0, 1}, {1, 0, 1, 1}, {1, 0, -1, 1}}};
        std::uniform_int_distribution<int> pick(0, 3), length(1, 4), flip(0, 1);
        auto multiset = [](const Analysis& x, bool negate) {
            std::vector<std::pair<Rational, Rational>> out;
            for (std::size_t i = 0; i < x.rank(); ++i) {
                const Rational phase = x.chern_simons[i] - x.chern_simons.front();
                out.push_back({x.twists.dims[i], (negate ? -phase : phase).mod1()});
            }
            std::sort(out.begin(), out.end());
            return out;
        };
        int dets[2] = {0, 0};
        for (const Analysis* an : pool) {
            for (int trial = 0; trial < 200; ++trial) {
                IntMatrix2 b = IntMatrix2::identity();
                for (int s = length(rng); s > 0; --s) b = b * gens[std::size_t(pick(rng))];
                const bool reflect = flip(rng) == 1;
                if (reflect) b = b * IntMatrix2{1, 0, 0, -1};
                ++dets[reflect];
                const Monodromy conj = Monodromy::validate(b * an->bundle.matrix() * b.unimodular_inverse());
                const Analysis other = analyze(conj);
                if (multiset(*an, reflect) != multiset(other, false)) out.fail(text(an->bundle) + " vs " + text(conj));
                for (const CheckResult& c : check_conjugation(an->bundle, b))
                    if (c.status != CheckStatus::Pass) out.fail(text(an->bundle) + " " + c.name);
            }
        }
        if (dets[0] == 0 || dets[1] == 0) out.fail("both determinants not sampled");
        if (out.ok) out.detail = std::to_string(dets[0]) + " with det +1, " + std::to_string(dets[1]) + " with det -1";
        return out;
    });

    failures += run_criterion(10, "two runs of analyze are byte-identical", "byte equality", [&] {
        Outcome out;
        if (cli.empty()) {
            out.fail("no CLI path given");
            return out;
        }
        std::size_t runs = 0;
        for (const char* matrix : {"2,1,1,1", "5,1,4,1", "-7,4,-2,1", "13,5,-8,-3"})
            for (const char* format : {"json", "csv", "latex", "pretty"}) {
                const std::string cmd = "'" + cli + "' analyze --matrix=" + matrix + " --format " + format;
                const std::string first = run_capture(cmd), second = run_capture(cmd);
                if (first.empty() || first != second) out.fail(std::string(matrix) + " " + format);
                ++runs;
            }
        if (out.ok) out.detail = std::to_string(runs) + " input/format pairs via the CLI";
        return out;
    });

    std::printf("acceptance: %s\n", failures == 0 ? "ALL PASS" : "FAILURES");
    return failures == 0 ? 0 : 1;
}
