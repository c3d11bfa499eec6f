#include "torusmd/verify.hpp"

#include "torusmd/error.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace torusmd {

namespace {

constexpr std::int64_t kOracleLimit = 2048;

const char* const kEpsilonMinus = "theorem.s_equal.epsilon_minus";

CheckResult pass(std::string name, std::string note = {}) {
    return {std::move(name), CheckStatus::Pass, false, std::nullopt, std::move(note)};
}

CheckResult skip(std::string name, std::string note) {
    return {std::move(name), CheckStatus::Skip, false, std::nullopt, std::move(note)};
}

CheckResult fail(std::string name, Witness w) {
    return {std::move(name), CheckStatus::Fail, false, std::move(w), {}};
}

std::string join(const std::vector<Element>& xs) {
    std::ostringstream out;
    for (std::size_t i = 0; i < xs.size(); ++i)
        out << (i ? " " : "") << "(" << xs[i].k << "," << xs[i].l << ")";
    return out.str();
}

std::int64_t mod_n(std::int64_t x, std::int64_t n) {
    const std::int64_t r = x % n;
    return r < 0 ? r + n : r;
}

CheckResult compare_matrices(std::string name, const SquareMatrix<CycloNum>& expected,
                             const SquareMatrix<CycloNum>& actual, const Analysis& a) {
    for (std::size_t i = 0; i < expected.size(); ++i)
        for (std::size_t j = 0; j < expected.size(); ++j)
            if (!(expected(i, j) == actual(i, j)))
                return fail(std::move(name), {{i, j}, expected(i, j).to_string(), actual(i, j).to_string(),
                                              a.labels.classes[i].label() + " x " + a.labels.classes[j].label()});
    return pass(std::move(name));
}

CheckResult check_bijection(const Analysis& a) {
    const auto& objects = a.equiv.objects;
    const auto& classes = a.labels.classes;
    if (objects.size() != classes.size())
        throw Error(ErrorCode::BijectionFailure, std::to_string(classes.size()) + " characters vs " +
                                                     std::to_string(objects.size()) + " simple objects");
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const CharClass& x = classes[i];
        const SimpleObject& y = objects[i];
        const int sign = x.kind == CharKind::ReduciblePlus ? 1 : (x.kind == CharKind::ReducibleMinus ? -1 : 0);
        if (x.kl != y.element || x.reducible() != y.invertible() || sign != y.sign)
            throw Error(ErrorCode::BijectionFailure,
                        "position " + std::to_string(i) + ": " + x.label() + " vs " + y.label());
    }
    return pass("theorem.bijection", std::to_string(classes.size()) + " classes matched by canonical order");
}

CheckResult check_t(const Analysis& a) {
    for (std::size_t i = 0; i < a.rank(); ++i)
        if (!same_value(a.twists.theta[i], a.equiv.t[i]))
            return fail("theorem.t_equal", {{i}, a.twists.theta[i].to_string(), a.equiv.t[i].to_string(),
                                            a.labels.classes[i].label() + ": theta^l vs T^e"});
    return pass("theorem.t_equal");
}

CheckResult check_symmetric(const Analysis& a) {
    for (const auto* s : {&a.s_loops, &a.equiv.s})
        for (std::size_t i = 0; i < s->size(); ++i)
            for (std::size_t j = i + 1; j < s->size(); ++j)
                if (!((*s)(i, j) == (*s)(j, i)))
                    return fail("axiom.s_symmetric", {{i, j}, (*s)(i, j).to_string(), (*s)(j, i).to_string(),
                                                      s == &a.s_loops ? "S^l" : "S^e"});
    return pass("axiom.s_symmetric");
}

CheckResult check_real(const Analysis& a) {
    for (const auto* s : {&a.s_loops, &a.equiv.s})
        for (std::size_t i = 0; i < s->size(); ++i)
            for (std::size_t j = 0; j < s->size(); ++j) {
                const CycloNum conj = (*s)(i, j).conjugate();
                if (!(conj == (*s)(i, j)))
                    return fail("axiom.s_real", {{i, j}, (*s)(i, j).to_string(), conj.to_string(),
                                                 s == &a.s_loops ? "S^l vs its conjugate" : "S^e vs its conjugate"});
            }
    return pass("axiom.s_real");
}

CheckResult check_first_column(const Analysis& a) {
    const int n = int(a.inv.order);
    for (const auto* s : {&a.s_loops, &a.equiv.s})
        for (std::size_t i = 0; i < a.rank(); ++i) {
            const CycloNum d = CycloNum::from_rational(n, a.twists.dims[i]);
            if (!((*s)(i, 0) == d))
                return fail("axiom.first_column_dims",
                            {{i, 0}, d.to_string(), (*s)(i, 0).to_string(), s == &a.s_loops ? "S^l" : "S^e"});
        }
    return pass("axiom.first_column_dims");
}

CheckResult check_dims(const Analysis& a) {
    for (std::size_t i = 0; i < a.rank(); ++i) {
        const Rational expected = a.labels.classes[i].reducible() ? 1 : 2;
        if (a.twists.dims[i] != expected || a.equiv.dims[i] != expected)
            return fail("axiom.dims_torsion", {{i}, expected.to_string(), a.twists.dims[i].to_string(),
                                               "d from D^2 / (2 Tor) vs object dimension " +
                                                   a.equiv.dims[i].to_string()});
    }
    return pass("axiom.dims_torsion");
}

CheckResult check_global_dimension(const Analysis& a) {
    Rational total = 0;
    for (const Rational& d : a.equiv.dims) total = total + d * d;
    const Rational two_n(2 * a.inv.order);
    const Rational from_torsion = Rational(2) * a.torsions.front();
    if (total != two_n || a.twists.global_dim_sq != two_n || from_torsion != two_n)
        return fail("axiom.global_dimension",
                    {{}, two_n.to_string(), total.to_string(),
                     "sum d^2 = " + total.to_string() + ", D^2 = " + a.twists.global_dim_sq.to_string() +
                         ", 2 Tor(chi_0) = " + from_torsion.to_string()});
    return pass("axiom.global_dimension");
}

CheckResult check_fusion_ring(const Analysis& a) {
    const FusionTensor& f = a.equiv.fusion;
    const std::size_t rank = f.rank();
    for (std::size_t i = 0; i < rank; ++i) {
        if (f.products(i, 0).size() != 1 || f.coefficient(i, 0, i) != 1)
            return fail("axiom.fusion_ring", {{i, 0}, "1", std::to_string(f.coefficient(i, 0, i)), "unit law"});
        for (std::size_t j = 0; j < rank; ++j) {
            Rational total = 0;
            for (const auto& t : f.products(i, j)) {
                if (t.multiplicity < 0)
                    return fail("axiom.fusion_ring", {{i, j, t.object}, ">= 0", std::to_string(t.multiplicity),
                                                      "negative multiplicity"});
                if (f.coefficient(j, i, t.object) != t.multiplicity)
                    return fail("axiom.fusion_ring",
                                {{i, j, t.object}, std::to_string(t.multiplicity),
                                 std::to_string(f.coefficient(j, i, t.object)), "commutativity N_ij^k = N_ji^k"});
                total = total + Rational(t.multiplicity) * a.equiv.dims[t.object];
            }
            const int unit = f.coefficient(i, j, 0);
            if (unit != (i == j ? 1 : 0))
                return fail("axiom.fusion_ring",
                            {{i, j, 0}, i == j ? "1" : "0", std::to_string(unit), "self-duality N_ij^0 = delta_ij"});
            const Rational expected = a.equiv.dims[i] * a.equiv.dims[j];
            if (total != expected)
                return fail("axiom.fusion_ring",
                            {{i, j}, expected.to_string(), total.to_string(), "d_i d_j = sum_k N_ij^k d_k"});
        }
    }
    return pass("axiom.fusion_ring");
}

CheckResult check_associativity(const Analysis& a) {
    const FusionTensor& f = a.equiv.fusion;
    const std::size_t rank = f.rank();
    std::vector<int> left(rank), right(rank);
    for (std::size_t i = 0; i < rank; ++i)
        for (std::size_t j = 0; j < rank; ++j)
            for (std::size_t k = 0; k < rank; ++k) {
                std::fill(left.begin(), left.end(), 0);
                std::fill(right.begin(), right.end(), 0);
                for (const auto& ij : f.products(i, j))
                    for (const auto& mk : f.products(ij.object, k))
                        left[mk.object] += ij.multiplicity * mk.multiplicity;
                for (const auto& jk : f.products(j, k))
                    for (const auto& im : f.products(i, jk.object))
                        right[im.object] += jk.multiplicity * im.multiplicity;
                for (std::size_t l = 0; l < rank; ++l)
                    if (left[l] != right[l])
                        return fail("axiom.associativity",
                                    {{i, j, k, l}, std::to_string(left[l]), std::to_string(right[l]),
                                     "(X_i X_j) X_k vs X_i (X_j X_k) at X_l"});
            }
    return pass("axiom.associativity");
}

CheckResult check_balancing(const Analysis& a) {
    const auto& e = a.equiv;
    const int n = int(a.inv.order);
    const std::size_t rank = e.objects.size();
    for (std::size_t i = 0; i < rank; ++i)
        for (std::size_t j = 0; j < rank; ++j) {
            // Every object is self-dual, so N_{i* j}^k = N_{ij}^k.
            CycloNum rhs = CycloNum::zero(n);
            for (const auto& t : e.fusion.products(i, j))
                rhs += (Rational(t.multiplicity) * e.dims[t.object]) * e.t[t.object];
            const CycloNum lhs = e.t[i] * e.t[j] * e.s(i, j);
            if (!(lhs == rhs))
                return fail("axiom.balancing", {{i, j}, rhs.to_string(), lhs.to_string(),
                                                "theta_i theta_j S_ij vs sum_k N_ij^k d_k theta_k"});
        }
    std::string note;
    if (!e.edge_case_pairs.empty())
        note = "includes " + std::to_string(e.edge_case_pairs.size()) + " orbit-rule products";
    return pass("axiom.balancing", note);
}

CheckResult check_cs(const Analysis& a) {
    for (std::size_t i = 0; i < a.rank(); ++i) {
        const Rational from_form = chern_simons_from_form(a.bundle, a.labels.classes[i]);
        if (from_form != a.chern_simons[i])
            return fail("characters.cs_agreement", {{i}, a.chern_simons[i].to_string(), from_form.to_string(),
                                                    a.labels.classes[i].label() + ": closed form vs -qtilde/N"});
    }
    return pass("characters.cs_agreement");
}

std::vector<Element> generators(const QuadGroup& g) {
    std::vector<Element> gens;
    std::set<Element> span{Element{}};
    for (const Element& x : g.elements()) {
        if (span.count(x)) continue;
        gens.push_back(x);
        std::vector<Element> frontier(span.begin(), span.end());
        while (!frontier.empty()) {
            std::vector<Element> next;
            for (const Element& y : frontier)
                for (const Element& h : gens) {
                    const Element z = g.add(y, h);
                    if (span.insert(z).second) next.push_back(z);
                }
            frontier = std::move(next);
        }
    }
    return gens;
}

CheckResult check_quadratic_form(const Analysis& a) {
    const QuadGroup& g = *a.group;
    const std::int64_t n = g.order();
    const char* name = "characters.quadratic_form";
    if (g.q(Element{}) != 0) return fail(name, {{}, "0", std::to_string(g.q(Element{})), "qtilde(0)"});
    const auto gens = generators(g);
    for (const Element& x : g.elements()) {
        if (g.q(g.negate(x)) != g.q(x))
            return fail(name, {{}, std::to_string(g.q(x)), std::to_string(g.q(g.negate(x))),
                               "qtilde(-g) = qtilde(g) at " + join({x})});
        for (const Element& y : g.elements()) {
            if (g.lambda(x, y) != g.lambda(y, x))
                return fail(name, {{}, std::to_string(g.lambda(x, y)), std::to_string(g.lambda(y, x)),
                                   "lambda symmetric at " + join({x, y})});
            for (const Element& h : gens) {
                const std::int64_t lhs = g.lambda(g.add(x, h), y);
                const std::int64_t rhs = mod_n(g.lambda(x, y) + g.lambda(h, y), n);
                if (lhs != rhs)
                    return fail(name, {{}, std::to_string(rhs), std::to_string(lhs),
                                       "lambda(g + h, x) = lambda(g, x) + lambda(h, x) at " + join({x, h, y})});
            }
        }
    }
    const Monodromy& m = a.bundle;
    for (const CharClass& x : a.labels.classes) {
        const auto q0 = qhat(m, x.munu);
        const Lift s1{x.munu.mu + m.a() + 1, x.munu.nu + m.b()};
        const Lift s2{x.munu.mu + m.c(), x.munu.nu + m.d() + 1};
        if (qhat(m, s1) != q0 || qhat(m, s2) != q0)
            return fail(name, {{}, std::to_string(q0), std::to_string(qhat(m, s1)) + "," + std::to_string(qhat(m, s2)),
                               "qhat not constant on the Im(g) coset of " + x.label()});
    }
    return pass(name, std::to_string(gens.size()) + " generator(s)");
}

CheckResult check_lift_independence(const Analysis& a) {
    const Monodromy& m = a.bundle;
    LabelSet shifted = a.labels;
    for (std::size_t i = 0; i < shifted.size(); ++i) {
        const std::int64_t u = std::int64_t(i % 3) - 1, v = std::int64_t(i % 5) - 2;
        shifted.classes[i].munu.mu += u * (m.a() + 1) + v * m.c();
        shifted.classes[i].munu.nu += u * m.b() + v * (m.d() + 1);
    }
    return compare_matrices("loops.lift_independence", a.s_loops, s_matrix_loops(m, shifted, a.epsilon), a);
}

CheckResult check_oracle(const Analysis& a) {
    const char* name = "characters.oracle_equivalence";
    if (a.inv.order > kOracleLimit)
        return skip(name, "N > " + std::to_string(kOracleLimit) + ": exhaustive search not run");
    const auto brute = brute_force_solutions(a.bundle);
    const auto structured = solution_group(a.bundle);
    if (brute != structured) {
        std::vector<Element> only_brute, only_structured;
        std::set_difference(brute.begin(), brute.end(), structured.begin(), structured.end(),
                            std::back_inserter(only_brute));
        std::set_difference(structured.begin(), structured.end(), brute.begin(), brute.end(),
                            std::back_inserter(only_structured));
        return fail(name, {{}, join(only_brute), join(only_structured),
                           "elements found only by brute force (expected) / only by image of f (actual)"});
    }
    return pass(name, std::to_string(brute.size()) + " solutions");
}

CheckResult check_degeneracy(const Analysis& a, bool& det_zero) {
    det_zero = false;
    const char* name = "degeneracy";
    if (a.inv.h1_z2_dim < 1) return fail(name, {{}, ">= 1", std::to_string(a.inv.h1_z2_dim), "h1_z2_dim"});
    for (std::size_t i = 0; i + 1 < a.rank(); ++i) {
        if (a.labels.classes[i].kind != CharKind::ReduciblePlus) continue;
        for (const auto* s : {&a.s_loops, &a.equiv.s})
            for (std::size_t j = 0; j < a.rank(); ++j)
                if (!((*s)(i, j) == (*s)(i + 1, j)))
                    return fail(name, {{i, i + 1, j}, (*s)(i, j).to_string(), (*s)(i + 1, j).to_string(),
                                       "rows " + a.labels.classes[i].label() + " and " +
                                           a.labels.classes[i + 1].label() + " differ"});
    }
    det_zero = a.rank() >= 2;
    if (!det_zero) return fail(name, {{}, "rank >= 2", std::to_string(a.rank()), "no X+/X- pair"});
    return pass(name, "rows " + a.labels.classes[0].label() + " and " + a.labels.classes[1].label() +
                          " are identical, det S = 0");
}

CheckResult check_table(const Analysis& a) {
    const auto [inv, two] = a.inv.expected_counts();
    if (std::int64_t(a.labels.invertible_count()) != inv || std::int64_t(a.labels.two_dim_count()) != two)
        return fail("counts.parity_row",
                    {{}, "(" + std::to_string(inv) + "," + std::to_string(two) + ")",
                     "(" + std::to_string(a.labels.invertible_count()) + "," +
                         std::to_string(a.labels.two_dim_count()) + ")",
                     "parity row " + a.inv.parity_row()});
    return pass("counts.parity_row", "row " + a.inv.parity_row());
}

CheckResult check_odd_trace(const Analysis& a) {
    const char* name = "odd_trace.specialization";
    if (a.inv.order % 2 == 0 || a.inv.r != 1) return skip(name, "applies only to N odd, r = 1");
    const auto expected_rank = std::size_t((a.inv.order + 3) / 2);
    if (a.rank() != expected_rank)
        return fail(name, {{}, std::to_string(expected_rank), std::to_string(a.rank()), "rank"});
    if (a.inv.parity_row() != "(o,o)" || a.labels.invertible_count() != 2)
        return fail(name, {{}, "(o,o) with 2 invertibles", a.inv.parity_row(), "parity row"});
    const int n = int(a.inv.order);
    const CycloNum one = CycloNum::from_rational(n, 1);
    for (std::size_t i = 0; i < 2; ++i) {
        if (!(a.equiv.t[i] == one) || !same_value(a.twists.theta[i], one))
            return fail(name, {{i}, "1", a.equiv.t[i].to_string(), "twist of an invertible over b = 0"});
        for (std::size_t j = 0; j < a.rank(); ++j) {
            const CycloNum expected = CycloNum::from_rational(n, a.equiv.dims[j]);
            if (!(a.equiv.s(i, j) == expected))
                return fail(name, {{i, j}, expected.to_string(), a.equiv.s(i, j).to_string(), "invertible row"});
        }
    }
    return pass(name);
}

} // namespace

std::string_view to_string(CheckStatus status) noexcept {
    switch (status) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skip: return "skip";
    }
    return "unknown";
}

bool VerificationReport::passed() const {
    return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.failed() && !c.exploratory; });
}

const CheckResult* VerificationReport::find(std::string_view name) const {
    for (const CheckResult& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

const std::vector<std::string>& standard_check_names() {
    static const std::vector<std::string> names{
        "theorem.bijection",        "theorem.s_equal",         "theorem.t_equal",
        "axiom.s_symmetric",        "axiom.s_real",            "axiom.first_column_dims",
        "axiom.dims_torsion",       "axiom.global_dimension",  "axiom.fusion_ring",
        "axiom.associativity",      "axiom.balancing",         "characters.cs_agreement",
        "characters.quadratic_form", "characters.oracle_equivalence", "loops.lift_independence",
        "degeneracy",               "counts.parity_row",       "odd_trace.specialization"};
    return names;
}

VerificationReport verify(const Analysis& input) {
    VerificationReport report(input.bundle);
    report.epsilon = input.epsilon;
    report.degenerate = input.degenerate();
    report.warnings = input.warnings;
    report.summary.order = input.inv.order;
    report.summary.r = input.inv.r;
    report.summary.parity_row = input.inv.parity_row();
    report.summary.h1_z2_dim = input.inv.h1_z2_dim;

    if (input.degenerate()) {
        for (const std::string& name : standard_check_names())
            report.checks.push_back(skip(name, "degenerate bundle (N = 1): empty label set"));
        if (input.epsilon == -1) {
            report.checks.push_back(skip(kEpsilonMinus, "degenerate bundle (N = 1)"));
            report.checks.back().exploratory = true;
        }
        return report;
    }

    // The verdict always uses epsilon = +1.
    const Analysis* a = &input;
    std::optional<Analysis> plus;
    if (input.epsilon != 1) {
        plus = input;
        plus->epsilon = 1;
        plus->s_loops = s_matrix_loops(input.bundle, input.labels, 1);
        a = &*plus;
    }

    auto& checks = report.checks;
    checks.push_back(check_bijection(*a));
    checks.push_back(compare_matrices("theorem.s_equal", a->equiv.s, a->s_loops, *a));
    checks.push_back(check_t(*a));
    checks.push_back(check_symmetric(*a));
    checks.push_back(check_real(*a));
    checks.push_back(check_first_column(*a));
    checks.push_back(check_dims(*a));
    checks.push_back(check_global_dimension(*a));
    checks.push_back(check_fusion_ring(*a));
    checks.push_back(check_associativity(*a));
    checks.push_back(check_balancing(*a));
    checks.push_back(check_cs(*a));
    checks.push_back(check_quadratic_form(*a));
    checks.push_back(check_oracle(*a));
    checks.push_back(check_lift_independence(*a));
    bool det_zero = false;
    checks.push_back(check_degeneracy(*a, det_zero));
    checks.push_back(check_table(*a));
    checks.push_back(check_odd_trace(*a));

    if (input.epsilon == -1) {
        CheckResult r = compare_matrices(kEpsilonMinus, input.equiv.s, input.s_loops, input);
        r.exploratory = true;
        if (r.note.empty()) r.note = "S^l at epsilon = -1 vs S^e; recorded, not part of the verdict";
        checks.push_back(std::move(r));
    }

    auto& s = report.summary;
    s.rank = a->rank();
    s.invertible_count = a->labels.invertible_count();
    s.two_dim_count = a->labels.two_dim_count();
    s.global_dim_sq = a->twists.global_dim_sq;
    s.det_s_zero = det_zero;
    s.fusion_edge_cases = a->equiv.edge_case_pairs.size();
    return report;
}

VerificationReport verify_bundle(const Monodromy& m, int epsilon) { return verify(analyze(m, epsilon)); }

namespace {

struct TwistEntry {
    Rational dim;
    Rational phase; // theta = exp(-2 pi i phase)

    friend auto operator<=>(const TwistEntry&, const TwistEntry&) = default;
};

std::string describe(const std::vector<TwistEntry>& xs) {
    std::string out;
    for (const TwistEntry& x : xs) out += (out.empty() ? "" : " ") + ("(" + x.dim.to_string() + "," + x.phase.to_string() + ")");
    return out;
}

std::string describe(const std::vector<Rational>& xs) {
    std::string out;
    for (const Rational& x : xs) out += (out.empty() ? "" : " ") + x.to_string();
    return out;
}

} // namespace

std::vector<CheckResult> check_conjugation(const Monodromy& m, const IntMatrix2& b) {
    const std::int64_t det = b.det();
    if (det != 1 && det != -1) throw Error(ErrorCode::InvalidInput, "conjugating matrix must have determinant +-1");
    const Monodromy conj = Monodromy::validate(b * m.matrix() * b.unimodular_inverse());

    auto collect = [](const Monodromy& x, bool reverse, std::vector<TwistEntry>& twists, std::vector<Rational>& ts) {
        const Analysis a = analyze(x);
        if (a.degenerate()) return;
        const Rational cs0 = a.chern_simons.front();
        for (std::size_t i = 0; i < a.rank(); ++i) {
            Rational phase = (a.chern_simons[i] - cs0).mod1();
            Rational t(a.equiv.objects.empty() ? 0 : a.group->q(a.equiv.objects[i].element), a.inv.order);
            if (reverse) {
                phase = (-phase).mod1();
                t = (-t).mod1();
            }
            twists.push_back({a.twists.dims[i], phase});
            ts.push_back(t);
        }
        std::sort(twists.begin(), twists.end());
        std::sort(ts.begin(), ts.end());
    };

    std::vector<TwistEntry> tw_a, tw_b;
    std::vector<Rational> t_a, t_b;
    collect(m, det == -1, tw_a, t_a);
    collect(conj, false, tw_b, t_b);

    const std::string conj_text = "B A B^-1 = (" + std::to_string(conj.a()) + "," + std::to_string(conj.b()) + "," +
                                  std::to_string(conj.c()) + "," + std::to_string(conj.d()) + ")" +
                                  (det == -1 ? ", twists of A conjugated (det B = -1)" : "");
    std::vector<CheckResult> out;
    if (tw_a == tw_b)
        out.push_back(pass("conjugation.dim_twist_multiset", conj_text));
    else
        out.push_back(fail("conjugation.dim_twist_multiset", {{}, describe(tw_a), describe(tw_b), conj_text}));
    if (t_a == t_b)
        out.push_back(pass("conjugation.t_multiset", conj_text));
    else
        out.push_back(fail("conjugation.t_multiset", {{}, describe(t_a), describe(t_b), conj_text}));
    return out;
}

} // namespace torusmd
