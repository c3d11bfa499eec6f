#include "torusmd/serialize.hpp"

#include "json.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace torusmd {

using Json = nlohmann::ordered_json;

namespace {

double round12(double x) {
    const double r = std::round(x * 1e12) / 1e12;
    return r == 0.0 ? 0.0 : r; // no negative zero
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

template <class... T>
std::string csv_line(const T&... fields) {
    std::string out;
    bool first = true;
    ((out += (first ? "" : ",") + csv_field(fields), first = false), ...);
    return out + "\n";
}

std::string str(std::int64_t x) { return std::to_string(x); }

std::string fixed(double x, int digits = 6) {
    if (std::abs(x) < 0.5 * std::pow(10.0, -digits)) x = 0.0;
    std::ostringstream out;
    out << std::fixed << std::setprecision(digits) << x;
    return out.str();
}

Json cyclo_json(const CycloNum& x) {
    Json coeffs = Json::array();
    for (const Rational& c : x.coeffs()) coeffs.push_back(c.to_string());
    const auto [re, im] = display_value(x);
    return Json{{"order", x.order()}, {"coeffs", coeffs}, {"re", re}, {"im", im}};
}

Json matrix_json(const SquareMatrix<CycloNum>& s) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < s.size(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < s.size(); ++j) row.push_back(cyclo_json(s(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json bundle_json(const Monodromy& m, const BundleInvariants& inv) {
    return Json{{"matrix", {m.a(), m.b(), m.c(), m.d()}},
                {"trace", m.trace()},
                {"N", inv.order},
                {"sign", inv.sign},
                {"r", inv.r},
                {"group_shape", {inv.group_shape.first, inv.group_shape.second}},
                {"parity", inv.parity.to_string()},
                {"parity_row", inv.parity_row()},
                {"h1_z2_dim", inv.h1_z2_dim},
                {"degenerate", inv.degenerate()}};
}

Json header(std::string_view kind, const std::optional<Metadata>& meta) {
    Json j{{"schema_version", kSchemaVersion}, {"kind", kind}};
    if (meta) j["metadata"] = Json{{"tool", "torusmd"}, {"version", kVersion}, {"generated_at", meta->generated_at}};
    return j;
}

std::string comment_header(const std::optional<Metadata>& meta, std::string_view marker) {
    if (!meta) return {};
    return std::string(marker) + " torusmd " + kVersion + " generated " + meta->generated_at + "\n";
}

std::string matrix_text(const Monodromy& m) {
    return "(" + str(m.a()) + "," + str(m.b()) + "," + str(m.c()) + "," + str(m.d()) + ")";
}

std::string pair_text(std::int64_t x, std::int64_t y) { return "(" + str(x) + "," + str(y) + ")"; }

std::string t_exponent(const Analysis& a, std::size_t i) {
    return Rational(a.group->q(a.equiv.objects[i].element), a.inv.order).to_string();
}

// --- analyze -------------------------------------------------------------

Json analysis_json(const Analysis& a, const std::optional<Metadata>& meta) {
    Json j = header("analysis", meta);
    j["bundle"] = bundle_json(a.bundle, a.inv);
    j["epsilon"] = a.epsilon;
    j["rank"] = a.rank();
    j["global_dimension_squared"] = a.degenerate() ? "0" : a.twists.global_dim_sq.to_string();

    Json objects = Json::array();
    for (std::size_t i = 0; i < a.rank(); ++i) {
        const CharClass& x = a.labels.classes[i];
        const LoopOperator& op = a.loops[i];
        objects.push_back(Json{
            {"index", i},
            {"label", x.label()},
            {"kind", std::string(to_string(x.kind))},
            {"kl", {x.kl.k, x.kl.l}},
            {"munu", {x.munu.mu, x.munu.nu}},
            {"eps", x.eps ? Json{x.eps->x, x.eps->y} : Json(nullptr)},
            {"loop", {{"m", op.m}, {"n", op.n}, {"sym", op.sym_degree}}},
            {"qtilde", a.q_values[i]},
            {"chern_simons", a.chern_simons[i].to_string()},
            {"torsion", a.torsions[i].to_string()},
            {"dimension", a.twists.dims[i].to_string()},
            {"object", a.equiv.objects[i].label()},
            {"theta", cyclo_json(a.twists.theta[i])},
        });
    }
    j["objects"] = std::move(objects);

    Json q_table = Json::array();
    if (a.group)
        for (const Element& g : a.group->elements()) q_table.push_back(Json{{"element", {g.k, g.l}}, {"qtilde", a.group->q(g)}});
    j["q_table"] = std::move(q_table);

    j["S_loops"] = matrix_json(a.s_loops);
    j["S_equiv"] = matrix_json(a.equiv.s);
    Json t = Json::array();
    for (const CycloNum& x : a.equiv.t) t.push_back(cyclo_json(x));
    j["T"] = std::move(t);

    Json fusion = Json::array();
    for (std::size_t i = 0; i < a.equiv.fusion.rank(); ++i)
        for (std::size_t k = i; k < a.equiv.fusion.rank(); ++k) {
            Json products = Json::array();
            for (const auto& term : a.equiv.fusion.products(i, k)) products.push_back({term.object, term.multiplicity});
            fusion.push_back(Json{{"i", i}, {"j", k}, {"products", std::move(products)}});
        }
    j["fusion"] = std::move(fusion);
    Json edge = Json::array();
    for (const auto& [x, y] : a.equiv.edge_case_pairs) edge.push_back({x, y});
    j["fusion_edge_cases"] = std::move(edge);
    j["warnings"] = a.warnings;
    return j;
}

std::string analysis_csv(const Analysis& a, const std::optional<Metadata>& meta) {
    std::string out = comment_header(meta, "#");
    out += "index,label,kind,k,l,mu,nu,eps_x,eps_y,loop_m,loop_n,sym,qtilde,chern_simons,torsion,dimension,"
           "object,t_exponent\n";
    for (std::size_t i = 0; i < a.rank(); ++i) {
        const CharClass& x = a.labels.classes[i];
        const LoopOperator& op = a.loops[i];
        out += csv_line(str(std::int64_t(i)), x.label(), std::string(to_string(x.kind)), str(x.kl.k), str(x.kl.l),
                        str(x.munu.mu), str(x.munu.nu), x.eps ? str(x.eps->x) : std::string(),
                        x.eps ? str(x.eps->y) : std::string(), str(op.m), str(op.n), str(op.sym_degree),
                        str(a.q_values[i]), a.chern_simons[i].to_string(), a.torsions[i].to_string(),
                        a.twists.dims[i].to_string(), a.equiv.objects[i].label(), t_exponent(a, i));
    }
    return out;
}

std::string latex_label(const SimpleObject& x) {
    const std::string sub = "{(" + str(x.element.k) + "," + str(x.element.l) + ")}";
    if (x.invertible()) return "$X^" + std::string(x.sign > 0 ? "+" : "-") + "_" + sub + "$";
    return "$Y_" + sub + "$";
}

std::string analysis_latex(const Analysis& a, const std::optional<Metadata>& meta) {
    std::ostringstream out;
    out << comment_header(meta, "%");
    out << "% A = " << matrix_text(a.bundle) << ", N = " << a.inv.order << "\n";
    out << "\\begin{tabular}{|l|c|c|c|c|}\n\\hline\n";
    out << "$(r, \\frac{N}{r})$ & $X^\\pm_{(a,b)}$ & $|\\mathrm{Irr}_{\\mathrm{pt}}|$ & $Y_{(a,b)}$ & "
           "Number of $Y_{(a,b)}$ \\\\ \\hline\n";
    std::string xs, ys;
    for (const SimpleObject& x : a.equiv.objects) {
        if (x.invertible()) {
            if (x.sign > 0) xs += (xs.empty() ? "" : ", ") + ("$(" + str(x.element.k) + "," + str(x.element.l) + ")$");
        } else {
            ys += (ys.empty() ? "" : ", ") + ("$(" + str(x.element.k) + "," + str(x.element.l) + ")$");
        }
    }
    out << "$" << pair_text(a.inv.group_shape.first, a.inv.group_shape.second) << "$ " << a.inv.parity_row()
        << " & " << (xs.empty() ? "--" : xs) << " & " << a.labels.invertible_count() << " & "
        << (ys.empty() ? "--" : ys) << " & " << a.labels.two_dim_count() << " \\\\ \\hline\n";
    out << "\\end{tabular}\n\n";

    out << "\\begin{tabular}{|l|c|c|c|c|}\n\\hline\n";
    out << "Object & $(\\mu,\\nu)$ & $d$ & $\\theta$ & $CS$ \\\\ \\hline\n";
    for (std::size_t i = 0; i < a.rank(); ++i) {
        const CharClass& x = a.labels.classes[i];
        out << latex_label(a.equiv.objects[i]) << " & $" << pair_text(x.munu.mu, x.munu.nu) << "$ & "
            << a.twists.dims[i].to_string() << " & $e^{2\\pi i \\cdot " << t_exponent(a, i) << "}$ & $"
            << a.chern_simons[i].to_string() << "$ \\\\ \\hline\n";
    }
    out << "\\end{tabular}\n";
    return out.str();
}

std::string analysis_pretty(const Analysis& a, const std::optional<Metadata>& meta) {
    std::ostringstream out;
    out << comment_header(meta, "#");
    out << "A = " << matrix_text(a.bundle) << "  trace " << a.bundle.trace() << "  N = " << a.inv.order
        << "  r = " << a.inv.r << "  G = Z_" << a.inv.group_shape.first << " x Z_" << a.inv.group_shape.second
        << "\nparity " << a.inv.parity.to_string() << "  row " << a.inv.parity_row() << "  h1(M;Z2) = "
        << a.inv.h1_z2_dim << "  epsilon = " << a.epsilon << "\n";
    for (const std::string& w : a.warnings) out << "warning: " << w << "\n";
    if (a.degenerate()) return out.str();
    out << "rank " << a.rank() << "  D^2 = " << a.twists.global_dim_sq.to_string() << "\n\n";

    out << std::left << std::setw(4) << "#" << std::setw(12) << "label" << std::setw(10) << "(mu,nu)"
        << std::setw(14) << "loop" << std::setw(5) << "q" << std::setw(7) << "CS" << std::setw(7) << "Tor"
        << std::setw(3) << "d" << "T\n";
    for (std::size_t i = 0; i < a.rank(); ++i) {
        const CharClass& x = a.labels.classes[i];
        const LoopOperator& op = a.loops[i];
        const std::string loop = "(" + str(op.m) + "," + str(op.n) + ",Sym" + str(op.sym_degree) + ")";
        out << std::setw(4) << i << std::setw(12) << x.label() << std::setw(10) << pair_text(x.munu.mu, x.munu.nu)
            << std::setw(14) << loop << std::setw(5) << a.q_values[i] << std::setw(7)
            << a.chern_simons[i].to_string() << std::setw(7) << a.torsions[i].to_string() << std::setw(3)
            << a.twists.dims[i].to_string() << "exp(2 pi i " << t_exponent(a, i) << ")\n";
    }

    auto print_matrix = [&](const char* title, const SquareMatrix<CycloNum>& s) {
        out << "\n" << title << "\n";
        for (std::size_t i = 0; i < s.size(); ++i) {
            for (std::size_t j = 0; j < s.size(); ++j) out << std::right << std::setw(11) << fixed(display_value(s(i, j)).first);
            out << "\n";
        }
        out << std::left;
    };
    print_matrix("S^l (loop operators)", a.s_loops);
    print_matrix("S^e (equivariantization)", a.equiv.s);

    out << "\nfusion (i x j = ...)\n";
    for (std::size_t i = 0; i < a.equiv.fusion.rank(); ++i)
        for (std::size_t k = i; k < a.equiv.fusion.rank(); ++k) {
            out << "  " << a.equiv.objects[i].label() << " x " << a.equiv.objects[k].label() << " =";
            bool first = true;
            for (const auto& term : a.equiv.fusion.products(i, k)) {
                out << (first ? " " : " + ");
                if (term.multiplicity != 1) out << term.multiplicity << " ";
                out << a.equiv.objects[term.object].label();
                first = false;
            }
            out << "\n";
        }
    return out.str();
}

// --- verify --------------------------------------------------------------

Json witness_json(const std::optional<Witness>& w) {
    if (!w) return nullptr;
    return Json{{"indices", w->indices}, {"expected", w->expected}, {"actual", w->actual}, {"detail", w->detail}};
}

Json report_json(const VerificationReport& r, const std::optional<Metadata>& meta) {
    Json j = header("verification", meta);
    j["bundle"] = bundle_json(r.bundle, compute_invariants(r.bundle));
    j["epsilon"] = r.epsilon;
    j["passed"] = r.passed();
    j["degenerate"] = r.degenerate;
    Json checks = Json::array();
    for (const CheckResult& c : r.checks)
        checks.push_back(Json{{"name", c.name},
                              {"status", std::string(to_string(c.status))},
                              {"exploratory", c.exploratory},
                              {"note", c.note},
                              {"witness", witness_json(c.witness)}});
    j["checks"] = std::move(checks);
    const ReportSummary& s = r.summary;
    j["summary"] = Json{{"rank", s.rank},
                        {"N", s.order},
                        {"r", s.r},
                        {"parity_row", s.parity_row},
                        {"invertible_count", s.invertible_count},
                        {"two_dim_count", s.two_dim_count},
                        {"global_dimension_squared", s.global_dim_sq.to_string()},
                        {"det_s_zero", s.det_s_zero},
                        {"h1_z2_dim", s.h1_z2_dim},
                        {"fusion_edge_cases", s.fusion_edge_cases}};
    j["warnings"] = r.warnings;
    return j;
}

std::string indices_text(const std::vector<std::size_t>& xs) {
    std::string out;
    for (std::size_t x : xs) out += (out.empty() ? "" : " ") + std::to_string(x);
    return out;
}

std::string report_csv(const VerificationReport& r, const std::optional<Metadata>& meta) {
    std::string out = comment_header(meta, "#");
    out += "name,status,exploratory,note,witness_indices,expected,actual,detail\n";
    for (const CheckResult& c : r.checks) {
        const Witness w = c.witness.value_or(Witness{});
        out += csv_line(c.name, std::string(to_string(c.status)), std::string(c.exploratory ? "true" : "false"),
                        c.note, indices_text(w.indices), w.expected, w.actual, w.detail);
    }
    return out;
}

std::string report_text(const VerificationReport& r, const std::optional<Metadata>& meta, bool latex) {
    std::ostringstream out;
    out << comment_header(meta, latex ? "%" : "#");
    if (latex) {
        out << "% A = " << matrix_text(r.bundle) << "\n\\begin{tabular}{|l|c|l|}\n\\hline\nCheck & Status & Note \\\\ "
               "\\hline\n";
        for (const CheckResult& c : r.checks)
            out << "\\texttt{" << c.name << "} & " << to_string(c.status) << (c.exploratory ? " (exploratory)" : "")
                << " & " << c.note << " \\\\ \\hline\n";
        out << "\\end{tabular}\n";
        return out.str();
    }
    const ReportSummary& s = r.summary;
    out << "A = " << matrix_text(r.bundle) << "  N = " << s.order << "  r = " << s.r << "  row " << s.parity_row
        << "  rank " << s.rank << "  D^2 = " << s.global_dim_sq.to_string() << "  h1(M;Z2) = " << s.h1_z2_dim
        << "\n";
    for (const std::string& w : r.warnings) out << "warning: " << w << "\n";
    for (const CheckResult& c : r.checks) {
        out << std::left << std::setw(6) << to_string(c.status) << std::setw(34) << c.name;
        if (c.exploratory) out << "[exploratory] ";
        out << c.note << "\n";
        if (c.witness)
            out << "      at [" << indices_text(c.witness->indices) << "] " << c.witness->detail
                << "\n      expected " << c.witness->expected << "\n      actual   " << c.witness->actual << "\n";
    }
    out << (r.passed() ? "PASSED" : "FAILED") << "\n";
    return out.str();
}

// --- oracle --------------------------------------------------------------

struct OracleRow {
    Element kl;
    Lift munu;
    bool two_torsion;
    std::int64_t q;
    Rational cs, torsion;
};

std::vector<OracleRow> oracle_rows(const Monodromy& m) {
    const std::int64_t n = m.order();
    std::vector<OracleRow> rows;
    for (const Element& g : brute_force_solutions(m)) {
        OracleRow row{g, lift_of(m, g), is_two_torsion(g, n), 0, 0, 0};
        row.q = qtilde(m, row.munu);
        CharClass x{g, row.munu, CharKind::Irreducible, std::nullopt};
        if (row.two_torsion) {
            x.kind = CharKind::ReduciblePlus;
            x.eps = SignPair{int(2 * g.k / n), int(2 * g.l / n)};
        }
        row.cs = chern_simons(m, x);
        row.torsion = torsion(m, x);
        rows.push_back(row);
    }
    return rows;
}

} // namespace

Format parse_format(std::string_view name) {
    if (name == "json") return Format::Json;
    if (name == "csv") return Format::Csv;
    if (name == "latex") return Format::Latex;
    if (name == "pretty") return Format::Pretty;
    throw Error(ErrorCode::InvalidInput, "unknown format '" + std::string(name) + "'");
}

std::pair<double, double> display_value(const CycloNum& x) {
    const auto z = x.to_complex();
    return {round12(z.real()), round12(z.imag())};
}

std::string render_analysis(const Analysis& a, Format format, const std::optional<Metadata>& meta) {
    switch (format) {
    case Format::Json: return dump(analysis_json(a, meta));
    case Format::Csv: return analysis_csv(a, meta);
    case Format::Latex: return analysis_latex(a, meta);
    case Format::Pretty: return analysis_pretty(a, meta);
    }
    return {};
}

std::string render_report(const VerificationReport& r, Format format, const std::optional<Metadata>& meta) {
    switch (format) {
    case Format::Json: return dump(report_json(r, meta));
    case Format::Csv: return report_csv(r, meta);
    case Format::Latex: return report_text(r, meta, true);
    case Format::Pretty: return report_text(r, meta, false);
    }
    return {};
}

std::string render_oracle(const Monodromy& m, Format format, const std::optional<Metadata>& meta) {
    const BundleInvariants inv = compute_invariants(m);
    const auto rows = oracle_rows(m);
    std::vector<std::string> warnings;
    if (inv.degenerate())
        warnings.push_back("DegenerateBundle: N = 1, only the trivial solution (0,0) exists");

    if (format == Format::Json) {
        Json j = header("oracle", meta);
        j["bundle"] = bundle_json(m, inv);
        Json sols = Json::array();
        for (const OracleRow& r : rows)
            sols.push_back(Json{{"kl", {r.kl.k, r.kl.l}},
                                {"munu", {r.munu.mu, r.munu.nu}},
                                {"two_torsion", r.two_torsion},
                                {"qtilde", r.q},
                                {"chern_simons", r.cs.to_string()},
                                {"torsion", r.torsion.to_string()}});
        j["solutions"] = std::move(sols);
        j["warnings"] = warnings;
        return dump(j);
    }
    std::ostringstream out;
    const bool latex = format == Format::Latex;
    out << comment_header(meta, latex ? "%" : "#");
    for (const std::string& w : warnings) out << (latex ? "% warning: " : "# warning: ") << w << "\n";
    if (format == Format::Csv) {
        out << "k,l,mu,nu,two_torsion,qtilde,chern_simons,torsion\n";
        for (const OracleRow& r : rows)
            out << csv_line(str(r.kl.k), str(r.kl.l), str(r.munu.mu), str(r.munu.nu),
                            std::string(r.two_torsion ? "true" : "false"), str(r.q), r.cs.to_string(),
                            r.torsion.to_string());
    } else if (latex) {
        out << "\\begin{tabular}{|c|c|c|c|c|}\n\\hline\n$(k,l)$ & $(\\mu,\\nu)$ & $\\tilde q$ & $CS$ & Tor \\\\ "
               "\\hline\n";
        for (const OracleRow& r : rows)
            out << "$" << pair_text(r.kl.k, r.kl.l) << "$ & $" << pair_text(r.munu.mu, r.munu.nu) << "$ & " << r.q
                << " & $" << r.cs.to_string() << "$ & $" << r.torsion.to_string() << "$ \\\\ \\hline\n";
        out << "\\end{tabular}\n";
    } else {
        out << "A = " << matrix_text(m) << "  N = " << inv.order << "  " << rows.size() << " solution(s)\n";
        out << std::left << std::setw(10) << "(k,l)" << std::setw(10) << "(mu,nu)" << std::setw(6) << "2g=0"
            << std::setw(5) << "q" << std::setw(7) << "CS" << "Tor\n";
        for (const OracleRow& r : rows)
            out << std::setw(10) << pair_text(r.kl.k, r.kl.l) << std::setw(10) << pair_text(r.munu.mu, r.munu.nu)
                << std::setw(6) << (r.two_torsion ? "yes" : "no") << std::setw(5) << r.q << std::setw(7)
                << r.cs.to_string() << r.torsion.to_string() << "\n";
    }
    return out.str();
}

std::string render_error(ErrorCode code, std::string_view message) {
    return Json{{"schema_version", kSchemaVersion},
                {"error", {{"code", std::string(to_string(code))}, {"message", std::string(message)}}}}
               .dump() +
           "\n";
}

} // namespace torusmd
