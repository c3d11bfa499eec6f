#include "torusmd/analysis.hpp"

#include "torusmd/error.hpp"

namespace torusmd {

Analysis analyze(const Monodromy& m, int epsilon) {
    if (epsilon != 1 && epsilon != -1) throw Error(ErrorCode::InvalidInput, "epsilon must be +1 or -1");
    Analysis out(m);
    out.inv = compute_invariants(m);
    out.epsilon = epsilon;
    if (out.degenerate()) {
        out.warnings.push_back("DegenerateBundle: N = 1, the only character is Abelian; the label set is empty");
        return out;
    }

    out.labels = solve_characters(m);
    for (const CharClass& x : out.labels.classes) {
        out.loops.push_back(loop_operator(m, x));
        out.q_values.push_back(qtilde(m, x.munu));
        out.chern_simons.push_back(chern_simons(m, x));
        out.torsions.push_back(torsion(m, x));
    }
    out.twists = twist_and_dims(m, out.labels);
    out.s_loops = s_matrix_loops(m, out.labels, epsilon);

    out.group.emplace(build_quad_group(m));
    out.equiv = modular_data_equiv(*out.group);
    if (!out.equiv.edge_case_pairs.empty())
        out.warnings.push_back("fusion: " + std::to_string(out.equiv.edge_case_pairs.size()) +
                               " product(s) Y x Y contain X_s^+ + X_s^- with 2s = 0, s != 0 (orbit rule)");
    return out;
}

} // namespace torusmd
