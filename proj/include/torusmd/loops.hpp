#pragma once

#include "torusmd/characters.hpp"
#include "torusmd/cyclotomic.hpp"
#include "torusmd/matrix.hpp"

#include <cstdint>
#include <vector>

namespace torusmd {

/// Primitive loop operator (x^m y^n, Sym^j) for j in {0, 1}.
struct LoopOperator {
    std::int64_t m = 0;
    std::int64_t n = 0;
    int sym_degree = 0;

    friend bool operator==(const LoopOperator&, const LoopOperator&) = default;
};

/// m = -b mu + (a-1) nu, n = (1-d) mu + c nu from the class's stored lift;
/// Sym^0 for reducible classes, Sym^1 for irreducible ones.
LoopOperator loop_operator(const Monodromy& m, const CharClass& x);

/// Operators attached to a class. Torus bundles attach exactly one.
std::vector<LoopOperator> loop_operators(const Monodromy& m, const CharClass& x);

/// Trace of chi (scaled by epsilon) on x^m y^n in the given symmetric power.
CycloNum weight(const Monodromy& m, const CharClass& chi, const LoopOperator& op, int epsilon);

/// W_beta(alpha): product of weights of alpha's operators against epsilon * chi_beta.
CycloNum w_symbol(const Monodromy& m, const CharClass& beta, const CharClass& alpha, int epsilon);

/// S_{alpha beta} = W_beta(alpha) W_0(beta).
SquareMatrix<CycloNum> s_matrix_loops(const Monodromy& m, const LabelSet& labels, int epsilon = 1);

} // namespace torusmd
