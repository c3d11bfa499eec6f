#include "torusmd/loops.hpp"

#include "torusmd/error.hpp"

namespace torusmd {

namespace {

int field_order(const Monodromy& m) { return int(m.order()); }

} // namespace

LoopOperator loop_operator(const Monodromy& m, const CharClass& x) {
    const std::int64_t mu = x.munu.mu, nu = x.munu.nu;
    return {-m.b() * mu + (m.a() - 1) * nu, (1 - m.d()) * mu + m.c() * nu, x.reducible() ? 0 : 1};
}

std::vector<LoopOperator> loop_operators(const Monodromy& m, const CharClass& x) { return {loop_operator(m, x)}; }

CycloNum weight(const Monodromy& m, const CharClass& chi, const LoopOperator& op, int epsilon) {
    if (epsilon != 1 && epsilon != -1) throw Error(ErrorCode::InvalidInput, "epsilon must be +1 or -1");
    const int order = field_order(m);
    if (op.sym_degree == 0) return CycloNum::from_rational(order, 1);
    if (op.sym_degree != 1) throw Error(ErrorCode::InvalidInput, "only Sym^0 and Sym^1 loop operators exist here");

    if (chi.reducible()) {
        const SignPair eps = *chi.eps;
        const __int128 exponent = __int128(eps.x) * op.m + __int128(eps.y) * op.n;
        const int sign = (exponent % 2 == 0) ? 1 : -1;
        return CycloNum::from_rational(order, Rational(2 * sign * epsilon));
    }
    const __int128 t = (__int128(chi.kl.k) * op.m + __int128(chi.kl.l) * op.n) % m.order();
    const auto phase = std::int64_t(t);
    return Rational(epsilon) * (root_of_unity(order, phase) + root_of_unity(order, -phase));
}

CycloNum w_symbol(const Monodromy& m, const CharClass& beta, const CharClass& alpha, int epsilon) {
    CycloNum out = CycloNum::from_rational(field_order(m), 1);
    for (const LoopOperator& op : loop_operators(m, alpha)) out *= weight(m, beta, op, epsilon);
    return out;
}

SquareMatrix<CycloNum> s_matrix_loops(const Monodromy& m, const LabelSet& labels, int epsilon) {
    const std::size_t n = labels.size();
    SquareMatrix<CycloNum> s(n, CycloNum::zero(field_order(m)));
    std::vector<CycloNum> w0(n);
    for (std::size_t beta = 0; beta < n; ++beta)
        w0[beta] = w_symbol(m, labels.unit(), labels.classes[beta], epsilon);
    for (std::size_t alpha = 0; alpha < n; ++alpha)
        for (std::size_t beta = 0; beta < n; ++beta)
            s(alpha, beta) = w_symbol(m, labels.classes[beta], labels.classes[alpha], epsilon) * w0[beta];
    return s;
}

} // namespace torusmd
