#include "torusmd/bundle.hpp"

#include "torusmd/error.hpp"

#include <cstdlib>

namespace torusmd {

namespace {

std::string parity_char(Parity p) { return p == Parity::Even ? "e" : "o"; }

// Rank over Z/2 of a 2x2 integer matrix.
int rank_mod2(const IntMatrix2& m) {
    const int a = int(m.a & 1), b = int(m.b & 1), c = int(m.c & 1), d = int(m.d & 1);
    if ((a | b | c | d) == 0) return 0;
    return ((a * d - b * c) & 1) ? 2 : 1;
}

} // namespace

Monodromy Monodromy::validate(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    for (std::int64_t x : {a, b, c, d})
        if (x > kMaxMonodromyEntry || x < -kMaxMonodromyEntry)
            throw Error(ErrorCode::InvalidInput, "monodromy entry " + std::to_string(x) + " exceeds " +
                                                     std::to_string(kMaxMonodromyEntry) + " in magnitude");
    const __int128 det = __int128(a) * d - __int128(b) * c;
    if (det != 1)
        throw Error(ErrorCode::DeterminantError,
                    "determinant ad - bc = " + std::to_string(std::int64_t(det)) + ", expected 1");
    if (std::llabs(a + d) <= 2)
        throw Error(ErrorCode::NotSolError,
                    "|trace| = " + std::to_string(std::llabs(a + d)) + " <= 2: not a SOL monodromy");
    return Monodromy(IntMatrix2{a, b, c, d});
}

std::int64_t Monodromy::order() const noexcept { return std::llabs(m_.a + m_.d + 2); }

std::string ParityQuad::to_string() const {
    return "(" + parity_char(a) + "," + parity_char(d) + ";" + parity_char(b) + "," + parity_char(c) + ")";
}

std::string BundleInvariants::parity_row() const {
    return "(" + parity_char(parity_of(group_shape.first)) + "," + parity_char(parity_of(group_shape.second)) +
           ")";
}

std::pair<std::int64_t, std::int64_t> BundleInvariants::expected_counts() const {
    const bool r_even = group_shape.first % 2 == 0;
    const bool s_even = group_shape.second % 2 == 0;
    if (!r_even && !s_even) return {2, (order - 1) / 2};
    if (r_even && s_even) return {8, order / 2 - 2};
    return {4, order / 2 - 1};
}

BundleInvariants compute_invariants(const Monodromy& m) {
    BundleInvariants inv;
    inv.order = m.order();
    inv.sign = m.orientation();
    inv.r = gcd4(m.a() + 1, m.c(), m.b(), m.d() + 1);
    inv.parity = {parity_of(m.a()), parity_of(m.d()), parity_of(m.b()), parity_of(m.c())};

    const SmithForm snf = smith_normal_form(m.relation_matrix());
    if (snf.d1 != inv.r || snf.d1 * snf.d2 != inv.order)
        throw Error(ErrorCode::InternalInconsistency, "Smith form of g disagrees with (r, N/r)");
    inv.group_shape = {snf.d1, snf.d2};

    const IntMatrix2 shifted{m.a() - 1, m.b(), m.c(), m.d() - 1};
    inv.h1_z2_dim = (2 - rank_mod2(shifted)) + 1;
    return inv;
}

BundleInvariants invariants(const Monodromy& m) {
    BundleInvariants inv = compute_invariants(m);
    if (inv.degenerate())
        throw Error(ErrorCode::DegenerateBundle,
                    "N = |a+d+2| = " + std::to_string(inv.order) + ": no non-Abelian characters");
    return inv;
}

} // namespace torusmd
