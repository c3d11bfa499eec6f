#include "oracles.hpp"

#include "torusmd/bundle.hpp"
#include "torusmd/error.hpp"

#include "doctest.h"

#include <numeric>
#include <random>

using namespace torusmd;

namespace {

ErrorCode validation_error(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    try {
        (void)Monodromy::validate(a, b, c, d);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("matrix was accepted");
    return ErrorCode::InternalInconsistency;
}

// Direct evaluation of N, r and h1 from their definitions.
struct DirectInvariants {
    long long n, r;
    int h1;
};

DirectInvariants direct(long long a, long long b, long long c, long long d) {
    const long long n = std::llabs(a + d + 2);
    const long long r = std::gcd(std::gcd(std::llabs(a + 1), std::llabs(c)), std::gcd(std::llabs(b), std::llabs(d + 1)));
    const int rank = oracle::rank_mod2({{int((a - 1) & 1), int(b & 1)}, {int(c & 1), int((d - 1) & 1)}});
    return {n, r, 2 - rank + 1};
}

Monodromy random_sol(std::mt19937& rng, int bound) {
    std::uniform_int_distribution<int> entry(-bound, bound);
    for (;;) {
        const std::int64_t a = entry(rng), b = entry(rng), c = entry(rng);
        if (a == 0) continue;
        // Solve ad - bc = 1 for d when a | 1 + bc.
        if ((1 + b * c) % a != 0) continue;
        const std::int64_t d = (1 + b * c) / a;
        if (std::llabs(a + d) <= 2) continue;
        return Monodromy::validate(a, b, c, d);
    }
}

} // namespace

TEST_SUITE("bundle") {
    TEST_CASE("validate examples") {
        const Monodromy m = Monodromy::validate(2, 1, 1, 1);
        CHECK(m.trace() == 3);
        CHECK(m.order() == 5);
        CHECK(validation_error(1, 0, 0, 1) == ErrorCode::NotSolError);
        CHECK(validation_error(2, 1, 1, 2) == ErrorCode::DeterminantError);
        CHECK(validation_error(-1, 0, 0, -1) == ErrorCode::NotSolError);
        CHECK(validation_error(2'000'000'000, 0, 0, 1) == ErrorCode::InvalidInput);
    }

    TEST_CASE("negative trace keeps N positive") {
        const Monodromy m = Monodromy::validate(-7, 4, -2, 1);
        CHECK(m.order() == 4);
        CHECK(m.orientation() == -1);
        const Monodromy deg = Monodromy::validate(-2, 1, 1, -1);
        CHECK(deg.order() == 1);
        CHECK(compute_invariants(deg).degenerate());
        CHECK_THROWS_AS(invariants(deg), Error);
    }

    TEST_CASE("invariant examples") {
        const auto inv = invariants(Monodromy::validate(2, 1, 1, 1));
        const auto expect = direct(2, 1, 1, 1);
        CHECK(inv.order == expect.n);
        CHECK(inv.order == 5);
        CHECK(inv.r == expect.r);
        CHECK(inv.r == 1);
        CHECK(inv.group_shape == std::pair<std::int64_t, std::int64_t>{1, 5});
        CHECK(inv.parity.to_string() == "(e,o;o,o)");
        CHECK(inv.h1_z2_dim == expect.h1);
        CHECK(inv.h1_z2_dim == 1);
        CHECK(inv.parity_row() == "(o,o)");

        const auto inv8 = invariants(Monodromy::validate(5, 1, 4, 1));
        CHECK(inv8.order == direct(5, 1, 4, 1).n);
        CHECK(inv8.r == direct(5, 1, 4, 1).r);
        CHECK(inv8.group_shape == std::pair<std::int64_t, std::int64_t>{1, 8});
        CHECK(inv8.expected_counts() == std::pair<std::int64_t, std::int64_t>{4, 3});

        const auto inv24 = invariants(Monodromy::validate(5, 2, 2, 1));
        CHECK(inv24.order == 8);
        CHECK(inv24.r == direct(5, 2, 2, 1).r);
        CHECK(inv24.group_shape == std::pair<std::int64_t, std::int64_t>{2, 4});
        CHECK(inv24.parity_row() == "(e,e)");
        CHECK(inv24.expected_counts() == std::pair<std::int64_t, std::int64_t>{8, 2});
    }

    TEST_CASE("invariants agree with direct evaluation on the small corpus") {
        for (const auto& [a, b, c, d] : oracle::sol_corpus(6, 2, 20)) {
            const Monodromy m = Monodromy::validate(a, b, c, d);
            const auto inv = compute_invariants(m);
            const auto expect = direct(a, b, c, d);
            CHECK(inv.order == expect.n);
            CHECK(inv.r == expect.r);
            CHECK(inv.h1_z2_dim == expect.h1);
            CHECK(inv.h1_z2_dim >= 1);
            if (inv.order > 1) CHECK(inv.group_shape.first * inv.group_shape.second == inv.order);
            CHECK_FALSE((inv.parity.a == Parity::Even && inv.parity.d == Parity::Even &&
                         inv.parity.b == Parity::Even && inv.parity.c == Parity::Even));
        }
    }

    TEST_CASE("r squared divides N on random matrices") {
        std::mt19937 rng(3);
        for (int trial = 0; trial < 2000; ++trial) {
            const Monodromy m = random_sol(rng, 40);
            const auto inv = compute_invariants(m);
            CHECK(inv.order % (inv.r * inv.r) == 0);
            CHECK(m.c() != 0);
            // Pure: a second evaluation agrees field by field.
            const auto again = compute_invariants(m);
            CHECK(again.order == inv.order);
            CHECK(again.r == inv.r);
            CHECK(again.parity == inv.parity);
            CHECK(again.h1_z2_dim == inv.h1_z2_dim);
        }
    }
}
