#pragma once

#include "torusmd/intmatrix.hpp"

#include <cstdint>
#include <string>
#include <utility>

namespace torusmd {

/// Largest accepted |entry| of a monodromy matrix; keeps every lift and
/// residue product inside 128-bit intermediates.
inline constexpr std::int64_t kMaxMonodromyEntry = 1'000'000'000;

/// An SL(2,Z) matrix with |trace| > 2, i.e. the monodromy of a torus bundle
/// with SOL geometry. Only constructible through validate().
class Monodromy {
  public:
    /// Throws Error(DeterminantError) if ad - bc != 1, Error(NotSolError) if
    /// |a + d| <= 2, Error(InvalidInput) for entries beyond kMaxMonodromyEntry.
    static Monodromy validate(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);
    static Monodromy validate(const IntMatrix2& m) { return validate(m.a, m.b, m.c, m.d); }

    std::int64_t a() const noexcept { return m_.a; }
    std::int64_t b() const noexcept { return m_.b; }
    std::int64_t c() const noexcept { return m_.c; }
    std::int64_t d() const noexcept { return m_.d; }
    std::int64_t trace() const noexcept { return m_.a + m_.d; }
    const IntMatrix2& matrix() const noexcept { return m_; }

    /// N = |a + d + 2|.
    std::int64_t order() const noexcept;
    /// Sign of a + d + 2 (never zero for SOL matrices).
    int orientation() const noexcept { return m_.a + m_.d + 2 > 0 ? 1 : -1; }

    /// g = [[a+1, c], [b, d+1]]; its image is the kernel of f.
    IntMatrix2 relation_matrix() const { return {m_.a + 1, m_.c, m_.b, m_.d + 1}; }
    /// f = [[d+1, -c], [-b, a+1]], mapping lifts (mu, nu) to (k, l) up to orientation.
    IntMatrix2 solution_map() const { return {m_.d + 1, -m_.c, -m_.b, m_.a + 1}; }

    friend bool operator==(const Monodromy&, const Monodromy&) = default;

  private:
    explicit Monodromy(const IntMatrix2& m) : m_(m) {}
    IntMatrix2 m_;
};

enum class Parity : char { Even, Odd };

inline Parity parity_of(std::int64_t x) { return (x % 2 == 0) ? Parity::Even : Parity::Odd; }

/// Parities of (a, d; b, c), in that order.
struct ParityQuad {
    Parity a = Parity::Even, d = Parity::Even, b = Parity::Even, c = Parity::Even;

    /// "(e,o;o,o)" notation.
    std::string to_string() const;
    friend bool operator==(const ParityQuad&, const ParityQuad&) = default;
};

struct BundleInvariants {
    std::int64_t order = 0; // N
    int sign = 1;
    std::int64_t r = 0;
    ParityQuad parity;
    std::pair<std::int64_t, std::int64_t> group_shape; // (r, N/r)
    int h1_z2_dim = 0;

    bool degenerate() const noexcept { return order <= 1; }
    /// Parity row of (r, N/r) as used to index the simple-object table, e.g. "(o,e)".
    std::string parity_row() const;
    /// Expected (invertible, two-dimensional) object counts for this row.
    std::pair<std::int64_t, std::int64_t> expected_counts() const;
};

/// Invariants without the degeneracy check; N = 1 yields shape (1, 1).
BundleInvariants compute_invariants(const Monodromy& m);

/// As compute_invariants, but throws Error(DegenerateBundle) when N <= 1.
BundleInvariants invariants(const Monodromy& m);

} // namespace torusmd
