#pragma once

#include <cstdint>

namespace torusmd {

/// Row-major 2x2 integer matrix [[a, b], [c, d]].
struct IntMatrix2 {
    std::int64_t a = 0, b = 0, c = 0, d = 0;

    static constexpr IntMatrix2 identity() { return {1, 0, 0, 1}; }
    /// Throws Error(Overflow) if the determinant does not fit in 64 bits.
    std::int64_t det() const;
    /// Inverse of a matrix with determinant +1 or -1.
    IntMatrix2 unimodular_inverse() const;

    friend bool operator==(const IntMatrix2&, const IntMatrix2&) = default;
};

/// Checked product; throws Error(Overflow).
IntMatrix2 operator*(const IntMatrix2& x, const IntMatrix2& y);

struct SmithForm {
    std::int64_t d1 = 0;
    std::int64_t d2 = 0;
    IntMatrix2 left;  // U
    IntMatrix2 right; // V
};

/// U*M*V = diag(d1, d2) with U, V unimodular, 0 <= d1, d1 | d2, d2 >= 0.
/// d1 = 0 only when M = 0.
SmithForm smith_normal_form(const IntMatrix2& m);

/// gcd of absolute values; gcd4(0,0,0,0) = 0.
std::int64_t gcd4(std::int64_t w, std::int64_t x, std::int64_t y, std::int64_t z);

} // namespace torusmd
