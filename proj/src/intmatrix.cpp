#include "torusmd/intmatrix.hpp"

#include "torusmd/error.hpp"

#include <array>
#include <cstdlib>
#include <numeric>
#include <utility>

namespace torusmd {

namespace {

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
    std::int64_t out;
    if (__builtin_mul_overflow(x, y, &out)) throw Error(ErrorCode::Overflow, "integer matrix overflow");
    return out;
}

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
    std::int64_t out;
    if (__builtin_add_overflow(x, y, &out)) throw Error(ErrorCode::Overflow, "integer matrix overflow");
    return out;
}

std::int64_t checked_sub(std::int64_t x, std::int64_t y) {
    std::int64_t out;
    if (__builtin_sub_overflow(x, y, &out)) throw Error(ErrorCode::Overflow, "integer matrix overflow");
    return out;
}

using Grid = std::array<std::array<std::int64_t, 2>, 2>;

Grid to_grid(const IntMatrix2& m) { return {{{m.a, m.b}, {m.c, m.d}}}; }
IntMatrix2 from_grid(const Grid& g) { return {g[0][0], g[0][1], g[1][0], g[1][1]}; }

// Elementary operations applied to M together with the transform that records them.
void row_axpy(Grid& m, Grid& u, int dst, int src, std::int64_t q) {
    for (int j = 0; j < 2; ++j) {
        m[dst][j] = checked_sub(m[dst][j], checked_mul(q, m[src][j]));
        u[dst][j] = checked_sub(u[dst][j], checked_mul(q, u[src][j]));
    }
}

void col_axpy(Grid& m, Grid& v, int dst, int src, std::int64_t q) {
    for (int i = 0; i < 2; ++i) {
        m[i][dst] = checked_sub(m[i][dst], checked_mul(q, m[i][src]));
        v[i][dst] = checked_sub(v[i][dst], checked_mul(q, v[i][src]));
    }
}

void swap_rows(Grid& m, Grid& u) {
    std::swap(m[0], m[1]);
    std::swap(u[0], u[1]);
}

void swap_cols(Grid& m, Grid& v) {
    for (int i = 0; i < 2; ++i) {
        std::swap(m[i][0], m[i][1]);
        std::swap(v[i][0], v[i][1]);
    }
}

void negate_row(Grid& m, Grid& u, int r) {
    for (int j = 0; j < 2; ++j) {
        m[r][j] = checked_sub(0, m[r][j]);
        u[r][j] = checked_sub(0, u[r][j]);
    }
}

} // namespace

std::int64_t IntMatrix2::det() const { return checked_sub(checked_mul(a, d), checked_mul(b, c)); }

IntMatrix2 IntMatrix2::unimodular_inverse() const {
    const std::int64_t det_value = det();
    if (det_value != 1 && det_value != -1)
        throw Error(ErrorCode::InvalidInput, "matrix is not unimodular");
    return {d * det_value, -b * det_value, -c * det_value, a * det_value};
}

IntMatrix2 operator*(const IntMatrix2& x, const IntMatrix2& y) {
    return {checked_add(checked_mul(x.a, y.a), checked_mul(x.b, y.c)),
            checked_add(checked_mul(x.a, y.b), checked_mul(x.b, y.d)),
            checked_add(checked_mul(x.c, y.a), checked_mul(x.d, y.c)),
            checked_add(checked_mul(x.c, y.b), checked_mul(x.d, y.d))};
}

SmithForm smith_normal_form(const IntMatrix2& input) {
    Grid m = to_grid(input);
    Grid u = to_grid(IntMatrix2::identity());
    Grid v = u;

    auto is_zero = [&] { return m[0][0] == 0 && m[0][1] == 0 && m[1][0] == 0 && m[1][1] == 0; };
    if (is_zero()) return {0, 0, from_grid(u), from_grid(v)};

    for (;;) {
        // Smallest nonzero magnitude to the pivot position.
        int pi = -1, pj = -1;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                if (m[i][j] != 0 && (pi < 0 || std::llabs(m[i][j]) < std::llabs(m[pi][pj]))) {
                    pi = i;
                    pj = j;
                }
        if (pi == 1) swap_rows(m, u);
        if (pj == 1) swap_cols(m, v);

        row_axpy(m, u, 1, 0, m[1][0] / m[0][0]);
        col_axpy(m, v, 1, 0, m[0][1] / m[0][0]);
        if (m[1][0] != 0 || m[0][1] != 0) continue;

        if (m[1][1] % m[0][0] != 0) {
            // Fold the second diagonal entry into row 0 so the next pass
            // produces gcd(d1, d2) in the pivot.
            row_axpy(m, u, 0, 1, -1);
            continue;
        }
        break;
    }
    if (m[0][0] < 0) negate_row(m, u, 0);
    if (m[1][1] < 0) negate_row(m, u, 1);
    return {m[0][0], m[1][1], from_grid(u), from_grid(v)};
}

std::int64_t gcd4(std::int64_t w, std::int64_t x, std::int64_t y, std::int64_t z) {
    auto mag = [](std::int64_t t) { return t < 0 ? std::uint64_t(0) - std::uint64_t(t) : std::uint64_t(t); };
    std::uint64_t g = std::gcd(std::gcd(mag(w), mag(x)), std::gcd(mag(y), mag(z)));
    return std::int64_t(g);
}

} // namespace torusmd
