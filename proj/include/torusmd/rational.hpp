#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>

namespace torusmd {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Exact rational number, always reduced with a positive denominator.
///
/// Values whose numerator and denominator fit in 64 bits are stored inline and
/// combined through 128-bit intermediates. Anything larger is promoted to an
/// arbitrary-precision representation and demoted again once it fits, so
/// arithmetic never overflows.
class Rational {
  public:
    Rational() = default;
    Rational(std::int64_t value) : num_(value) {} // NOLINT: implicit by design of numeric types
    Rational(std::int64_t num, std::int64_t den);
    explicit Rational(const BigRational& value);
    static Rational from_big(const BigInt& num, const BigInt& den);

    BigInt numerator() const;
    BigInt denominator() const;
    BigRational to_big() const;

    bool is_zero() const noexcept { return !big_ && num_ == 0; }
    bool is_integer() const noexcept { return !big_ && den_ == 1; }
    bool is_small() const noexcept { return !big_; }
    int sign() const noexcept;

    double to_double() const;
    /// "p" or "p/q".
    std::string to_string() const;
    /// Parses "p" or "p/q"; throws Error(InvalidInput) on malformed text.
    static Rational parse(const std::string& text);

    /// Representative of this value modulo 1, in [0, 1).
    Rational mod1() const;
    /// Exact square root when both numerator and denominator are perfect squares.
    std::optional<Rational> sqrt() const;

    Rational operator-() const;
    friend Rational operator+(const Rational& x, const Rational& y);
    friend Rational operator-(const Rational& x, const Rational& y);
    friend Rational operator*(const Rational& x, const Rational& y);
    friend Rational operator/(const Rational& x, const Rational& y);
    Rational& operator+=(const Rational& y) { return *this = *this + y; }
    Rational& operator-=(const Rational& y) { return *this = *this - y; }
    Rational& operator*=(const Rational& y) { return *this = *this * y; }

    friend bool operator==(const Rational& x, const Rational& y);
    friend std::strong_ordering operator<=>(const Rational& x, const Rational& y);

  private:
    struct Raw {};
    Rational(Raw, std::int64_t num, std::int64_t den) : num_(num), den_(den) {}
    static Rational reduce_wide(__int128 num, __int128 den);
    void normalize_big();

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::shared_ptr<const BigRational> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& x);

} // namespace torusmd
