#pragma once

#include "torusmd/rational.hpp"

#include <compare>
#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace torusmd {

/// Integer polynomial, lowest degree first.
using IntPolynomial = std::vector<BigInt>;

/// The N-th cyclotomic polynomial, obtained by dividing x^N - 1 by every
/// Phi_d for proper divisors d of N. Throws Error(InvalidInput) for N < 1.
IntPolynomial cyclotomic_polynomial(int order);

/// Q(zeta_N) presented as Q[x]/Phi_N. Instances are interned per order and
/// immutable, so they can be shared freely across threads.
class CyclotomicField {
  public:
    static std::shared_ptr<const CyclotomicField> get(int order);

    int order() const noexcept { return order_; }
    int degree() const noexcept { return degree_; }
    /// Phi_N as rationals, monic, length degree()+1.
    const std::vector<Rational>& modulus() const noexcept { return modulus_; }
    /// zeta^k reduced modulo Phi_N, for k in [0, order).
    std::span<const Rational> power(std::int64_t k) const;

    explicit CyclotomicField(int order);

  private:
    int order_;
    int degree_;
    std::vector<Rational> modulus_;
    std::vector<Rational> powers_; // order_ rows of degree_ coefficients
};

/// Exact element of the N-th cyclotomic field in canonical form: a
/// polynomial in zeta_N of degree below phi(N), reduced modulo Phi_N. Two
/// values are equal iff their coefficient vectors are equal.
class CycloNum {
  public:
    /// Zero of Q(zeta_1) = Q.
    CycloNum();
    static CycloNum zero(int order);
    static CycloNum from_rational(int order, const Rational& value);
    /// Arbitrary-length coefficient list in powers of zeta; reduced on entry.
    static CycloNum from_coeffs(int order, std::span<const Rational> coeffs);

    int order() const noexcept { return field_->order(); }
    std::span<const Rational> coeffs() const noexcept { return coeffs_; }
    bool is_zero() const;
    /// The value as a rational when it lies in Q.
    bool is_rational() const;

    /// Galois automorphism zeta -> zeta^-1 (complex conjugation).
    CycloNum conjugate() const;
    /// Image under Q(zeta_N) -> Q(zeta_M), zeta_N -> zeta_M^(M/N). M must be a multiple of N.
    CycloNum embed(int new_order) const;

    /// Floating-point value at zeta_N = exp(2 pi i / N). For display only.
    std::complex<double> to_complex() const;
    /// Human-readable polynomial in z = zeta_N, e.g. "2*z^2 + 2*z^3".
    std::string to_string() const;

    CycloNum operator-() const;
    friend CycloNum operator+(const CycloNum& x, const CycloNum& y);
    friend CycloNum operator-(const CycloNum& x, const CycloNum& y);
    friend CycloNum operator*(const CycloNum& x, const CycloNum& y);
    friend CycloNum operator*(const Rational& s, const CycloNum& x);
    CycloNum& operator+=(const CycloNum& y);
    CycloNum& operator*=(const CycloNum& y) { return *this = *this * y; }

    /// Exact equality; throws Error(OrderMismatch) when orders differ.
    friend bool operator==(const CycloNum& x, const CycloNum& y);
    /// Total order (order first, then coefficients) used for sorting multisets.
    friend std::strong_ordering operator<=>(const CycloNum& x, const CycloNum& y);

  private:
    CycloNum(std::shared_ptr<const CyclotomicField> field, std::vector<Rational> coeffs)
        : field_(std::move(field)), coeffs_(std::move(coeffs)) {}
    static void require_same_order(const CycloNum& x, const CycloNum& y);

    std::shared_ptr<const CyclotomicField> field_;
    std::vector<Rational> coeffs_;
};

/// zeta_N^k; depends only on k mod N.
CycloNum root_of_unity(int order, std::int64_t k);

/// Equality of values that may live in different cyclotomic fields,
/// decided after embedding both into Q(zeta_lcm).
bool same_value(const CycloNum& x, const CycloNum& y);

} // namespace torusmd
