#include "torusmd/cyclotomic.hpp"

#include "torusmd/error.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <unordered_map>

namespace torusmd {

namespace {

// Exact quotient of p by a monic divisor; the remainder must vanish.
IntPolynomial divide_exact(const IntPolynomial& p, const IntPolynomial& divisor) {
    IntPolynomial rem = p;
    const std::size_t dd = divisor.size() - 1;
    IntPolynomial quot(p.size() - dd, BigInt(0));
    for (std::size_t k = p.size(); k-- > dd;) {
        BigInt t = rem[k];
        if (t == 0) continue;
        quot[k - dd] = t;
        for (std::size_t i = 0; i <= dd; ++i) rem[k - dd + i] -= t * divisor[i];
    }
    for (std::size_t i = 0; i < dd; ++i)
        if (rem[i] != 0) throw Error(ErrorCode::InternalInconsistency, "inexact cyclotomic division");
    return quot;
}

} // namespace

IntPolynomial cyclotomic_polynomial(int order) {
    if (order < 1) throw Error(ErrorCode::InvalidInput, "cyclotomic order must be positive");
    static std::mutex mutex;
    static std::map<int, IntPolynomial> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(order); it != cache.end()) return it->second;
    }
    IntPolynomial p(std::size_t(order) + 1, BigInt(0));
    p[0] = -1;
    p[std::size_t(order)] = 1;
    for (int d = 1; d < order; ++d)
        if (order % d == 0) p = divide_exact(p, cyclotomic_polynomial(d));
    std::lock_guard lock(mutex);
    return cache.emplace(order, std::move(p)).first->second;
}

CyclotomicField::CyclotomicField(int order) : order_(order) {
    const IntPolynomial phi = cyclotomic_polynomial(order);
    degree_ = int(phi.size()) - 1;
    modulus_.reserve(phi.size());
    for (const auto& c : phi) modulus_.push_back(Rational::from_big(c, 1));

    const auto n = std::size_t(degree_);
    powers_.assign(std::size_t(order_) * n, Rational(0));
    powers_[0] = 1;
    for (std::size_t k = 1; k < std::size_t(order_); ++k) {
        const Rational* prev = &powers_[(k - 1) * n];
        Rational* row = &powers_[k * n];
        const Rational top = prev[n - 1];
        for (std::size_t i = n; i-- > 1;) row[i] = prev[i - 1];
        row[0] = 0;
        if (!top.is_zero())
            for (std::size_t i = 0; i < n; ++i)
                if (!modulus_[i].is_zero()) row[i] -= top * modulus_[i];
    }
}

std::shared_ptr<const CyclotomicField> CyclotomicField::get(int order) {
    if (order < 1) throw Error(ErrorCode::InvalidInput, "cyclotomic order must be positive");
    thread_local std::unordered_map<int, std::shared_ptr<const CyclotomicField>> local;
    if (auto it = local.find(order); it != local.end()) return it->second;

    static std::mutex mutex;
    static std::map<int, std::shared_ptr<const CyclotomicField>> shared;
    std::shared_ptr<const CyclotomicField> field;
    {
        std::lock_guard lock(mutex);
        auto& slot = shared[order];
        if (!slot) slot = std::make_shared<const CyclotomicField>(order);
        field = slot;
    }
    local.emplace(order, field);
    return field;
}

std::span<const Rational> CyclotomicField::power(std::int64_t k) const {
    std::int64_t r = k % order_;
    if (r < 0) r += order_;
    return {powers_.data() + std::size_t(r) * std::size_t(degree_), std::size_t(degree_)};
}

CycloNum::CycloNum() : CycloNum(zero(1)) {}

CycloNum CycloNum::zero(int order) {
    auto field = CyclotomicField::get(order);
    std::vector<Rational> coeffs(std::size_t(field->degree()), Rational(0));
    return CycloNum(std::move(field), std::move(coeffs));
}

CycloNum CycloNum::from_rational(int order, const Rational& value) {
    CycloNum out = zero(order);
    out.coeffs_[0] = value;
    return out;
}

CycloNum CycloNum::from_coeffs(int order, std::span<const Rational> coeffs) {
    CycloNum out = zero(order);
    const auto n = out.coeffs_.size();
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i].is_zero()) continue;
        if (i < n) {
            out.coeffs_[i] += coeffs[i];
        } else {
            auto p = out.field_->power(std::int64_t(i));
            for (std::size_t j = 0; j < n; ++j)
                if (!p[j].is_zero()) out.coeffs_[j] += coeffs[i] * p[j];
        }
    }
    return out;
}

bool CycloNum::is_zero() const {
    for (const auto& c : coeffs_)
        if (!c.is_zero()) return false;
    return true;
}

bool CycloNum::is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (!coeffs_[i].is_zero()) return false;
    return true;
}

CycloNum CycloNum::conjugate() const {
    CycloNum out = zero(order());
    const auto n = coeffs_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (coeffs_[i].is_zero()) continue;
        auto p = field_->power(-std::int64_t(i));
        for (std::size_t j = 0; j < n; ++j)
            if (!p[j].is_zero()) out.coeffs_[j] += coeffs_[i] * p[j];
    }
    return out;
}

CycloNum CycloNum::embed(int new_order) const {
    if (new_order < 1 || new_order % order() != 0)
        throw Error(ErrorCode::OrderMismatch, "embedding target order " + std::to_string(new_order) +
                                                  " is not a multiple of " + std::to_string(order()));
    const std::int64_t step = new_order / order();
    CycloNum out = zero(new_order);
    const auto m = out.coeffs_.size();
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        auto p = out.field_->power(step * std::int64_t(i));
        for (std::size_t j = 0; j < m; ++j)
            if (!p[j].is_zero()) out.coeffs_[j] += coeffs_[i] * p[j];
    }
    return out;
}

std::complex<double> CycloNum::to_complex() const {
    std::complex<double> sum = 0.0;
    const double base = 2.0 * std::numbers::pi / double(order());
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (!coeffs_[i].is_zero()) sum += coeffs_[i].to_double() * std::polar(1.0, base * double(i));
    return sum;
}

std::string CycloNum::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const Rational& c = coeffs_[i];
        if (c.is_zero()) continue;
        const bool negative = c.sign() < 0;
        const Rational mag = negative ? -c : c;
        if (out.empty())
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        std::string monomial = i == 0 ? "" : (i == 1 ? "z" : "z^" + std::to_string(i));
        if (monomial.empty())
            out += mag.to_string();
        else if (mag == Rational(1))
            out += monomial;
        else
            out += mag.to_string() + "*" + monomial;
    }
    return out.empty() ? "0" : out;
}

void CycloNum::require_same_order(const CycloNum& x, const CycloNum& y) {
    if (x.order() != y.order())
        throw Error(ErrorCode::OrderMismatch, "cyclotomic orders differ: " + std::to_string(x.order()) +
                                                  " vs " + std::to_string(y.order()));
}

CycloNum CycloNum::operator-() const {
    CycloNum out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
}

CycloNum& CycloNum::operator+=(const CycloNum& y) {
    require_same_order(*this, y);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (!y.coeffs_[i].is_zero()) coeffs_[i] += y.coeffs_[i];
    return *this;
}

CycloNum operator+(const CycloNum& x, const CycloNum& y) {
    CycloNum out = x;
    out += y;
    return out;
}

CycloNum operator-(const CycloNum& x, const CycloNum& y) {
    CycloNum::require_same_order(x, y);
    CycloNum out = x;
    for (std::size_t i = 0; i < out.coeffs_.size(); ++i)
        if (!y.coeffs_[i].is_zero()) out.coeffs_[i] -= y.coeffs_[i];
    return out;
}

CycloNum operator*(const CycloNum& x, const CycloNum& y) {
    CycloNum::require_same_order(x, y);
    const std::size_t n = x.coeffs_.size();
    std::vector<Rational> prod(2 * n - 1, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        if (x.coeffs_[i].is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j)
            if (!y.coeffs_[j].is_zero()) prod[i + j] += x.coeffs_[i] * y.coeffs_[j];
    }
    const auto& phi = x.field_->modulus();
    for (std::size_t k = prod.size(); k-- > n;) {
        const Rational t = prod[k];
        if (t.is_zero()) continue;
        for (std::size_t i = 0; i < n; ++i)
            if (!phi[i].is_zero()) prod[k - n + i] -= t * phi[i];
    }
    prod.resize(n);
    return CycloNum(x.field_, std::move(prod));
}

CycloNum operator*(const Rational& s, const CycloNum& x) {
    CycloNum out = x;
    for (auto& c : out.coeffs_)
        if (!c.is_zero()) c *= s;
    return out;
}

bool operator==(const CycloNum& x, const CycloNum& y) {
    CycloNum::require_same_order(x, y);
    return x.coeffs_ == y.coeffs_;
}

std::strong_ordering operator<=>(const CycloNum& x, const CycloNum& y) {
    if (auto c = x.order() <=> y.order(); c != 0) return c;
    for (std::size_t i = 0; i < x.coeffs_.size(); ++i)
        if (auto c = x.coeffs_[i] <=> y.coeffs_[i]; c != 0) return c;
    return std::strong_ordering::equal;
}

CycloNum root_of_unity(int order, std::int64_t k) {
    auto field = CyclotomicField::get(order);
    auto p = field->power(k);
    return CycloNum::from_coeffs(order, p);
}

bool same_value(const CycloNum& x, const CycloNum& y) {
    const int common = std::lcm(x.order(), y.order());
    return x.embed(common) == y.embed(common);
}

} // namespace torusmd
