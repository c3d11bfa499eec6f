#include "torusmd/rational.hpp"

#include "torusmd/error.hpp"

#include <limits>
#include <ostream>

namespace torusmd {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr i128 kMin64 = std::numeric_limits<std::int64_t>::min();
constexpr i128 kMax64 = std::numeric_limits<std::int64_t>::max();

bool fits64(i128 v) { return v >= kMin64 && v <= kMax64; }

u128 uabs(i128 v) { return v < 0 ? u128(0) - u128(v) : u128(v); }

u128 gcd128(u128 a, u128 b) {
    if (a == 0) return b;
    if (b == 0) return a;
    int shift = 0;
    while (((a | b) & 1) == 0) {
        a >>= 1;
        b >>= 1;
        ++shift;
    }
    while ((a & 1) == 0) a >>= 1;
    do {
        while ((b & 1) == 0) b >>= 1;
        if (a > b) std::swap(a, b);
        b -= a;
    } while (b != 0);
    return a << shift;
}

BigInt to_big_int(i128 v) {
    bool neg = v < 0;
    u128 mag = uabs(v);
    BigInt hi = BigInt(std::uint64_t(mag >> 64));
    BigInt out = (hi << 64) + BigInt(std::uint64_t(mag));
    return neg ? BigInt(-out) : out;
}

} // namespace

// n/d with d != 0, reduced and demoted when possible.
Rational Rational::reduce_wide(i128 n, i128 d) {
    if (d < 0) {
        // |n|,|d| < 2^127 for every caller, so negation is safe.
        n = -n;
        d = -d;
    }
    u128 g = gcd128(uabs(n), u128(d));
    if (g > 1) {
        n /= i128(g);
        d /= i128(g);
    }
    if (fits64(n) && fits64(d)) return Rational(Raw{}, std::int64_t(n), std::int64_t(d));
    return Rational::from_big(to_big_int(n), to_big_int(d));
}

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw Error(ErrorCode::InvalidInput, "rational with zero denominator");
    *this = reduce_wide(num, den);
}

Rational::Rational(const BigRational& value) : big_(std::make_shared<const BigRational>(value)) {
    normalize_big();
}

Rational Rational::from_big(const BigInt& num, const BigInt& den) {
    if (den == 0) throw Error(ErrorCode::InvalidInput, "rational with zero denominator");
    return Rational(BigRational(num, den));
}

void Rational::normalize_big() {
    const BigInt n = boost::multiprecision::numerator(*big_);
    const BigInt d = boost::multiprecision::denominator(*big_);
    if (n >= BigInt(kMin64) && n <= BigInt(kMax64) && d <= BigInt(kMax64)) {
        num_ = n.convert_to<std::int64_t>();
        den_ = d.convert_to<std::int64_t>();
        big_.reset();
    }
}

BigInt Rational::numerator() const {
    return big_ ? BigInt(boost::multiprecision::numerator(*big_)) : BigInt(num_);
}

BigInt Rational::denominator() const {
    return big_ ? BigInt(boost::multiprecision::denominator(*big_)) : BigInt(den_);
}

BigRational Rational::to_big() const {
    return big_ ? *big_ : BigRational(BigInt(num_), BigInt(den_));
}

int Rational::sign() const noexcept {
    if (big_) return big_->sign();
    return (num_ > 0) - (num_ < 0);
}

double Rational::to_double() const {
    if (big_) return big_->convert_to<double>();
    return double(num_) / double(den_);
}

std::string Rational::to_string() const {
    if (big_) {
        std::string s = numerator().str();
        BigInt d = denominator();
        if (d != 1) s += "/" + d.str();
        return s;
    }
    std::string s = std::to_string(num_);
    if (den_ != 1) s += "/" + std::to_string(den_);
    return s;
}

Rational Rational::parse(const std::string& text) {
    auto slash = text.find('/');
    auto parse_int = [&](const std::string& part) {
        if (part.empty()) throw Error(ErrorCode::InvalidInput, "malformed rational '" + text + "'");
        std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (start == part.size() || part.find_first_not_of("0123456789", start) != std::string::npos)
            throw Error(ErrorCode::InvalidInput, "malformed rational '" + text + "'");
        return BigInt(part[0] == '+' ? part.substr(1) : part);
    };
    if (slash == std::string::npos) return from_big(parse_int(text), 1);
    return from_big(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

Rational Rational::mod1() const {
    if (!big_) {
        std::int64_t r = num_ % den_;
        if (r < 0) r += den_;
        return Rational(Raw{}, r, den_);
    }
    BigInt n = numerator(), d = denominator();
    BigInt r = n % d;
    if (r < 0) r += d;
    return from_big(r, d);
}

std::optional<Rational> Rational::sqrt() const {
    if (sign() < 0) return std::nullopt;
    BigInt n = numerator(), d = denominator();
    BigInt rn = boost::multiprecision::sqrt(n), rd = boost::multiprecision::sqrt(d);
    if (rn * rn != n || rd * rd != d) return std::nullopt;
    return from_big(rn, rd);
}

Rational Rational::operator-() const {
    if (!big_ && num_ != std::numeric_limits<std::int64_t>::min()) return Rational(Raw{}, -num_, den_);
    return Rational(BigRational(-to_big()));
}

Rational operator+(const Rational& x, const Rational& y) {
    if (!x.big_ && !y.big_) {
        if (x.den_ == 1 && y.den_ == 1) {
            i128 s = i128(x.num_) + y.num_;
            if (fits64(s)) return Rational(std::int64_t(s));
        }
        return Rational::reduce_wide(i128(x.num_) * y.den_ + i128(y.num_) * x.den_, i128(x.den_) * y.den_);
    }
    return Rational(BigRational(x.to_big() + y.to_big()));
}

Rational operator-(const Rational& x, const Rational& y) {
    if (!x.big_ && !y.big_) {
        if (x.den_ == 1 && y.den_ == 1) {
            i128 s = i128(x.num_) - y.num_;
            if (fits64(s)) return Rational(std::int64_t(s));
        }
        return Rational::reduce_wide(i128(x.num_) * y.den_ - i128(y.num_) * x.den_, i128(x.den_) * y.den_);
    }
    return Rational(BigRational(x.to_big() - y.to_big()));
}

Rational operator*(const Rational& x, const Rational& y) {
    if (!x.big_ && !y.big_) {
        if (x.den_ == 1 && y.den_ == 1) {
            i128 p = i128(x.num_) * y.num_;
            if (fits64(p)) return Rational(std::int64_t(p));
            return Rational::from_big(to_big_int(p), 1);
        }
        return Rational::reduce_wide(i128(x.num_) * y.num_, i128(x.den_) * y.den_);
    }
    return Rational(BigRational(x.to_big() * y.to_big()));
}

Rational operator/(const Rational& x, const Rational& y) {
    if (y.is_zero()) throw Error(ErrorCode::InvalidInput, "division by zero");
    if (!x.big_ && !y.big_) return Rational::reduce_wide(i128(x.num_) * y.den_, i128(x.den_) * y.num_);
    return Rational(BigRational(x.to_big() / y.to_big()));
}

bool operator==(const Rational& x, const Rational& y) {
    // Both sides are canonical, so a small value never equals a big one.
    if (!x.big_ && !y.big_) return x.num_ == y.num_ && x.den_ == y.den_;
    if (x.big_ && y.big_) return *x.big_ == *y.big_;
    return false;
}

std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
    if (!x.big_ && !y.big_) {
        i128 lhs = i128(x.num_) * y.den_, rhs = i128(y.num_) * x.den_;
        return lhs <=> rhs;
    }
    BigRational a = x.to_big(), b = y.to_big();
    if (a < b) return std::strong_ordering::less;
    if (a > b) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.to_string(); }

} // namespace torusmd
