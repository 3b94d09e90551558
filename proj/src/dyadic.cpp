#include "rmrun/dyadic.hpp"

#include <cmath>
#include <limits>

#include "rmrun/errors.hpp"

namespace rmrun {

void Dyadic::normalize() {
    if (num_ == 0) {
        exp_ = 0;
        return;
    }
    unsigned lsb = boost::multiprecision::lsb(boost::multiprecision::abs(num_));
    std::uint64_t shift = std::min<std::uint64_t>(lsb, exp_);
    if (shift) {
        num_ >>= shift;
        exp_ -= shift;
    }
}

Dyadic Dyadic::operator-() const {
    Dyadic r;
    r.num_ = -num_;
    r.exp_ = exp_;
    return r;
}

Dyadic Dyadic::operator+(const Dyadic& o) const {
    std::uint64_t e = std::max(exp_, o.exp_);
    return Dyadic((num_ << (e - exp_)) + (o.num_ << (e - o.exp_)), e);
}

Dyadic Dyadic::operator-(const Dyadic& o) const {
    std::uint64_t e = std::max(exp_, o.exp_);
    return Dyadic((num_ << (e - exp_)) - (o.num_ << (e - o.exp_)), e);
}

Dyadic Dyadic::operator*(const Dyadic& o) const {
    return Dyadic(num_ * o.num_, exp_ + o.exp_);
}

Dyadic Dyadic::mul_pow2(std::int64_t k) const {
    if (num_ == 0) return Dyadic();
    Dyadic r;
    if (k >= 0) {
        std::uint64_t uk = static_cast<std::uint64_t>(k);
        if (uk >= exp_) {
            r.num_ = num_ << (uk - exp_);
            r.exp_ = 0;
        } else {
            r.num_ = num_;
            r.exp_ = exp_ - uk;
        }
    } else {
        r.num_ = num_;
        r.exp_ = exp_ + static_cast<std::uint64_t>(-k);
    }
    return r;
}

Rational Dyadic::to_rational() const {
    return Rational(num_, denominator());
}

std::pair<double, double> Dyadic::to_float() const {
    if (num_ == 0) return {0.0, 0.0};
    double d = to_rational().convert_to<double>();
    if (!std::isfinite(d)) {
        return {d, std::numeric_limits<double>::infinity()};
    }
    Dyadic err = (*this - dyadic_from_double(d)).abs();
    double bound = err.to_rational().convert_to<double>();
    // Round the reported bound upward so it certifies.
    bound = std::nextafter(bound, std::numeric_limits<double>::infinity());
    if (err.is_zero()) bound = 0.0;
    return {d, bound};
}

std::string Dyadic::to_string() const {
    if (exp_ == 0) return num_.str();
    return num_.str() + "/" + denominator().str();
}

namespace {
bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
    }
    return true;
}

BigInt parse_integer(std::string_view s) {
    bool neg = !s.empty() && s.front() == '-';
    std::string_view digits = neg ? s.substr(1) : s;
    if (!all_digits(digits)) throw InvalidFormat("Dyadic::parse: malformed integer");
    BigInt v{std::string(digits)};
    return neg ? -v : v;
}
}  // namespace

Dyadic Dyadic::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Dyadic(parse_integer(text), 0);
    }
    BigInt num = parse_integer(text.substr(0, slash));
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) throw InvalidFormat("Dyadic::parse: malformed denominator");
    BigInt den((std::string(den_text)));
    if (den <= 0) throw InvalidFormat("Dyadic::parse: denominator must be positive");
    unsigned lsb = boost::multiprecision::lsb(den);
    if ((den >> lsb) != 1) {
        throw InvalidFormat("Dyadic::parse: denominator is not a power of two");
    }
    return Dyadic(num, lsb);
}

Dyadic dyadic_from_double(double v) {
    if (v == 0.0) return Dyadic();
    int e = 0;
    double frac = std::frexp(v, &e);
    // 53-bit mantissa: frac * 2^53 is an integer.
    auto mant = static_cast<std::int64_t>(std::ldexp(frac, 53));
    return Dyadic(BigInt(mant), 0).mul_pow2(e - 53);
}

}  // namespace rmrun
