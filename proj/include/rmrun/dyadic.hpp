#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace rmrun {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact number of the form num / 2^exp, kept in normal form: num is odd
/// or zero, and exp == 0 when no factor of two can be cancelled. Closed
/// under +, -, * and shifts by powers of two.
class Dyadic {
  public:
    Dyadic() = default;
    Dyadic(long v) : num_(v) {}  // NOLINT(google-explicit-constructor)
    Dyadic(BigInt numerator, std::uint64_t exponent)
        : num_(std::move(numerator)), exp_(exponent) {
        normalize();
    }

    const BigInt& numerator() const { return num_; }
    std::uint64_t exponent() const { return exp_; }
    BigInt denominator() const { return BigInt(1) << exp_; }

    bool is_zero() const { return num_ == 0; }
    int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

    Dyadic operator-() const;
    Dyadic operator+(const Dyadic& o) const;
    Dyadic operator-(const Dyadic& o) const;
    Dyadic operator*(const Dyadic& o) const;
    Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
    Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }
    Dyadic& operator*=(const Dyadic& o) { return *this = *this * o; }

    /// Value * 2^k.
    Dyadic mul_pow2(std::int64_t k) const;

    Dyadic abs() const { return num_ < 0 ? -*this : *this; }

    friend bool operator==(const Dyadic& a, const Dyadic& b) {
        return a.num_ == b.num_ && a.exp_ == b.exp_;
    }
    friend auto operator<=>(const Dyadic& a, const Dyadic& b) {
        return (a - b).sign() <=> 0;
    }

    Rational to_rational() const;

    /// Nearest double plus a certified bound on |exact - double|.
    std::pair<double, double> to_float() const;

    /// Canonical text: plain decimal integer when exp == 0, otherwise
    /// "num/den" with den = 2^exp in decimal.
    std::string to_string() const;

    /// Inverse of to_string; accepts any integer numerator and any
    /// power-of-two denominator. Throws InvalidFormat otherwise.
    static Dyadic parse(std::string_view text);

    /// 1 / 2^k.
    static Dyadic pow2_inv(std::uint64_t k) { return Dyadic(BigInt(1), k); }

  private:
    BigInt num_;
    std::uint64_t exp_ = 0;

    void normalize();
};

/// Exact dyadic value of a double (every finite double is dyadic).
Dyadic dyadic_from_double(double v);

}  // namespace rmrun
