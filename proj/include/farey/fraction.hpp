#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "farey/error.hpp"

namespace farey {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number kept in lowest terms with a positive denominator.
class Fraction {
public:
    Fraction() : num_(0), den_(1) {}
    Fraction(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_ == 0) throw domain_error("Fraction: zero denominator");
        normalize();
    }
    Fraction(std::int64_t num, std::int64_t den) : Fraction(BigInt(num), BigInt(den)) {}
    explicit Fraction(std::int64_t n) : num_(n), den_(1) {}

    const BigInt& num() const noexcept { return num_; }
    const BigInt& den() const noexcept { return den_; }

    double to_double() const {
        using wide = boost::multiprecision::cpp_bin_float_50;
        return (wide(num_) / wide(den_)).convert_to<double>();
    }

    long double to_long_double() const {
        using wide = boost::multiprecision::cpp_bin_float_50;
        return (wide(num_) / wide(den_)).convert_to<long double>();
    }

    std::string to_string() const { return num_.str() + "/" + den_.str(); }

    friend bool operator==(const Fraction& a, const Fraction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
        const BigInt lhs = a.num_ * b.den_;
        const BigInt rhs = b.num_ * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend Fraction operator+(const Fraction& a, const Fraction& b) {
        return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }
    friend Fraction operator-(const Fraction& a, const Fraction& b) {
        return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
    }
    friend Fraction operator*(const Fraction& a, const Fraction& b) {
        return {a.num_ * b.num_, a.den_ * b.den_};
    }
    friend Fraction operator/(const Fraction& a, const Fraction& b) {
        if (b.num_ == 0) throw domain_error("Fraction: division by zero");
        return {a.num_ * b.den_, a.den_ * b.num_};
    }
    Fraction& operator+=(const Fraction& o) { return *this = *this + o; }

    friend std::ostream& operator<<(std::ostream& os, const Fraction& f) {
        return os << f.to_string();
    }

private:
    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        BigInt g = boost::multiprecision::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    BigInt num_;
    BigInt den_;
};

/// Parses "p/q" or "p".
inline Fraction parse_fraction(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return {BigInt(text), BigInt(1)};
        return {BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1))};
    } catch (const std::runtime_error&) {
        throw domain_error("parse_fraction: malformed rational '" + text + "'");
    }
}

}  // namespace farey
