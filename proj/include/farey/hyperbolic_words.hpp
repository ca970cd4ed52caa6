#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "farey/continued_fraction.hpp"
#include "farey/error.hpp"
#include "farey/fraction.hpp"
#include "farey/word.hpp"

namespace farey {

/// Integer matrix [[a', a], [b', b]] with a'b - ab' = 1, acting as z -> (a'z + a)/(b'z + b).
class UnimodularMatrix {
public:
    UnimodularMatrix(BigInt a_prime, BigInt a, BigInt b_prime, BigInt b)
        : ap_(std::move(a_prime)), a_(std::move(a)), bp_(std::move(b_prime)), b_(std::move(b)) {
        if (ap_ * b_ - a_ * bp_ != 1) throw domain_error("UnimodularMatrix: determinant must be 1");
    }
    UnimodularMatrix(std::int64_t ap, std::int64_t a, std::int64_t bp, std::int64_t b)
        : UnimodularMatrix(BigInt(ap), BigInt(a), BigInt(bp), BigInt(b)) {}

    static UnimodularMatrix identity() { return {1, 0, 0, 1}; }
    /// Keeps the left endpoint, moves the right one to the mediant.
    static UnimodularMatrix left() { return {1, 0, 1, 1}; }
    /// Keeps the right endpoint, moves the left one to the mediant.
    static UnimodularMatrix right() { return {1, 1, 0, 1}; }

    const BigInt& a_prime() const noexcept { return ap_; }
    const BigInt& a() const noexcept { return a_; }
    const BigInt& b_prime() const noexcept { return bp_; }
    const BigInt& b() const noexcept { return b_; }

    friend UnimodularMatrix operator*(const UnimodularMatrix& x, const UnimodularMatrix& y) {
        return {x.ap_ * y.ap_ + x.a_ * y.bp_, x.ap_ * y.a_ + x.a_ * y.b_,
                x.bp_ * y.ap_ + x.b_ * y.bp_, x.bp_ * y.a_ + x.b_ * y.b_};
    }
    friend bool operator==(const UnimodularMatrix&, const UnimodularMatrix&) = default;

private:
    BigInt ap_, a_, bp_, b_;
};

/// Product of L and R matrices spelled by `w`.
inline UnimodularMatrix word_matrix(const Word& w) {
    UnimodularMatrix m = UnimodularMatrix::identity();
    for (Letter x : w.letters) m = m * (x == Letter::L ? UnimodularMatrix::left() : UnimodularMatrix::right());
    return m;
}

/// Image of [0, 1] under a unimodular Mobius map.
struct ShrinkResult {
    std::optional<std::pair<Fraction, Fraction>> interval;  // nullopt when an endpoint is at infinity
    std::optional<Fraction> length;                         // nullopt means infinite

    bool infinite() const noexcept { return !length.has_value(); }
};

/// [a/b, (a+a')/(b+b')], of length 1/(b(b'+b)); infinite when b(b'+b) = 0.
/// Endpoints are ordered smaller to larger.
inline ShrinkResult mobius_shrink(const UnimodularMatrix& u) {
    const BigInt scale = u.b() * (u.b_prime() + u.b());
    if (scale == 0) return {};
    Fraction lo(u.a(), u.b());
    Fraction hi(u.a() + u.a_prime(), u.b() + u.b_prime());
    if (hi < lo) std::swap(lo, hi);
    const BigInt mag = scale < 0 ? BigInt(-scale) : scale;
    return {std::pair{std::move(lo), std::move(hi)}, Fraction(BigInt(1), mag)};
}

/// True iff x = a/b < y = a'/b' are neighbours in some Farey-Brocot partition (a'b - ab' = 1).
inline bool adjacency_check(const Fraction& x, const Fraction& y) {
    if (!(x < y)) throw ordering_error("adjacency_check: requires x < y");
    if (x < Fraction(0, 1) || Fraction(1, 1) < y) throw domain_error("adjacency_check: values must lie in [0, 1]");
    return y.num() * x.den() - x.num() * y.den() == 1;
}

/// Eventually periodic continued fraction [prefix, (period)^inf], a quadratic irrational in (0, 1).
class PeriodicCF {
public:
    PeriodicCF(std::vector<Quotient> prefix, std::vector<Quotient> period)
        : prefix_(std::move(prefix)), period_(std::move(period)) {
        if (period_.empty()) throw domain_error("PeriodicCF: period must be non-empty");
        for (Quotient q : prefix_)
            if (q == 0) throw domain_error("PeriodicCF: quotients must be >= 1");
        for (Quotient q : period_)
            if (q == 0) throw domain_error("PeriodicCF: quotients must be >= 1");
    }
    Quotient term(std::size_t i) const {
        return i < prefix_.size() ? prefix_[i] : period_[(i - prefix_.size()) % period_.size()];
    }

    /// -1, 0, +1 as this value is below, equal to, above m (0 < m <= 1). Never 0.
    int compare(const Fraction& m) const {
        const ContinuedFraction b = cf_from_fraction(m);
        for (std::size_t i = 0;; ++i) {
            // Past the end of m's expansion its next quotient is effectively infinite.
            const bool m_ended = i == b.size();
            if (!m_ended && term(i) == b[i]) continue;
            const bool x_term_smaller = m_ended || term(i) < b[i];
            // Even positions (a_1, a_3, ...) reverse the order.
            const bool x_larger = (i % 2 == 0) == x_term_smaller;
            return x_larger ? 1 : -1;
        }
    }

private:
    std::vector<Quotient> prefix_, period_;
};

/// T/F word of the vertical geodesic ending at the input value.
struct CuttingWord {
    std::string letters;     // over {T, F}
    bool terminated = false; // geodesic ended on a Farey vertex before the requested depth

    std::vector<Quotient> blocks() const {
        std::vector<Quotient> out;
        for (std::size_t i = 0; i < letters.size(); ++i) {
            if (i == 0 || letters[i] != letters[i - 1]) out.push_back(0);
            ++out.back();
        }
        return out;
    }
    std::string to_string() const { return terminated ? letters + "|" : letters; }
};

namespace detail {

/// Crosses Farey triangles (l, m, r) from the top tile (0, 1, inf) down towards the
/// value. A triangle with only l left of the geodesic is thin (T), with l and m it is
/// fat (F). When the geodesic lands on m it continues the current block and stops.
inline CuttingWord cut(const std::function<int(const Fraction&)>& cmp, std::size_t depth) {
    if (depth < 1) throw domain_error("cutting_sequence: depth must be >= 1");
    CuttingWord w;
    w.letters.push_back('T');  // top tile
    const int top = cmp(Fraction(1, 1));
    if (top > 0) throw domain_error("cutting_sequence: value must lie in (0, 1]");
    if (top == 0) {
        w.terminated = true;
        return w;
    }
    BigInt a = 0, b = 1, c = 1, d = 1;  // (a/b, c/d)
    while (w.letters.size() < depth) {
        const Fraction m(a + c, b + d);
        const int s = cmp(m);
        if (s == 0) {
            w.letters.push_back(w.letters.back());
            w.terminated = true;
            break;
        }
        if (s < 0) {
            w.letters.push_back('T');
            c = m.num();
            d = m.den();
        } else {
            w.letters.push_back('F');
            a = m.num();
            b = m.den();
        }
    }
    return w;
}

}  // namespace detail

inline CuttingWord cutting_sequence(const Fraction& x, std::size_t depth) {
    if (!(Fraction(0, 1) < x)) throw domain_error("cutting_sequence: value must lie in (0, 1]");
    return detail::cut([&](const Fraction& m) { return x < m ? -1 : (m < x ? 1 : 0); }, depth);
}

inline CuttingWord cutting_sequence(const ContinuedFraction& cf, std::size_t depth) {
    return cutting_sequence(fraction_from_cf(cf), depth);
}

inline CuttingWord cutting_sequence(const PeriodicCF& x, std::size_t depth) {
    return detail::cut([&](const Fraction& m) { return x.compare(m); }, depth);
}

}  // namespace farey
