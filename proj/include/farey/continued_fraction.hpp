#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "farey/error.hpp"
#include "farey/fraction.hpp"

namespace farey {

using Quotient = std::uint64_t;

/// Finite simple continued fraction [a_1, ..., a_n] = 1/(a_1 + 1/(a_2 + ... + 1/a_n)).
///
/// Only the canonical form is accepted: every a_j >= 1 and, when n >= 2, a_n >= 2.
/// The represented value lies in (0, 1].
class ContinuedFraction {
public:
    explicit ContinuedFraction(std::vector<Quotient> quotients) : a_(std::move(quotients)) {
        if (a_.empty()) throw domain_error("ContinuedFraction: empty quotient list");
        for (Quotient q : a_)
            if (q == 0) throw domain_error("ContinuedFraction: partial quotients must be >= 1");
        if (a_.size() >= 2 && a_.back() == 1)
            throw domain_error("ContinuedFraction: non-canonical form, trailing quotient 1");
    }
    ContinuedFraction(std::initializer_list<Quotient> q)
        : ContinuedFraction(std::vector<Quotient>(q)) {}

    std::span<const Quotient> quotients() const noexcept { return a_; }
    std::size_t size() const noexcept { return a_.size(); }
    Quotient operator[](std::size_t i) const { return a_.at(i); }

    /// N = a_1 + ... + a_n, the restricted-tree row in which p/q is born.
    Quotient quotient_sum() const { return std::accumulate(a_.begin(), a_.end(), Quotient{0}); }

    /// Farey-Brocot level at which p/q first appears as a partition breakpoint
    /// (level 1 creates 1/2). Equals quotient_sum() - 1.
    Quotient creation_level() const { return quotient_sum() - 1; }

    /// r_j: how many partial quotients equal j.
    std::map<Quotient, std::size_t> census() const {
        std::map<Quotient, std::size_t> r;
        for (Quotient q : a_) ++r[q];
        return r;
    }

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < a_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(a_[i]);
        }
        return s + "]";
    }

    friend bool operator==(const ContinuedFraction&, const ContinuedFraction&) = default;

private:
    std::vector<Quotient> a_;
};

/// Cumulants q_1..q_n with seeds q_0 = 1, q_{-1} = 0.
inline std::vector<BigInt> cumulants(const ContinuedFraction& cf) {
    std::vector<BigInt> q;
    q.reserve(cf.size());
    BigInt prev = 0, cur = 1;
    for (Quotient a : cf.quotients()) {
        BigInt next = BigInt(a) * cur + prev;
        prev = std::move(cur);
        cur = next;
        q.push_back(std::move(next));
    }
    return q;
}

/// Numerators p_1..p_n of the convergents, seeds p_0 = 0, p_{-1} = 1.
inline std::vector<BigInt> convergent_numerators(const ContinuedFraction& cf) {
    std::vector<BigInt> p;
    p.reserve(cf.size());
    BigInt prev = 1, cur = 0;
    for (Quotient a : cf.quotients()) {
        BigInt next = BigInt(a) * cur + prev;
        prev = std::move(cur);
        cur = next;
        p.push_back(std::move(next));
    }
    return p;
}

/// Evaluates the nested fraction exactly.
inline Fraction fraction_from_cf(const ContinuedFraction& cf) {
    const auto q = cumulants(cf);
    const auto p = convergent_numerators(cf);
    return {p.back(), q.back()};
}

/// Canonical expansion of 0 < x <= 1.
inline ContinuedFraction cf_from_fraction(const Fraction& x) {
    if (x.num() <= 0 || x.num() > x.den())
        throw domain_error("cf_from_fraction: value " + x.to_string() + " outside (0, 1]");
    std::vector<Quotient> a;
    // x = num/den; 1/x = den/num = a_1 + rest.
    BigInt num = x.num(), den = x.den();
    while (num != 0) {
        BigInt quo = den / num;
        BigInt rem = den % num;
        if (quo > std::numeric_limits<Quotient>::max())
            throw resource_error("cf_from_fraction: partial quotient exceeds 64 bits");
        a.push_back(quo.convert_to<Quotient>());
        den = std::move(num);
        num = std::move(rem);
    }
    // The Euclidean algorithm already ends with a_n >= 2 unless x = 1.
    return ContinuedFraction(std::move(a));
}

/// log of the Besicovitch cumulant estimate, n log c + sum_j log(a_j + 1).
inline double log_besicovitch_q(const ContinuedFraction& cf, double c) {
    if (!(c > 0)) throw domain_error("besicovitch_q: contraction constant must be positive");
    double s = static_cast<double>(cf.size()) * std::log(c);
    for (Quotient a : cf.quotients()) s += std::log(static_cast<double>(a) + 1.0);
    return s;
}

/// Besicovitch estimate q_n ~ [c 2^{l_1} 3^{l_2} ... (k+1)^{l_k}]^n = c^n prod (a_j + 1).
/// Depends only on how often each quotient value occurs, not on their order.
inline double besicovitch_q(const ContinuedFraction& cf, double c) {
    return std::exp(log_besicovitch_q(cf, c));
}

}  // namespace farey
