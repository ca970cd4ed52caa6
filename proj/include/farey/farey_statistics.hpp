#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "farey/continued_fraction.hpp"
#include "farey/error.hpp"
#include "farey/fb_spectrum.hpp"
#include "farey/fraction.hpp"

namespace farey {

/// Children of a restricted-tree element: [.., a_n + 1] and [.., a_n - 1, 2].
/// A zero produced by the second rule is absorbed, [.., a, 0, 2] = [.., a + 2].
inline std::pair<std::vector<Quotient>, std::vector<Quotient>> unfold_children(std::span<const Quotient> a) {
    if (a.empty()) throw domain_error("unfold_children: empty element");
    std::vector<Quotient> grow(a.begin(), a.end());
    ++grow.back();
    std::vector<Quotient> split(a.begin(), a.end());
    if (split.back() > 1) {
        --split.back();
        split.push_back(2);
    } else {
        if (split.size() < 2) throw domain_error("unfold_children: [1] has no restricted-tree children");
        split.pop_back();
        split.back() += 2;
    }
    return {std::move(grow), std::move(split)};
}

/// Elements born in row N of the restricted tree (quotient sum N), in tree order.
/// Stored flat; element i spans quotients [offset_i, offset_{i+1}).
class RestrictedRow {
public:
    RestrictedRow(unsigned N, std::vector<std::uint8_t> flat, std::vector<std::uint32_t> offsets)
        : N_(N), flat_(std::move(flat)), offsets_(std::move(offsets)) {}

    unsigned N() const noexcept { return N_; }
    std::size_t size() const noexcept { return offsets_.size() - 1; }
    std::span<const std::uint8_t> quotients(std::size_t i) const {
        return std::span<const std::uint8_t>(flat_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
    }
    ContinuedFraction element(std::size_t i) const {
        auto q = quotients(i);
        return ContinuedFraction(std::vector<Quotient>(q.begin(), q.end()));
    }

private:
    unsigned N_;
    std::vector<std::uint8_t> flat_;
    std::vector<std::uint32_t> offsets_;
};

inline constexpr unsigned kMaxRestrictedRow = 26;

namespace detail {

// Every element ends in a quotient >= 2, so the split child never produces a zero.
template <class Fn>
void walk_tree(std::vector<Quotient>& cur, unsigned row, unsigned N_max, Fn& fn) {
    fn(row, std::span<const Quotient>(cur));
    if (row == N_max) return;
    ++cur.back();
    walk_tree(cur, row + 1, N_max, fn);
    cur.back() -= 2;
    cur.push_back(2);
    walk_tree(cur, row + 1, N_max, fn);
    cur.pop_back();
    ++cur.back();
}

}  // namespace detail

/// Depth-first walk over rows 2..N_max of the restricted tree. Calls
/// fn(row, quotients) for every element; within a row, elements arrive in tree order.
template <class Fn>
void for_each_tree_element(unsigned N_max, Fn&& fn) {
    if (N_max < 2) return;
    std::vector<Quotient> cur{2};
    detail::walk_tree(cur, 2, N_max, fn);
}

/// Row N of the restricted tree (2 <= N <= 26), elements in tree order.
inline RestrictedRow restricted_row(unsigned N) {
    if (N < 2 || N > kMaxRestrictedRow)
        throw resource_error("restricted_row: N must lie in [2, " + std::to_string(kMaxRestrictedRow) + "]");
    std::vector<std::uint8_t> flat;
    std::vector<std::uint32_t> offsets{0};
    flat.reserve(static_cast<std::size_t>(N) << (N >= 3 ? N - 3 : 0));
    offsets.reserve((std::size_t{1} << (N - 2)) + 1);
    for_each_tree_element(N, [&](unsigned row, std::span<const Quotient> q) {
        if (row != N) return;
        for (Quotient a : q) flat.push_back(static_cast<std::uint8_t>(a));
        offsets.push_back(static_cast<std::uint32_t>(flat.size()));
    });
    return RestrictedRow(N, std::move(flat), std::move(offsets));
}

/// One closed form checked against enumeration.
struct FormulaCheck {
    std::string name;
    std::uint64_t k = 0;       // quotient value, 0 for non-census formulas
    double enumerated = 0;
    double closed_form = 0;
    bool agrees = false;
    double discrepancy() const { return enumerated - closed_form; }
};

/// Quotient census over rows 2..N with closed-form comparisons.
struct CoefficientCensus {
    unsigned N = 0;
    std::map<Quotient, std::uint64_t> count_by_value;  // cumulative over rows 2..N
    std::map<Quotient, std::uint64_t> row_count_by_value;  // row N only
    std::uint64_t row_elements = 0;
    std::uint64_t total_elements = 0;
    std::uint64_t length_sum = 0;             // sum of n over row N
    std::uint64_t cumulative_length_sum = 0;  // sum of n over rows 2..N
    std::vector<FormulaCheck> checks;
};

namespace detail {

inline double pow2(int e) { return std::ldexp(1.0, e); }

/// Closed form for the cumulative count of quotient k over rows 2..N.
inline double census_closed_form(unsigned N, Quotient k) {
    const int n = static_cast<int>(N);
    if (k == 1) return (n - 2) * pow2(n - 3);
    if (k == 2) return (n + 1) * pow2(n - 4);
    const int kk = static_cast<int>(k);
    return (n + 3 - kk) * pow2(n - kk - 2);
}

}  // namespace detail

/// Enumerates rows 2..N (2 <= N <= 22) and compares with:
/// row size 2^{N-2}; row length sum N 2^{N-3}; cumulative length sum 2^N (N-1)/4;
/// total elements 2^{N-1} - 1; a_N(=1) = (N-2) 2^{N-3}; a_N(=2) = (N+1) 2^{N-4};
/// a_N(=k) = (N+3-k) 2^{N-k-2} for 3 <= k <= N (k = N is reported, it is off by 1/4).
inline CoefficientCensus census(unsigned N) {
    if (N < 2 || N > 22) throw resource_error("census: N must lie in [2, 22]");
    CoefficientCensus c;
    c.N = N;
    for_each_tree_element(N, [&](unsigned row, std::span<const Quotient> q) {
        ++c.total_elements;
        c.cumulative_length_sum += q.size();
        for (Quotient a : q) ++c.count_by_value[a];
        if (row == N) {
            ++c.row_elements;
            c.length_sum += q.size();
            for (Quotient a : q) ++c.row_count_by_value[a];
        }
    });
    const int n = static_cast<int>(N);
    auto add = [&](std::string name, Quotient k, double got, double want) {
        c.checks.push_back({std::move(name), k, got, want, got == want});
    };
    add("row_size", 0, static_cast<double>(c.row_elements), detail::pow2(n - 2));
    add("row_length_sum", 0, static_cast<double>(c.length_sum), n * detail::pow2(n - 3));
    add("cumulative_length_sum", 0, static_cast<double>(c.cumulative_length_sum), detail::pow2(n) * (n - 1) / 4.0);
    add("total_elements", 0, static_cast<double>(c.total_elements), detail::pow2(n - 1) - 1.0);
    for (Quotient k = 1; k <= N; ++k) {
        const auto it = c.count_by_value.find(k);
        const double got = it == c.count_by_value.end() ? 0.0 : static_cast<double>(it->second);
        add("count_eq_" + std::to_string(k), k, got, detail::census_closed_form(N, k));
    }
    return c;
}

/// log A = log c + sum_{j <= jmax} log(j+1) / 2^j with the dropped tail bounded by
/// (log(jmax+2) + 2) / 2^jmax.
struct LogASeries {
    double log_A;
    double tail_bound;
};

inline LogASeries log_A_series(std::size_t jmax = 64) {
    if (jmax < 32) throw precision_error("log_A_series: jmax must be >= 32");
    double s = 0;
    // Smallest terms first.
    for (std::size_t j = jmax; j >= 1; --j)
        s += std::log(static_cast<double>(j + 1)) * std::ldexp(1.0, -static_cast<int>(j));
    const double J = static_cast<double>(jmax);
    return {kFB.log_c() + s, (std::log(J + 2.0) + 2.0) * std::ldexp(1.0, -static_cast<int>(jmax))};
}

enum class LogAMode { besicovitch, exact };

/// Per-N averages of 2 log(q_n) / N over all elements of rows 2..N.
struct EmpiricalLogA {
    unsigned N;
    double log_A;
};

/// Averages, for every N in [N_min, N_max], the reciprocal-length exponent 2 log q_n
/// (exact cumulants) or 2 (n log c + sum log(a_j + 1)) (Besicovitch) over all
/// elements of rows 2..N, divided by N (2^{N-1} - 1). One tree walk serves all N.
inline std::vector<EmpiricalLogA> empirical_log_A_sweep(unsigned N_min, unsigned N_max, LogAMode mode) {
    if (N_min < 4 || N_max > 22 || N_min > N_max)
        throw domain_error("empirical_log_A: N must lie in [4, 22]");
    const double logc = kFB.log_c();
    std::vector<double> row_sum(N_max + 1, 0.0);
    for_each_tree_element(N_max, [&](unsigned row, std::span<const Quotient> q) {
        double v = 0;
        if (mode == LogAMode::besicovitch) {
            v = static_cast<double>(q.size()) * logc;
            for (Quotient a : q) v += std::log(static_cast<double>(a) + 1.0);
        } else {
            std::uint64_t prev = 0, cur = 1;
            for (Quotient a : q) {
                const std::uint64_t next = a * cur + prev;
                prev = cur;
                cur = next;
            }
            v = std::log(static_cast<double>(cur));
        }
        row_sum[row] += 2.0 * v;
    });
    std::vector<EmpiricalLogA> out;
    double cum = 0;
    for (unsigned N = 2; N <= N_max; ++N) {
        cum += row_sum[N];
        if (N >= N_min) out.push_back({N, cum / (static_cast<double>(N) * (detail::pow2(static_cast<int>(N) - 1) - 1.0))});
    }
    return out;
}

inline double empirical_log_A(unsigned N, LogAMode mode) {
    return empirical_log_A_sweep(N, N, mode).front().log_A;
}

/// Exact average of n/N over all elements of rows 2..N.
inline Fraction average_length_ratio(unsigned N) {
    if (N < 2 || N > 22) throw domain_error("average_length_ratio: N must lie in [2, 22]");
    std::uint64_t sum_n = 0, count = 0;
    for_each_tree_element(N, [&](unsigned, std::span<const Quotient> q) {
        sum_n += q.size();
        ++count;
    });
    return {BigInt(sum_n), BigInt(count) * N};
}

/// 1/4 (1 - 1/N) 2^N / (2^{N-1} - 1) as an exact rational.
inline Fraction average_length_ratio_closed_form(unsigned N) {
    const BigInt two_n = BigInt(1) << N;
    // (1/4)((N-1)/N) 2^N / (2^{N-1} - 1)
    return Fraction(BigInt(N - 1) * two_n, BigInt(4) * N * ((two_n >> 1) - 1));
}

/// sum_{j <= 64} j / 2^j against its limit 2, and the information-point numerator against log 2.
struct NumeratorIdentity {
    double series_residual;     // |sum_{j<=64} j/2^j - 2|
    double numerator_residual;  // |-1/2 sum lambda log lambda - log 2| at lambda_j = 1/2^j, j <= 64
    double partial_sum_10;      // sum_{j<=10} j / 2^j
};

inline NumeratorIdentity numerator_identity_check() {
    auto partial = [](int upto) {
        double s = 0;
        for (int j = upto; j >= 1; --j) s += j * std::ldexp(1.0, -j);
        return s;
    };
    const double s64 = partial(64);
    const CertifiedPoint ip = information_point(64);
    return {std::abs(s64 - 2.0), std::abs(ip.numerator - std::numbers::ln2), partial(10)};
}

}  // namespace farey
