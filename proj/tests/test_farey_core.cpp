#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

#include "farey/continued_fraction.hpp"
#include "farey/partition.hpp"
#include "farey/word.hpp"

using namespace farey;

namespace {

Fraction F(std::int64_t p, std::int64_t q) { return {p, q}; }

std::vector<std::string> strings(const std::vector<Fraction>& v) {
    std::vector<std::string> s;
    for (const auto& f : v) s.push_back(f.to_string());
    return s;
}

// Brute-force level of p/q: number of mediant rounds from {0/1, 1/1} until it appears.
unsigned brute_level(const Fraction& x) {
    Fraction l(0, 1), r(1, 1);
    for (unsigned level = 1;; ++level) {
        const Fraction m{l.num() + r.num(), l.den() + r.den()};
        if (m == x) return level;
        if (x < m)
            r = m;
        else
            l = m;
    }
}

}  // namespace

TEST(Fraction, NormalizesAndCompares) {
    EXPECT_EQ(F(2, 4), F(1, 2));
    EXPECT_EQ(F(3, -6).to_string(), "-1/2");
    EXPECT_LT(F(1, 3), F(2, 5));
    EXPECT_EQ(F(1, 3) + F(1, 6), F(1, 2));
    EXPECT_EQ(F(2, 3) - F(1, 3), F(1, 3));
    EXPECT_THROW(F(1, 0), domain_error);
    EXPECT_EQ(parse_fraction("6/10"), F(3, 5));
    EXPECT_THROW(parse_fraction("x/2"), domain_error);
    EXPECT_DOUBLE_EQ(F(1, 3).to_double(), 1.0 / 3.0);
}

TEST(Mediant, Examples) {
    EXPECT_EQ(mediant(F(0, 1), F(1, 1)), F(1, 2));
    EXPECT_EQ(mediant(F(1, 3), F(1, 2)), F(2, 5));
    EXPECT_THROW(mediant(F(1, 2), F(1, 3)), ordering_error);
    EXPECT_THROW(mediant(F(1, 2), F(1, 2)), ordering_error);
}

TEST(Mediant, MidpointOnlyForEqualDenominators) {
    const Fraction m = mediant(F(0, 1), F(1, 1));
    EXPECT_EQ(m, F(1, 2));
    // Unequal denominators: the mediant is off the midpoint.
    const Fraction m2 = mediant(F(1, 3), F(1, 2));
    EXPECT_NE(m2 + m2, F(1, 3) + F(1, 2));
}

TEST(Partition, SmallLevels) {
    EXPECT_EQ(strings(build_partition(1).breakpoints()), (std::vector<std::string>{"0/1", "1/2", "1/1"}));
    const auto p2 = build_partition(2);
    EXPECT_EQ(strings(p2.breakpoints()), (std::vector<std::string>{"0/1", "1/3", "1/2", "2/3", "1/1"}));
    std::vector<std::string> lengths;
    for (std::size_t i = 0; i < p2.interval_count(); ++i) lengths.push_back(p2.length(i).to_string());
    EXPECT_EQ(lengths, (std::vector<std::string>{"1/3", "1/6", "1/6", "1/3"}));
    const auto p3 = build_partition(3);
    EXPECT_EQ(p3.interval_count(), 8u);
    Fraction total(0, 1);
    for (std::size_t i = 0; i < p3.interval_count(); ++i) total += p3.length(i);
    EXPECT_EQ(total, F(1, 1));
    EXPECT_EQ(p3.measure(), F(1, 8));
}

TEST(Partition, Errors) {
    EXPECT_THROW(build_partition(0), domain_error);
    EXPECT_THROW(build_partition(25), resource_error);
    EXPECT_THROW(build_partition(10, 8), resource_error);
}

TEST(Partition, AdjacencyAndUnityUpToLevel14) {
    for (unsigned N = 1; N <= 14; ++N) {
        Fraction total(0, 1);
        std::size_t count = 0;
        bool ok = true;
        for_each_interval(N, [&](const FareyInterval& iv) {
            ok = ok && iv.determinant() == 1 && iv.length() == Fraction(BigInt(1), iv.left.den() * iv.right.den());
            total += iv.length();
            ++count;
        });
        EXPECT_TRUE(ok) << N;
        EXPECT_EQ(count, std::size_t{1} << N);
        EXPECT_EQ(total, F(1, 1)) << N;
    }
}

TEST(Partition, StreamMatchesSubtreeSplit) {
    std::vector<Fraction> whole, pieces;
    for_each_interval(9, [&](const FareyInterval& iv) { whole.push_back(iv.left); });
    for (const auto& root : subtree_roots(3))
        for_each_interval(root.left, root.right, 6, [&](const FareyInterval& iv) { pieces.push_back(iv.left); });
    EXPECT_EQ(whole, pieces);
}

TEST(Partition, NewBreakpointsHaveQuotientSumLevelPlusOne) {
    for (unsigned N = 1; N <= 14; ++N) {
        const auto fresh = new_breakpoints(N);
        EXPECT_EQ(fresh.size(), std::size_t{1} << (N - 1));
        for (const Fraction& f : fresh) ASSERT_EQ(cf_from_fraction(f).quotient_sum(), N + 1) << f;
    }
}

TEST(ContinuedFraction, Validation) {
    EXPECT_THROW(ContinuedFraction(std::vector<Quotient>{}), domain_error);
    EXPECT_THROW((ContinuedFraction{1, 0, 2}), domain_error);
    EXPECT_THROW((ContinuedFraction{2, 1}), domain_error);
    EXPECT_NO_THROW((ContinuedFraction{1}));
}

TEST(ContinuedFraction, Examples) {
    EXPECT_EQ(cf_from_fraction(F(3, 5)), (ContinuedFraction{1, 1, 2}));
    EXPECT_EQ(cf_from_fraction(F(1, 2)), (ContinuedFraction{2}));
    for (std::int64_t q = 1; q <= 30; ++q) EXPECT_EQ(cf_from_fraction(F(1, q)), (ContinuedFraction{Quotient(q)}));
    EXPECT_EQ(cf_from_fraction(F(1, 1)), (ContinuedFraction{1}));
    EXPECT_THROW(cf_from_fraction(F(0, 1)), domain_error);
    EXPECT_THROW(cf_from_fraction(F(-1, 3)), domain_error);
    EXPECT_THROW(cf_from_fraction(F(4, 3)), domain_error);
    EXPECT_EQ((ContinuedFraction{1, 1, 2}).to_string(), "[1,1,2]");
    EXPECT_EQ((ContinuedFraction{1, 1, 2}).census().at(1), 2u);
}

TEST(ContinuedFraction, RoundTripAndCumulantsUpTo1000) {
    for (std::int64_t q = 1; q <= 1000; ++q)
        for (std::int64_t p = 1; p <= q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            const auto cf = cf_from_fraction(F(p, q));
            ASSERT_EQ(fraction_from_cf(cf), F(p, q));
            ASSERT_EQ(cumulants(cf).back(), BigInt(q));
        }
}

TEST(ContinuedFraction, Cumulants) {
    auto as_int = [](const std::vector<BigInt>& v) {
        std::vector<int> o;
        for (const auto& x : v) o.push_back(x.convert_to<int>());
        return o;
    };
    EXPECT_EQ(as_int(cumulants({1, 1, 2})), (std::vector<int>{1, 2, 5}));
    EXPECT_EQ(as_int(cumulants({7})), (std::vector<int>{7}));
    EXPECT_EQ(as_int(cumulants({2, 2, 2, 2})), (std::vector<int>{2, 5, 12, 29}));
}

TEST(ContinuedFraction, Indexings) {
    const ContinuedFraction half{2};
    EXPECT_EQ(half.quotient_sum(), 2u);   // restricted-tree row
    EXPECT_EQ(half.creation_level(), 1u); // partition level
    for (std::int64_t q = 2; q <= 40; ++q)
        for (std::int64_t p = 1; p < q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            ASSERT_EQ(cf_from_fraction(F(p, q)).creation_level(), brute_level(F(p, q)));
        }
}

TEST(Besicovitch, Examples) {
    const double c = std::sqrt(std::numbers::pi * std::numbers::pi / 6 - 1);
    EXPECT_NEAR(besicovitch_q({1, 1, 2}, c), 12 * c * c * c, 1e-12);
    EXPECT_NEAR(besicovitch_q({1, 1, 2}, c), 6.215, 1e-3);
    EXPECT_DOUBLE_EQ(besicovitch_q({3, 1, 4}, 1.0), 4.0 * 2.0 * 5.0);
    EXPECT_THROW(besicovitch_q({2}, 0.0), domain_error);
    // Order-insensitive by construction.
    EXPECT_DOUBLE_EQ(besicovitch_q({1, 3, 2}, c), besicovitch_q({3, 1, 2}, c));
}

TEST(Besicovitch, MonteCarloDeviationIsReported) {
    const double c = std::sqrt(std::numbers::pi * std::numbers::pi / 6 - 1);
    std::mt19937_64 rng(12345);
    std::geometric_distribution<int> geo(0.5);
    double mean = 0;
    for (int i = 0; i < 1000; ++i) {
        std::vector<Quotient> a;
        for (int j = 0; j < 20; ++j) a.push_back(1 + geo(rng));
        if (a.back() == 1) a.back() = 2;
        const ContinuedFraction cf(a);
        const double exact = std::log(cumulants(cf).back().convert_to<double>());
        mean += std::abs(log_besicovitch_q(cf, c) - exact) / exact;
    }
    mean /= 1000;
    std::cout << "mean relative log error of the Besicovitch estimate: " << mean << '\n';
    EXPECT_TRUE(std::isfinite(mean));
}

TEST(Words, LrWord) {
    EXPECT_EQ(lr_word({1, 1, 2}).to_string(), "LRLL");
    EXPECT_EQ(lr_word({1}).to_string(), "L");
    EXPECT_EQ(lr_word({1, 1, 2}).blocks(), (std::vector<Quotient>{1, 1, 2}));
    EXPECT_EQ(descent_word({1, 1, 2}).to_string(), "LRL");
}

TEST(Words, DescentLandsOnCreatingInterval) {
    // Brute force over every fraction created at levels <= 8.
    for (unsigned N = 1; N <= 8; ++N)
        for (const Fraction& f : new_breakpoints(N)) {
            const auto cf = cf_from_fraction(f);
            const Word d = descent_word(cf);
            ASSERT_EQ(d.size(), cf.quotient_sum() - 1);
            const auto iv = descend(d);
            ASSERT_EQ(Fraction(iv.mediant_num(), iv.mediant_den()), f) << f;
            // The full word ends on an interval with p/q as an endpoint.
            const auto full = descend(lr_word(cf));
            ASSERT_TRUE(Fraction(full.a, full.b) == f || (full.d != 0 && Fraction(full.c, full.d) == f)) << f;
        }
}
