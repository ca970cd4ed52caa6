#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "farey/hyperbolic_words.hpp"
#include "farey/partition.hpp"

using namespace farey;

namespace {

// All canonical CFs with quotient sum <= S.
void all_cfs(Quotient left, std::vector<Quotient>& cur, std::vector<ContinuedFraction>& out) {
    if (!cur.empty() && (cur.size() == 1 || cur.back() >= 2)) out.emplace_back(cur);
    for (Quotient a = 1; a <= left; ++a) {
        cur.push_back(a);
        all_cfs(left - a, cur, out);
        cur.pop_back();
    }
}

}  // namespace

TEST(Unimodular, Validation) {
    EXPECT_THROW(UnimodularMatrix(1, 1, 1, 1), domain_error);
    EXPECT_NO_THROW(UnimodularMatrix(2, 1, 1, 1));
    EXPECT_EQ(UnimodularMatrix::left() * UnimodularMatrix::right(), UnimodularMatrix(1, 1, 1, 2));
}

TEST(MobiusShrink, Examples) {
    const auto r = mobius_shrink(UnimodularMatrix(1, 1, 2, 3));
    ASSERT_FALSE(r.infinite());
    EXPECT_EQ(r.interval->first, Fraction(1, 3));
    EXPECT_EQ(r.interval->second, Fraction(2, 5));
    EXPECT_EQ(*r.length, Fraction(1, 15));
    EXPECT_EQ(r.interval->second - r.interval->first, *r.length);

    const auto id = mobius_shrink(UnimodularMatrix::identity());
    EXPECT_EQ(id.interval->first, Fraction(0, 1));
    EXPECT_EQ(id.interval->second, Fraction(1, 1));
    EXPECT_EQ(*id.length, Fraction(1, 1));

    for (std::int64_t n = 0; n < 5; ++n) EXPECT_TRUE(mobius_shrink(UnimodularMatrix(n + 1, -1, 1, 0)).infinite());
    EXPECT_TRUE(mobius_shrink(UnimodularMatrix(1, 0, -1, 1)).infinite());
}

TEST(MobiusShrink, LengthTimesScaleIsOne) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> letter(0, 1);
    for (int t = 0; t < 300; ++t) {
        UnimodularMatrix m = UnimodularMatrix::identity();
        const int len = 1 + t % 25;
        for (int i = 0; i < len; ++i) m = m * (letter(rng) ? UnimodularMatrix::left() : UnimodularMatrix::right());
        const auto r = mobius_shrink(m);
        if (r.infinite()) continue;
        EXPECT_EQ(*r.length * Fraction(m.b() * (m.b_prime() + m.b()), BigInt(1)), Fraction(1, 1));
        EXPECT_LT(r.interval->first, r.interval->second);
    }
    // Mirror image: orientation canonicalized to smaller endpoint first.
    const auto mirror = mobius_shrink(UnimodularMatrix(-1, 1, -2, 1));
    ASSERT_FALSE(mirror.infinite());
    EXPECT_LT(mirror.interval->first, mirror.interval->second);
    EXPECT_GT(*mirror.length, Fraction(0, 1));
}

TEST(Adjacency, Examples) {
    EXPECT_TRUE(adjacency_check(Fraction(1, 3), Fraction(2, 5)));
    EXPECT_TRUE(adjacency_check(Fraction(1, 2), Fraction(2, 3)));
    EXPECT_FALSE(adjacency_check(Fraction(1, 4), Fraction(3, 4)));
    EXPECT_THROW(adjacency_check(Fraction(1, 2), Fraction(1, 3)), ordering_error);
    EXPECT_THROW(adjacency_check(Fraction(1, 2), Fraction(3, 2)), domain_error);
}

TEST(Adjacency, EveryPartitionPairUpToLevel12) {
    for (unsigned N = 1; N <= 12; ++N) {
        const auto part = build_partition(N);
        for (std::size_t i = 0; i < part.interval_count(); ++i) {
            const auto iv = part.interval(i);
            ASSERT_TRUE(adjacency_check(iv.left, iv.right));
            ASSERT_EQ(iv.length(), Fraction(BigInt(1), iv.left.den() * iv.right.den()));
        }
    }
}

TEST(WordMatrix, ColumnsAreLastTwoConvergents) {
    std::vector<ContinuedFraction> cfs;
    std::vector<Quotient> cur;
    all_cfs(14, cur, cfs);
    EXPECT_GT(cfs.size(), 4000u);
    for (const auto& cf : cfs) {
        const UnimodularMatrix m = word_matrix(lr_word(cf));
        const auto p = convergent_numerators(cf);
        const auto q = cumulants(cf);
        const std::size_t n = cf.size();
        const Fraction last(p[n - 1], q[n - 1]);
        const Fraction prev = n >= 2 ? Fraction(p[n - 2], q[n - 2]) : Fraction(0, 1);
        // The letter blocks alternate, so the column holding p_n/q_n flips with the parity of n.
        const Fraction first_col(m.a_prime(), m.b_prime()), second_col(m.a(), m.b());
        ASSERT_EQ(first_col, n % 2 ? last : prev) << cf.to_string();
        ASSERT_EQ(second_col, n % 2 ? prev : last) << cf.to_string();
    }
}

TEST(CuttingSequence, Examples) {
    EXPECT_EQ(cutting_sequence(PeriodicCF({}, {1}), 6).letters, "TFTFTF");
    EXPECT_EQ(cutting_sequence(PeriodicCF({}, {2}), 8).letters, "TTFFTTFF");
    const auto w = cutting_sequence(ContinuedFraction{1, 1, 2}, 30);
    EXPECT_EQ(w.letters, "TFTT");
    EXPECT_TRUE(w.terminated);
    EXPECT_EQ(w.to_string(), "TFTT|");
    EXPECT_EQ(cutting_sequence(Fraction(1, 1), 5).to_string(), "T|");
    EXPECT_EQ(cutting_sequence(Fraction(1, 2), 5).to_string(), "TT|");
    EXPECT_THROW(cutting_sequence(Fraction(0, 1), 5), domain_error);
    EXPECT_THROW(cutting_sequence(Fraction(3, 2), 5), domain_error);
    EXPECT_THROW(cutting_sequence(Fraction(1, 2), 0), domain_error);
    EXPECT_THROW(PeriodicCF({1}, {}), domain_error);
}

TEST(CuttingSequence, PeriodicCompareIsExact) {
    const PeriodicCF golden({}, {1});  // (sqrt 5 - 1)/2 = 0.618...
    EXPECT_EQ(golden.compare(Fraction(3, 5)), 1);
    EXPECT_EQ(golden.compare(Fraction(5, 8)), -1);
    EXPECT_EQ(golden.compare(Fraction(987, 1597)), 1);
    EXPECT_EQ(golden.compare(Fraction(1597, 2584)), -1);
    const PeriodicCF root2({}, {2});  // sqrt 2 - 1 = 0.41421356...
    EXPECT_EQ(root2.compare(Fraction(41421, 100000)), 1);
    EXPECT_EQ(root2.compare(Fraction(41422, 100000)), -1);
}

TEST(CuttingSequence, BlocksEqualQuotientsFuzzed) {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::int64_t> den(2, 10000);
    std::uniform_int_distribution<int> small(1, 4), plen(0, 3), per(1, 3);
    for (int t = 0; t < 100; ++t) {
        const std::int64_t q = den(rng);
        std::int64_t p = std::uniform_int_distribution<std::int64_t>(1, q - 1)(rng);
        const Fraction x(p, q);
        const auto w = cutting_sequence(x, 30);
        const auto cf = cf_from_fraction(x);
        auto blocks = w.blocks();
        if (!w.terminated) blocks.pop_back();
        ASSERT_LE(blocks.size(), cf.size());
        for (std::size_t i = 0; i < blocks.size(); ++i) ASSERT_EQ(blocks[i], cf[i]) << x;
        if (w.terminated) {
            ASSERT_EQ(blocks.size(), cf.size()) << x;
        }
    }
    for (int t = 0; t < 100; ++t) {
        std::vector<Quotient> pre(plen(rng)), period(per(rng));
        for (auto& a : pre) a = small(rng);
        for (auto& a : period) a = small(rng);
        const PeriodicCF x(pre, period);
        const auto w = cutting_sequence(x, 30);
        ASSERT_FALSE(w.terminated);
        ASSERT_EQ(w.letters.size(), 30u);
        auto blocks = w.blocks();
        blocks.pop_back();
        for (std::size_t i = 0; i < blocks.size(); ++i) ASSERT_EQ(blocks[i], x.term(i));
    }
}
