#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "farey/error.hpp"
#include "farey/fraction.hpp"

namespace farey {

/// Default cap on partition level: 2^24 intervals.
inline constexpr unsigned kDefaultLevelCap = 24;

/// Farey-Brocot interpolation (a + a')/(b + b') between a/b < a'/b'.
inline Fraction mediant(const Fraction& left, const Fraction& right) {
    if (!(left < right))
        throw ordering_error("mediant: requires left < right, got " + left.to_string() + " and " +
                             right.to_string());
    return {left.num() + right.num(), left.den() + right.den()};
}

/// One interval [left, right] of a Farey-Brocot partition.
struct FareyInterval {
    Fraction left;
    Fraction right;

    /// Exact length; equals 1/(b b') for adjacent fractions.
    Fraction length() const { return right - left; }
    /// a'b - ab'; equals 1 for every interval of every partition.
    BigInt determinant() const { return right.num() * left.den() - left.num() * right.den(); }
};

/// Level-N partition of [0, 1]: 2^N + 1 ordered breakpoints, 2^N intervals of
/// Farey-Brocot measure 1/2^N each.
class FareyPartition {
public:
    FareyPartition(unsigned level, std::vector<Fraction> breakpoints)
        : level_(level), breakpoints_(std::move(breakpoints)) {}

    unsigned level() const noexcept { return level_; }
    const std::vector<Fraction>& breakpoints() const noexcept { return breakpoints_; }
    std::size_t interval_count() const noexcept { return breakpoints_.size() - 1; }

    FareyInterval interval(std::size_t i) const {
        return {breakpoints_.at(i), breakpoints_.at(i + 1)};
    }
    Fraction length(std::size_t i) const { return interval(i).length(); }
    /// Every interval carries the same measure.
    Fraction measure() const { return {BigInt(1), BigInt(1) << level_}; }

private:
    unsigned level_;
    std::vector<Fraction> breakpoints_;
};

namespace detail {

inline void check_level(unsigned level, unsigned cap) {
    if (level < 1) throw domain_error("partition level must be >= 1");
    if (level > cap)
        throw resource_error("partition level " + std::to_string(level) + " exceeds cap " +
                             std::to_string(cap));
}

}  // namespace detail

/// Streams the intervals of the level-`depth` refinement of [left, right] in
/// increasing order. `left`/`right` must be Farey neighbours.
///
/// Subtrees are independent: splitting [0,1] at level d into its 2^d intervals and
/// streaming each with depth N - d enumerates the level-N partition in pieces.
template <class Fn>
void for_each_interval(const Fraction& left, const Fraction& right, unsigned depth, Fn&& fn) {
    struct Frame {
        Fraction l, r;
        unsigned depth;
    };
    std::vector<Frame> stack;
    stack.push_back({left, right, depth});
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        if (f.depth == 0) {
            fn(FareyInterval{std::move(f.l), std::move(f.r)});
            continue;
        }
        Fraction m{f.l.num() + f.r.num(), f.l.den() + f.r.den()};
        // Right half first so the left half pops first.
        stack.push_back({m, f.r, f.depth - 1});
        stack.push_back({std::move(f.l), std::move(m), f.depth - 1});
    }
}

/// Streams the 2^level intervals of the level-N partition of [0, 1] in order.
template <class Fn>
void for_each_interval(unsigned level, Fn&& fn, unsigned cap = kDefaultLevelCap) {
    detail::check_level(level, cap);
    for_each_interval(Fraction(0, 1), Fraction(1, 1), level, std::forward<Fn>(fn));
}

/// The 2^depth subtree roots covering [0, 1], for splitting a stream into
/// independently consumable ranges.
inline std::vector<FareyInterval> subtree_roots(unsigned depth) {
    std::vector<FareyInterval> roots;
    for_each_interval(Fraction(0, 1), Fraction(1, 1), depth,
                      [&](FareyInterval iv) { roots.push_back(std::move(iv)); });
    return roots;
}

/// Materializes the level-N partition.
inline FareyPartition build_partition(unsigned level, unsigned cap = kDefaultLevelCap) {
    detail::check_level(level, cap);
    std::vector<Fraction> bp;
    bp.reserve((std::size_t{1} << level) + 1);
    bp.emplace_back(0, 1);
    for_each_interval(level, [&](FareyInterval iv) { bp.push_back(std::move(iv.right)); }, cap);
    return {level, std::move(bp)};
}

/// Fractions that become breakpoints for the first time at `level`.
inline std::vector<Fraction> new_breakpoints(unsigned level, unsigned cap = kDefaultLevelCap) {
    detail::check_level(level, cap);
    std::vector<Fraction> out;
    out.reserve(std::size_t{1} << (level - 1));
    for_each_interval(Fraction(0, 1), Fraction(1, 1), level - 1, [&](const FareyInterval& iv) {
        out.push_back(mediant(iv.left, iv.right));
    });
    return out;
}

}  // namespace farey
