#pragma once

// Independent reference computations used by the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace oracle {

// Frozen from 30-digit evaluations.
inline constexpr double kLogA = 0.796364251060818069;        // log c + sum log(j+1)/2^j
inline constexpr double kInfoDim = 0.870389623387313368;     // log 2 / log A
inline constexpr double kMinusZetaPrime2 = 0.9375482543158437537;

inline double entropy(const std::vector<double>& l) {
    double s = 0;
    for (double v : l)
        if (v > 0) s -= v * std::log(v);
    return s;
}

/// max of -sum l log l / log 3 over the 3-simplex subject to sum l_j a_j = target,
/// a_j = -log p_j / log 3. Grid over l_1 with the given step; l_2 follows from the
/// constraint, l_3 from normalization.
inline double simplex3_max_entropy(const std::vector<double>& p, double target, double step = 1e-3) {
    const double L3 = std::log(3.0);
    const double a1 = -std::log(p[0]) / L3, a2 = -std::log(p[1]) / L3, a3 = -std::log(p[2]) / L3;
    double best = -1;
    const int n = static_cast<int>(std::lround(1.0 / step));
    for (int i = 0; i <= n; ++i) {
        const double l1 = i * step;
        const double l2 = (target - a3 - l1 * (a1 - a3)) / (a2 - a3);
        const double l3 = 1 - l1 - l2;
        if (l2 < 0 || l3 < 0) continue;
        best = std::max(best, entropy({l1, l2, l3}) / L3);
    }
    return best;
}

/// -1/2 (sum l log l) / (log c + sum l log(j+1)).
inline double fb_functional(const std::vector<double>& l) {
    const double c = std::sqrt(std::numbers::pi * std::numbers::pi / 6 - 1);
    double den = std::log(c);
    for (std::size_t j = 0; j < l.size(); ++j) den += l[j] * std::log(static_cast<double>(j + 2));
    return 0.5 * entropy(l) / den;
}

/// Exhaustive simplex grid maximum of fb_functional for k = 2 or 3.
inline double ek_grid_small(std::size_t k, double step) {
    const int n = static_cast<int>(std::lround(1.0 / step));
    double best = -1;
    if (k == 2) {
        for (int i = 0; i <= n; ++i) best = std::max(best, fb_functional({i * step, 1 - i * step}));
    } else {
        for (int i = 0; i <= n; ++i)
            for (int j = 0; i + j <= n; ++j)
                best = std::max(best, fb_functional({i * step, j * step, 1 - (i + j) * step}));
    }
    return best;
}

/// Coarse-to-fine compass search on the k-simplex: move mass delta from cell j to
/// cell i while that improves the functional, shrinking delta down to `finest`.
inline double ek_compass_search(std::size_t k, double finest = 1e-7) {
    std::vector<double> l(k, 1.0 / static_cast<double>(k));
    double best = fb_functional(l);
    for (double delta = 0.1; delta >= finest; delta /= 2) {
        bool improved = true;
        while (improved) {
            improved = false;
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) {
                    if (i == j || l[j] < delta) continue;
                    l[j] -= delta;
                    l[i] += delta;
                    const double v = fb_functional(l);
                    if (v > best + 1e-15) {
                        best = v;
                        improved = true;
                    } else {
                        l[j] += delta;
                        l[i] -= delta;
                    }
                }
        }
    }
    return best;
}

/// Inverts a decreasing map x -> alpha_of(x) on [-200, 200] by bisection.
template <class AlphaOf>
double invert_decreasing(AlphaOf alpha_of, double alpha) {
    double lo = -200, hi = 200;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (alpha_of(mid) > alpha ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace oracle
