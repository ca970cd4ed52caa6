#pragma once

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "farey/error.hpp"
#include "farey/euclid_spectrum.hpp"
#include "farey/roots.hpp"

namespace farey {

/// c_pi = pi^2/6 - 1 and the Farey-Brocot contraction constant c = sqrt(c_pi).
struct FBConstants {
    double c_pi = std::numbers::pi * std::numbers::pi / 6.0 - 1.0;
    double c = std::sqrt(std::numbers::pi * std::numbers::pi / 6.0 - 1.0);
    double log_c() const { return std::log(c); }
};

inline constexpr FBConstants kFB{};

/// -zeta'(2) = sum_{n >= 2} log n / n^2.
inline constexpr double kMinusZetaPrime2 = 0.937548254315843753702574094568;

/// Quotient frequencies lambda_1..lambda_k with their mean m = sum j lambda_j.
struct FBWeights {
    FrequencyVector lambda;
    double m = 0;
    std::size_t k = 0;

    FBWeights() = default;
    explicit FBWeights(std::vector<double> l, double tol = 1e-12) : lambda(std::move(l), tol), k(lambda.size()) {
        if (k == 0) throw domain_error("FBWeights: empty frequency vector");
        for (std::size_t j = 0; j < k; ++j) m += static_cast<double>(j + 1) * lambda[j];
    }
};

namespace detail {

/// log c + sum_j lambda_j log(j+1): the log of the Besicovitch per-quotient factor.
inline double fb_denominator(const std::vector<double>& lambda) {
    double d = kFB.log_c();
    for (std::size_t j = 0; j < lambda.size(); ++j) d += lambda[j] * std::log(static_cast<double>(j + 2));
    return d;
}

inline std::vector<double> power_weights(std::size_t k, double exponent) {
    std::vector<double> l(k);
    double s = 0;
    for (std::size_t j = 0; j < k; ++j) s += (l[j] = std::pow(static_cast<double>(j + 2), exponent));
    for (double& v : l) v /= s;
    return l;
}

/// Dimension functional -1/2 (sum lambda log lambda) / (log c + sum lambda log(j+1)).
inline double fb_dimension_functional(const std::vector<double>& lambda) {
    return -0.5 * xlogx_sum(lambda) / fb_denominator(lambda);
}

}  // namespace detail

/// alpha = (log 2 / 2) m / den and f = -1/2 (sum lambda log lambda) / den,
/// den = log c + sum lambda_j log(j+1).
inline SpectrumPoint fb_point(const FBWeights& w) {
    const double den = detail::fb_denominator(w.lambda.lambda);
    if (!(std::abs(den) > 1e-300)) throw domain_error("fb_point: vanishing denominator");
    SpectrumPoint pt;
    pt.alpha = 0.5 * std::numbers::ln2 * w.m / den;
    pt.f = -0.5 * detail::xlogx_sum(w.lambda.lambda) / den;
    pt.freqs = w.lambda;
    return pt;
}

/// Fixed point of d = F(d) for the set E_k of quotients bounded by k, with
/// lambda_j = (j+1)^{-2d} / E. Damped iteration (0.5) from d0 = 0.8.
struct EkResult {
    double d;
    FBWeights weights;
    int iterations;
};

inline EkResult ek_dimension(std::size_t k, double tol = 1e-12, int max_iter = 500) {
    if (k < 1 || k > 1'000'000) throw domain_error("ek_dimension: k must lie in [1, 1e6]");
    double d = 0.8;
    for (int it = 1; it <= max_iter; ++it) {
        const double fd = detail::fb_dimension_functional(detail::power_weights(k, -2.0 * d));
        if (!std::isfinite(fd)) break;
        if (std::abs(fd - d) <= tol) {
            // Report the weights of the converged point, certified |d - F(d)| <= tol.
            // + 0.0 turns the k = 1 result -0 into 0.
            return {fd + 0.0, FBWeights(detail::power_weights(k, -2.0 * fd)), it};
        }
        d = 0.5 * d + 0.5 * fd;
    }
    throw numeric_error("ek_dimension: fixed-point iteration diverged for k = " + std::to_string(k));
}

/// Same dimension from the pressure equation sum_{j<=k} (c (j+1))^{-2d} = 1, which
/// is where the maximum of the dimension functional sits.
inline double ek_dimension_pressure(std::size_t k) {
    if (k < 1) throw domain_error("ek_dimension_pressure: k must be >= 1");
    const double logc = kFB.log_c();
    auto fdf = [&](double d) {
        double s = 0, ds = 0;
        for (std::size_t j = 1; j <= k; ++j) {
            const double lg = logc + std::log(static_cast<double>(j + 1));
            const double t = std::exp(-2.0 * d * lg);
            s += t;
            ds += -2.0 * lg * t;
        }
        return std::pair{std::log(s), ds / s};
    };
    return bisect_newton(fdf, -0.5, 1.5, 1e-15, 300, 1e-3, "ek_dimension_pressure").root;
}

/// A spectrum point together with a bound on its truncation error.
struct CertifiedPoint {
    SpectrumPoint point;
    double error_bound;
    double numerator;    // -1/2 sum lambda log lambda, tends to log 2
    double denominator;  // log c + sum lambda log(j+1), tends to log A
};

/// Information point lambda_j = 1/2^j, j <= jmax. alpha equals f identically since
/// sum lambda_j log(lambda_j 2^j) = 0 term by term.
inline CertifiedPoint information_point(std::size_t jmax = 64) {
    if (jmax < 32) throw precision_error("information_point: jmax must be >= 32");
    std::vector<double> l(jmax);
    for (std::size_t j = 0; j < jmax; ++j) l[j] = std::ldexp(1.0, -static_cast<int>(j + 1));
    const double dropped = std::ldexp(1.0, -static_cast<int>(jmax));
    FBWeights w(std::move(l), dropped + 1e-15);
    SpectrumPoint pt = fb_point(w);
    if (std::abs(pt.alpha - pt.f) > 1e-10) throw numeric_error("information_point: alpha != f");
    pt.param = 1.0;
    pt.slope = 1.0;
    pt.tau = pt.param * pt.alpha - pt.f;

    // Dropped tails beyond jmax: sum j/2^j = (J+2)/2^J, sum log(j+1)/2^j <= (log(J+2)+2)/2^J.
    const double J = static_cast<double>(jmax);
    const double dm = (J + 2.0) * dropped;
    const double dden = (std::log(J + 2.0) + 2.0) * dropped;
    const double den = detail::fb_denominator(w.lambda.lambda);
    const double num = 0.5 * std::numbers::ln2 * w.m;
    const double bound = 0.5 * std::numbers::ln2 * dm / den + (num + 0.5 * std::numbers::ln2 * dm) * dden / (den * den);
    return {std::move(pt), bound, num, den};
}

/// Key frequencies lambda_j proportional to (j+1)^{2 tau} / 2^{Lambda (j-1)}, j <= jmax.
inline FrequencyVector key_freqs_fb(double Lambda, double tau, std::size_t jmax) {
    if (jmax < 1) throw domain_error("key_freqs_fb: jmax must be >= 1");
    const bool converges = Lambda > 0 || (Lambda == 0 && 2.0 * tau < -1.0);
    if (!converges) throw domain_error("key_freqs_fb: normalizing series diverges");
    std::vector<double> logw(jmax);
    double mx = -INFINITY;
    for (std::size_t j = 1; j <= jmax; ++j) {
        logw[j - 1] = 2.0 * tau * std::log(static_cast<double>(j + 1)) -
                      Lambda * static_cast<double>(j - 1) * std::numbers::ln2;
        mx = std::max(mx, logw[j - 1]);
    }
    double s = 0;
    for (double& v : logw) s += (v = std::exp(v - mx));
    for (double& v : logw) v /= s;
    return FrequencyVector(std::move(logw), 1e-12);
}

/// Deviation of the information-point frequencies 1/2^j from the key-frequency
/// law at Lagrange value Lambda: ratios R_j = 2^{(Lambda-1) j} / (j+1)^{2 f (Lambda-1)}
/// for j = 1..jmax, with f the information dimension.
inline std::vector<double> information_ratio_profile(double Lambda, std::size_t jmax, double f) {
    std::vector<double> r(jmax);
    for (std::size_t j = 1; j <= jmax; ++j)
        r[j - 1] = std::exp((Lambda - 1.0) * (static_cast<double>(j) * std::numbers::ln2 -
                                              2.0 * f * std::log(static_cast<double>(j + 1))));
    return r;
}

/// Residual of the key-frequency law with lambda_j = 1/2^j substituted:
/// max_j |lambda_j * E / ((j+1)^{2 tau} / 2^{Lambda j}) - 1| with tau = Lambda alpha - f
/// at the information point and E fitted on j = 1.
inline double information_law_residual(double Lambda, std::size_t jmax, double dimension) {
    const double tau = (Lambda - 1.0) * dimension;
    double first = 0, worst = 0;
    for (std::size_t j = 1; j <= jmax; ++j) {
        const double jj = static_cast<double>(j);
        const double log_rhs = 2.0 * tau * std::log(jj + 1.0) - Lambda * jj * std::numbers::ln2;
        const double log_lhs = -jj * std::numbers::ln2;
        const double log_ratio = log_lhs - log_rhs;
        if (j == 1) first = log_ratio;
        worst = std::max(worst, std::abs(std::expm1(log_ratio - first)));
    }
    return worst;
}

/// max_{j <= jmax} |(j+1)^{2 Lambda alpha} - 1|: how far the key-frequency law
/// with 2^{Lambda j} dropped is from the (j+1)^{-2f} law.
inline double harmonization_gap(double Lambda, double alpha, std::size_t jmax) {
    if (!(Lambda >= 0) || !(alpha >= 0)) throw domain_error("harmonization_gap: Lambda, alpha must be >= 0");
    double gap = 0;
    for (std::size_t j = 1; j <= jmax; ++j)
        gap = std::max(gap, std::abs(std::expm1(2.0 * Lambda * alpha * std::log(static_cast<double>(j + 1)))));
    return gap;
}

/// Tail model f(alpha) = 1 - A e^{-B alpha} fitted to (k, d_k) pairs.
struct TailFit {
    double A;
    double B;
    double rms_residual;               // in log(1 - d)
    std::vector<double> alphas;        // alpha(k) used for each pair
};

/// K: the Besicovitch denominator at lambda_j = (j+1)^{-2} / c_pi.
inline double tail_denominator() { return kFB.log_c() + kMinusZetaPrime2 / kFB.c_pi; }

/// alpha(k) = (log k / c_pi) (log 2 / 2) / K, from mean quotient m ~ log k / c_pi.
inline double tail_alpha(double k) {
    return std::log(k) / kFB.c_pi * 0.5 * std::numbers::ln2 / tail_denominator();
}

/// Least squares of log(1 - d_k) = log A - B alpha(k).
inline TailFit tail_spectrum_fit(const std::vector<std::pair<double, double>>& dims) {
    if (dims.size() < 3) throw domain_error("tail_spectrum_fit: need at least three (k, d_k) pairs");
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (!(dims[i].first >= 1) || !(dims[i].second < 1))
            throw domain_error("tail_spectrum_fit: need k >= 1 and d_k < 1");
        if (i > 0 && !(dims[i].first > dims[i - 1].first && dims[i].second > dims[i - 1].second))
            throw domain_error("tail_spectrum_fit: (k, d_k) must be strictly increasing");
    }
    const double n = static_cast<double>(dims.size());
    std::vector<double> xs, ys;
    double sx = 0, sy = 0;
    for (const auto& [k, d] : dims) {
        xs.push_back(tail_alpha(k));
        ys.push_back(std::log1p(-d));
        sx += xs.back();
        sy += ys.back();
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    const double slope = sxy / sxx;
    const double icept = my - slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (icept + slope * xs[i]);
        ss += r * r;
    }
    return {std::exp(icept), -slope, std::sqrt(ss / n), std::move(xs)};
}

}  // namespace farey
