#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "farey/error.hpp"
#include "farey/roots.hpp"

namespace farey {

namespace detail {

inline void check_contractors(const std::vector<double>& v, const char* what) {
    if (v.size() < 2) throw domain_error(std::string(what) + ": need at least two contractors");
    double s = 0;
    for (double x : v) {
        if (!(x > 0.0 && x < 1.0))
            throw domain_error(std::string(what) + ": every contractor must lie in (0, 1)");
        s += x;
    }
    if (std::abs(s - 1.0) > 1e-12) throw domain_error(std::string(what) + ": contractors must sum to 1");
}

}  // namespace detail

/// Probability contractors p_1..p_{n0} of an equal-length cascade.
struct ProbabilityContractors {
    std::vector<double> p;
    explicit ProbabilityContractors(std::vector<double> v) : p(std::move(v)) {
        detail::check_contractors(p, "ProbabilityContractors");
    }
    std::size_t n0() const noexcept { return p.size(); }
};

/// Length contractors c_1..c_{n0} of an equal-probability cascade.
struct LengthContractors {
    std::vector<double> c;
    explicit LengthContractors(std::vector<double> v) : c(std::move(v)) {
        detail::check_contractors(c, "LengthContractors");
    }
    std::size_t n0() const noexcept { return c.size(); }
};

/// Frequencies lambda_j = r_j / N with sum 1.
struct FrequencyVector {
    std::vector<double> lambda;

    FrequencyVector() = default;
    explicit FrequencyVector(std::vector<double> v, double tol = 1e-12) : lambda(std::move(v)) {
        double s = 0;
        for (double x : lambda) {
            if (!(x >= 0.0 && x <= 1.0)) throw domain_error("FrequencyVector: entry outside [0, 1]");
            s += x;
        }
        if (std::abs(s - 1.0) > tol) throw domain_error("FrequencyVector: entries must sum to 1");
    }
    std::size_t size() const noexcept { return lambda.size(); }
    double operator[](std::size_t i) const { return lambda[i]; }
};

/// One (alpha, f(alpha)) sample with its Lagrange coordinate and tau.
///
/// `slope` is the analytic f'(alpha) at the sample; for equal lengths it equals
/// `param`, for equal probabilities it is log E / log n0.
struct SpectrumPoint {
    double alpha = 0;
    double f = 0;
    double param = 0;
    double tau = 0;
    double slope = 0;
    FrequencyVector freqs;
};

struct SpectrumCurve {
    std::string parameter;  // "Lambda", "Xi", "q"
    std::vector<SpectrumPoint> points;
};

/// Finite partition with a length and a probability per cell.
class WeightedPartition {
public:
    struct Cell {
        double length;
        double prob;
    };

    explicit WeightedPartition(std::vector<Cell> cells) : cells_(std::move(cells)) {
        if (cells_.empty()) throw domain_error("WeightedPartition: empty");
        double s = 0;
        for (const Cell& c : cells_) {
            if (!(c.length > 0.0 && c.length < 1.0))
                throw domain_error("WeightedPartition: lengths must lie in (0, 1)");
            if (!(c.prob > 0.0 && c.prob <= 1.0))
                throw domain_error("WeightedPartition: probabilities must lie in (0, 1]");
            s += c.prob;
        }
        if (std::abs(s - 1.0) > 1e-10) throw domain_error("WeightedPartition: probabilities must sum to 1");
    }

    const std::vector<Cell>& cells() const noexcept { return cells_; }

    /// n0^N equal cells carrying the product measure of `pc` at depth `depth`.
    static WeightedPartition cascade(const ProbabilityContractors& pc, unsigned depth) {
        std::vector<Cell> cells{{1.0, 1.0}};
        const double n0 = static_cast<double>(pc.n0());
        for (unsigned d = 0; d < depth; ++d) {
            std::vector<Cell> next;
            next.reserve(cells.size() * pc.n0());
            for (const Cell& c : cells)
                for (double p : pc.p) next.push_back({c.length / n0, c.prob * p});
            cells = std::move(next);
        }
        return WeightedPartition(std::move(cells));
    }

private:
    std::vector<Cell> cells_;
};

/// tau(q) solving sum_j p_j^q / l_j^tau = 1.
///
/// Works with log of the partition sum, which is increasing in tau because every
/// l_j < 1. Bisection on [-64, 64], Newton polish, |sum - 1| <= 1e-12.
inline double partition_tau(const WeightedPartition& part, double q) {
    const auto& cells = part.cells();
    std::vector<double> logp(cells.size()), neglogl(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        logp[i] = q * std::log(cells[i].prob);
        neglogl[i] = -std::log(cells[i].length);
    }
    // log sum exp(q log p_j + tau (-log l_j)) and its tau-derivative.
    auto fdf = [&](double tau) {
        double mx = -INFINITY;
        for (std::size_t i = 0; i < cells.size(); ++i) mx = std::max(mx, logp[i] + tau * neglogl[i]);
        double s = 0, ds = 0;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const double w = std::exp(logp[i] + tau * neglogl[i] - mx);
            s += w;
            ds += w * neglogl[i];
        }
        return std::pair{mx + std::log(s), ds / s};
    };
    // |log S| <= 1e-12 implies |S - 1| <= ~1e-12.
    return bisect_newton(fdf, -64.0, 64.0, 1e-12 * 0.999, 200, 1e-3, "partition_tau").root;
}

/// Closed form for the equal-length cascade: tau(q) = -log(sum p_j^q) / log n0.
inline double cascade_tau(const ProbabilityContractors& pc, double q) {
    double s = 0;
    for (double p : pc.p) s += std::pow(p, q);
    return -std::log(s) / std::log(static_cast<double>(pc.n0()));
}

namespace detail {

/// lambda_j = x_j^e / sum_k x_k^e, computed in log space.
inline std::vector<double> tilted(const std::vector<double>& x, double e, double* log_norm = nullptr) {
    std::vector<double> l(x.size());
    double mx = -INFINITY;
    for (std::size_t j = 0; j < x.size(); ++j) mx = std::max(mx, e * std::log(x[j]));
    double s = 0;
    for (std::size_t j = 0; j < x.size(); ++j) s += (l[j] = std::exp(e * std::log(x[j]) - mx));
    for (double& v : l) v /= s;
    if (log_norm) *log_norm = mx + std::log(s);
    return l;
}

inline double xlogx_sum(const std::vector<double>& l) {
    double s = 0;
    for (double v : l)
        if (v > 0) s += v * std::log(v);
    return s;
}

}  // namespace detail

/// Equal-length spectrum point at Lagrange coordinate Lambda:
/// lambda_j = p_j^Lambda / E, alpha = -sum lambda log p / log n0, f = -sum lambda log lambda / log n0.
inline SpectrumPoint equal_lengths_point(const ProbabilityContractors& pc, double Lambda) {
    const double logn0 = std::log(static_cast<double>(pc.n0()));
    auto lam = detail::tilted(pc.p, Lambda);
    double a = 0;
    for (std::size_t j = 0; j < lam.size(); ++j) a -= lam[j] * std::log(pc.p[j]);
    SpectrumPoint pt;
    pt.alpha = a / logn0;
    pt.f = -detail::xlogx_sum(lam) / logn0;
    pt.param = Lambda;
    pt.slope = Lambda;
    pt.tau = Lambda * pt.alpha - pt.f;
    pt.freqs = FrequencyVector(std::move(lam), 1e-12);
    return pt;
}

inline SpectrumCurve spectrum_equal_lengths(const ProbabilityContractors& pc,
                                            const std::vector<double>& params) {
    SpectrumCurve curve{"Lambda", {}};
    curve.points.reserve(params.size());
    for (double v : params) {
        if (!std::isfinite(v)) throw domain_error("spectrum_equal_lengths: non-finite parameter");
        curve.points.push_back(equal_lengths_point(pc, v));
    }
    return curve;
}

/// Equal-probability spectrum point at exponent Xi:
/// lambda_j = c_j^Xi / E, alpha = -log n0 / sum lambda log c, f = sum lambda log lambda / sum lambda log c,
/// with slope certificate f' = log E / log n0.
inline SpectrumPoint equal_probs_point(const LengthContractors& lc, double Xi) {
    const double logn0 = std::log(static_cast<double>(lc.n0()));
    double logE = 0;
    auto lam = detail::tilted(lc.c, Xi, &logE);
    double den = 0;
    for (std::size_t j = 0; j < lam.size(); ++j) den += lam[j] * std::log(lc.c[j]);
    SpectrumPoint pt;
    pt.alpha = -logn0 / den;
    pt.f = detail::xlogx_sum(lam) / den;
    pt.param = Xi;
    pt.slope = logE / logn0;
    pt.tau = pt.slope * pt.alpha - pt.f;
    pt.freqs = FrequencyVector(std::move(lam), 1e-12);
    return pt;
}

inline SpectrumCurve spectrum_equal_probs(const LengthContractors& lc, const std::vector<double>& params) {
    SpectrumCurve curve{"Xi", {}};
    curve.points.reserve(params.size());
    for (double v : params) {
        if (!std::isfinite(v)) throw domain_error("spectrum_equal_probs: non-finite parameter");
        curve.points.push_back(equal_probs_point(lc, v));
    }
    return curve;
}

/// Inversion f_bar(alpha_bar) = alpha_bar f(1/alpha_bar): (alpha, f) -> (1/alpha, f/alpha).
///
/// Legendre coordinates follow the duality q_bar = -tau(q), tau_bar(q_bar) = -q.
/// Point i of the result is the image of point i of the input.
inline SpectrumCurve invert_spectrum(const SpectrumCurve& curve) {
    SpectrumCurve out{curve.parameter, {}};
    out.points.reserve(curve.points.size());
    for (const SpectrumPoint& p : curve.points) {
        if (!(p.alpha > 0)) throw domain_error("invert_spectrum: alpha must be positive");
        SpectrumPoint q = p;
        q.alpha = 1.0 / p.alpha;
        q.f = p.f / p.alpha;
        q.slope = -p.tau;
        q.tau = -p.slope;
        out.points.push_back(std::move(q));
    }
    return out;
}

/// Residuals of the inversion duality at one q.
struct DualityResidual {
    double q;
    double tau;           // tau(q) from the closed form
    double qbar;          // slope of the inverted spectrum at 1/alpha(q), by central differences
    double residual;      // |qbar + tau(q)|
    double involution;    // |-tau_bar(-tau(q)) - q|
};

/// For each q: tau(q) from the cascade closed form, q_bar read off the inverted
/// spectrum as a numeric slope, and both duality residuals.
inline std::vector<DualityResidual> duality_residuals(const ProbabilityContractors& pc,
                                                      const std::vector<double>& q_grid,
                                                      double h = 1e-4) {
    std::vector<DualityResidual> out;
    out.reserve(q_grid.size());
    for (double q : q_grid) {
        if (!std::isfinite(q)) throw domain_error("duality_residuals: non-finite q");
        const double tau = cascade_tau(pc, q);
        const auto inv = invert_spectrum(spectrum_equal_lengths(pc, {q - h, q, q + h}));
        const auto& lo = inv.points[0];
        const auto& mid = inv.points[1];
        const auto& hi = inv.points[2];
        const double qbar = (hi.f - lo.f) / (hi.alpha - lo.alpha);
        // tau_bar at q_bar is the Legendre value q_bar alpha_bar - f_bar on the inverted curve.
        const double tau_bar = qbar * mid.alpha - mid.f;
        out.push_back({q, tau, qbar, std::abs(qbar + tau), std::abs(-tau_bar - q)});
    }
    return out;
}

/// Default parameter grid: 201 points on [-5, 5].
inline std::vector<double> default_param_grid(double lo = -5.0, double hi = 5.0, std::size_t n = 201) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return g;
}

}  // namespace farey
