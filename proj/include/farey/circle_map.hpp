#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "farey/error.hpp"
#include "farey/fraction.hpp"
#include "farey/partition.hpp"
#include "farey/roots.hpp"

namespace farey {

using Real = long double;

/// Periodic perturbation g of the lift F(theta) = theta + w + g(theta), with its
/// first two derivatives. Must be odd, 1-periodic and smooth.
struct Nonlinearity {
    std::string name;
    std::function<Real(Real)> g, dg, d2g;

    /// (1/2pi) sin(2 pi theta): (F)' = 1 + cos(2 pi theta) vanishes at theta = 1/2.
    static Nonlinearity critical_sine() { return sine(1.0L); }

    /// (K/2pi) sin(2 pi theta).
    static Nonlinearity sine(Real K) {
        constexpr Real two_pi = 2 * std::numbers::pi_v<Real>;
        return {K == 1 ? "critical_sine" : "sine",
                [K](Real x) { return K * std::sin(two_pi * x) / two_pi; },
                [K](Real x) { return K * std::cos(two_pi * x); },
                [K](Real x) { return -K * two_pi * std::sin(two_pi * x); }};
    }

    /// Validates oddness and periodicity on a sample grid.
    static Nonlinearity custom(std::string name, std::function<Real(Real)> g, std::function<Real(Real)> dg,
                               std::function<Real(Real)> d2g) {
        Nonlinearity n{std::move(name), std::move(g), std::move(dg), std::move(d2g)};
        for (int i = 0; i <= 64; ++i) {
            const Real x = static_cast<Real>(i) / 64;
            const Real scale = 1 + std::abs(n.g(x));
            if (std::abs(n.g(-x) + n.g(x)) > 1e-12L * scale)
                throw domain_error("Nonlinearity: g must be odd");
            if (std::abs(n.g(x + 1) - n.g(x)) > 1e-12L * scale)
                throw domain_error("Nonlinearity: g must be 1-periodic (degree-one lift)");
            if (!std::isfinite(static_cast<double>(n.dg(x))) || !std::isfinite(static_cast<double>(n.d2g(x))))
                throw domain_error("Nonlinearity: derivatives must be finite");
        }
        return n;
    }
};

struct CircleMapParams {
    double w = 0;
    Nonlinearity nonlinearity = Nonlinearity::critical_sine();

    CircleMapParams() = default;
    explicit CircleMapParams(double w_, Nonlinearity nl = Nonlinearity::critical_sine())
        : w(w_), nonlinearity(std::move(nl)) {
        if (!(w >= 0.0 && w <= 1.0)) throw domain_error("CircleMapParams: w must lie in [0, 1]");
    }
};

struct WindingNumber {
    double value;
    double error_bound;  // (|theta_0 - theta_burn| + 1) / n style bound: 1/n
};

/// (theta_{burn+n} - theta_burn) / n on the lift, starting at theta_0 = 0.
/// The integer part of theta is carried separately to keep full precision in the fraction.
inline WindingNumber winding_number(const CircleMapParams& params, std::uint64_t iterations,
                                    std::uint64_t burn_in = 0) {
    if (iterations < 1000) throw domain_error("winding_number: iterations must be >= 1000");
    const auto& g = params.nonlinearity.g;
    const Real w = params.w;
    Real frac = 0;
    std::int64_t whole = 0;
    auto step = [&] {
        frac += w + g(frac);
        const Real fl = std::floor(frac);
        whole += static_cast<std::int64_t>(fl);
        frac -= fl;
    };
    for (std::uint64_t i = 0; i < burn_in; ++i) step();
    const std::int64_t whole0 = whole;
    const Real frac0 = frac;
    for (std::uint64_t i = 0; i < iterations; ++i) step();
    const Real n = static_cast<Real>(iterations);
    const Real v = (static_cast<Real>(whole - whole0) + (frac - frac0)) / n;
    // Rotation-number theory: |theta_n - theta_0 - n rho| < 1.
    return {static_cast<double>(v), 1.0 / static_cast<double>(iterations)};
}

/// Mode-locking plateau of rotation number p/q: [w_lo, w_hi] in the bare frequency.
/// For 0/1 and 1/1 the plateau extends past [0, 1]; it is reported unclipped.
struct LockingInterval {
    Fraction rotation;
    double w_lo;
    double w_hi;
    double width() const { return w_hi - w_lo; }
};

namespace detail {

/// q-fold iterate of the lift with its partial derivatives.
struct Orbit {
    Real x;    // F^q(theta)
    Real dx;   // d/dtheta
    Real d2x;  // d2/dtheta2
    Real dw;   // d/dw
};

inline Orbit iterate(const Nonlinearity& nl, Real w, Real theta, unsigned q) {
    Real x = theta, D = 1, S = 0, W = 0;
    for (unsigned i = 0; i < q; ++i) {
        const Real f1 = 1 + nl.dg(x);
        const Real f2 = nl.d2g(x);
        S = f2 * D * D + f1 * S;
        D = f1 * D;
        W = f1 * W + 1;
        x = x + w + nl.g(x);
    }
    return {x, D, S, W};
}

/// Extremum over theta of G(theta) = F^q(theta) - theta - p. Returns {G, dG/dw} at the extremum.
/// Grid scan, then Newton on G' = 0 from the best few grid points.
inline std::pair<Real, Real> extremum(const Nonlinearity& nl, Real w, unsigned p, unsigned q, bool want_max) {
    const unsigned M = std::max(512u, 32u * q);
    const Real sign = want_max ? 1 : -1;
    std::vector<std::pair<Real, Real>> samples(M);  // (signed G, theta)
    for (unsigned i = 0; i < M; ++i) {
        const Real th = static_cast<Real>(i) / M;
        samples[i] = {sign * (iterate(nl, w, th, q).x - th - p), th};
    }
    const unsigned keep = std::min<unsigned>(4, M);
    std::partial_sort(samples.begin(), samples.begin() + keep, samples.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first; });
    Real bestG = -INFINITY, bestW = 0;
    const Real h = Real(1) / M;
    for (unsigned k = 0; k < keep; ++k) {
        const Real th0 = samples[k].second;
        Real th = th0;
        Orbit o = iterate(nl, w, th, q);
        Real G = sign * (o.x - th - p);
        for (int it = 0; it < 30; ++it) {
            const Real grad = o.dx - 1;
            if (o.d2x == 0) break;
            Real step = -grad / o.d2x;
            // Only ascend; keep within a couple of grid cells.
            if (sign * o.d2x >= 0) step = std::copysign(h / 4, sign * grad);
            step = std::clamp(step, -2 * h, 2 * h);
            const Real nth = th + step;
            if (std::abs(nth - th0) > 2 * h) break;
            const Orbit no = iterate(nl, w, nth, q);
            const Real nG = sign * (no.x - nth - p);
            if (nG < G) break;
            const bool done = std::abs(step) < 1e-18L;
            th = nth;
            o = no;
            G = nG;
            if (done) break;
        }
        if (G > bestG) {
            bestG = G;
            bestW = o.dw;
        }
    }
    return {sign * bestG, bestW};
}

inline std::string pq(unsigned p, unsigned q) { return std::to_string(p) + "/" + std::to_string(q); }

/// Root in w of an increasing phi on [lo, hi]: Newton inside the bracket with bisection fallback.
template <class Phi>
double solve_w(Phi&& phi, Real lo, Real hi, double tol, const std::string& what) {
    Real flo = phi(lo).first, fhi = phi(hi).first;
    if (!(flo < 0 && fhi > 0)) {
        std::ostringstream os;
        os.precision(17);
        os << what << ": failed to bracket, phi(" << static_cast<double>(lo) << ") = " << static_cast<double>(flo)
           << ", phi(" << static_cast<double>(hi) << ") = " << static_cast<double>(fhi);
        throw numeric_error(os.str());
    }
    Real x = 0.5L * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const auto [f, df] = phi(x);
        if (f == 0) return static_cast<double>(x);
        if (f > 0)
            hi = x;
        else
            lo = x;
        Real next = 0.5L * (lo + hi);
        bool newton = false;
        if (df > 0) {
            const Real nx = x - f / df;
            if (nx > lo && nx < hi) {
                next = nx;
                newton = true;
            }
        }
        if (hi - lo <= tol || (newton && std::abs(next - x) <= 0.01L * tol)) return static_cast<double>(next);
        x = next;
    }
    throw numeric_error(what + ": no convergence after 200 iterations");
}

}  // namespace detail

/// Plateau of rotation number p/q. Edges are where F^q(theta) - theta - p touches zero
/// from below (max over theta vanishes: w_lo) or from above (min vanishes: w_hi).
/// Both edges are bracketed by the superstable parameter, where 1/2 lies on the orbit.
inline LockingInterval locking_interval(unsigned p, unsigned q, double tol = 1e-12,
                                        const Nonlinearity& nl = Nonlinearity::critical_sine()) {
    if (q < 1 || p > q) throw domain_error("locking_interval: need 0 <= p <= q, q >= 1");
    if (q > 100) throw domain_error("locking_interval: q must be <= 100");
    if (std::gcd(p, q) != 1) throw domain_error("locking_interval: p/q must be in lowest terms");
    if (!(tol > 0)) throw domain_error("locking_interval: tol must be positive");
    const std::string what = "locking_interval(" + detail::pq(p, q) + ")";
    const Real rho = static_cast<Real>(p) / q;
    // |rho(w) - w| <= max|g| keeps the plateau inside this window.
    Real reach = 0;
    for (int i = 0; i < 256; ++i) reach = std::max(reach, std::abs(nl.g(static_cast<Real>(i) / 256)));
    const Real span = 2 * reach + 0.05L;
    const Real lo = rho - span, hi = rho + span;
    auto center = [&](Real w) {
        const auto o = detail::iterate(nl, w, 0.5L, q);
        return std::pair{o.x - 0.5L - p, o.dw};
    };
    const Real ws = detail::solve_w(center, lo, hi, tol * 1e-2, what + " superstable");
    auto phi_max = [&](Real w) { return detail::extremum(nl, w, p, q, true); };
    auto phi_min = [&](Real w) { return detail::extremum(nl, w, p, q, false); };
    LockingInterval li{Fraction(static_cast<std::int64_t>(p), static_cast<std::int64_t>(q)), 0, 0};
    // phi_max(ws) >= 0 >= phi_min(ws); shift the inner bracket end just off the touch.
    auto edge = [&](auto& phi, Real a, Real b, const char* side) {
        try {
            return detail::solve_w(phi, a, b, tol, what + " " + side);
        } catch (const numeric_error&) {
            // At the superstable point the extremum can sit exactly on zero; nudge it.
            const Real nudge = 1e3L * std::numeric_limits<double>::epsilon();
            return side[0] == 'l' ? detail::solve_w(phi, a, b + nudge, tol, what + " " + side)
                                  : detail::solve_w(phi, a - nudge, b, tol, what + " " + side);
        }
    };
    li.w_lo = edge(phi_max, lo, ws, "lower edge");
    li.w_hi = edge(phi_min, ws, hi, "upper edge");
    if (!(li.w_lo <= li.w_hi)) throw numeric_error(what + ": inverted plateau edges");
    return li;
}

/// One complement interval of the level-N plateau union.
struct Gap {
    double length;
    double fb_image_length;  // 1/(b b') for the neighbouring rotations a/b < a'/b'
    Fraction left_rotation;
    Fraction right_rotation;
};

struct GapCover {
    unsigned level = 0;
    std::vector<Gap> gaps;
    std::vector<LockingInterval> plateaus;  // level-N fractions in increasing order

    double total_length() const {
        double s = 0;
        for (const Gap& g : gaps) s += g.length;
        return s;
    }
};

/// C_N: plateaus of all 2^N + 1 level-N fractions, clipped to [0, 1], and the 2^N
/// gaps between neighbouring plateaus paired with their vertical image lengths.
inline GapCover gap_cover(unsigned N, double tol = 1e-12, const Nonlinearity& nl = Nonlinearity::critical_sine()) {
    if (N < 1 || N > 8) throw domain_error("gap_cover: N must lie in [1, 8]");
    const FareyPartition part = build_partition(N);
    GapCover cover;
    cover.level = N;
    for (const Fraction& f : part.breakpoints()) {
        cover.plateaus.push_back(locking_interval(static_cast<unsigned>(f.num()), static_cast<unsigned>(f.den()), tol, nl));
    }
    for (std::size_t i = 0; i + 1 < cover.plateaus.size(); ++i) {
        const LockingInterval& a = cover.plateaus[i];
        const LockingInterval& b = cover.plateaus[i + 1];
        const double left = std::clamp(a.w_hi, 0.0, 1.0);
        const double right = std::clamp(b.w_lo, 0.0, 1.0);
        if (!(right > left))
            throw numeric_error("gap_cover: plateaus " + a.rotation.to_string() + " and " + b.rotation.to_string() +
                                " overlap");
        const FareyInterval iv = part.interval(i);
        cover.gaps.push_back({right - left, iv.length().to_double(), iv.left, iv.right});
    }
    return cover;
}

namespace detail {

inline std::vector<double> checked_logs(const GapCover& c) {
    std::vector<double> logs;
    logs.reserve(c.gaps.size());
    for (const Gap& g : c.gaps) {
        if (!(g.length > 0)) throw domain_error("dimension_estimate: lengths must be positive");
        if (g.length >= 1) throw domain_error("dimension_estimate: degenerate cover, a length is >= 1");
        logs.push_back(std::log(g.length));
    }
    return logs;
}

/// log sum_i exp(d L_i) and its d-derivative.
inline std::pair<double, double> log_partition(const std::vector<double>& logs, double d) {
    double mx = -INFINITY;
    for (double L : logs) mx = std::max(mx, d * L);
    double s = 0, ds = 0;
    for (double L : logs) {
        const double e = std::exp(d * L - mx);
        s += e;
        ds += e * L;
    }
    return {mx + std::log(s), ds / s};
}

}  // namespace detail

struct DimensionEstimate {
    double d;                        // extrapolated
    std::vector<unsigned> levels;
    std::vector<double> per_level;   // d_N: sum over level N of l^d = 1
    std::vector<double> level_ratio; // d_{N,N+1}: Z_{N+1}(d) = Z_N(d), one per consecutive pair
};

/// Per-level d_N carry an O(1/N) prefactor error. Equating partition sums of
/// consecutive levels, Z_{N+1}(d) = Z_N(d) with Z_N(d) = sum l^d, cancels it; the
/// last three of those are Aitken-extrapolated when their differences shrink
/// geometrically, otherwise the last one is returned. Levels must be consecutive.
inline DimensionEstimate dimension_estimate(const std::vector<GapCover>& covers) {
    if (covers.size() < 3) throw domain_error("dimension_estimate: need at least 3 levels");
    DimensionEstimate est;
    std::vector<std::vector<double>> logs;
    for (const GapCover& c : covers) {
        if (!est.levels.empty() && c.level != est.levels.back() + 1)
            throw domain_error("dimension_estimate: levels must be consecutive");
        logs.push_back(detail::checked_logs(c));
        est.levels.push_back(c.level);
        if (logs.back().size() < 2) throw domain_error("dimension_estimate: a cover needs at least two gaps");
        est.per_level.push_back(bisect_newton([&](double d) { return detail::log_partition(logs.back(), d); }, 0.0,
                                              64.0, 1e-15, 200, 1e-3, "dimension_estimate")
                                    .root);
    }
    for (std::size_t i = 0; i + 1 < logs.size(); ++i) {
        auto fdf = [&](double d) {
            const auto [z1, dz1] = detail::log_partition(logs[i + 1], d);
            const auto [z0, dz0] = detail::log_partition(logs[i], d);
            return std::pair{z1 - z0, dz1 - dz0};
        };
        est.level_ratio.push_back(bisect_newton(fdf, 0.0, 64.0, 1e-15, 200, 1e-3, "dimension_estimate").root);
    }
    const std::size_t n = est.level_ratio.size();
    est.d = est.level_ratio.back();
    if (n >= 3) {
        const double d0 = est.level_ratio[n - 3], d1 = est.level_ratio[n - 2], d2 = est.level_ratio[n - 1];
        const double a = d1 - d0, b = d2 - d1;
        if (a != 0 && b != 0 && std::abs(b) < std::abs(a) && (a > 0) == (b > 0)) est.d = d2 - b * b / (b - a);
    }
    return est;
}

struct SlopeFit {
    double slope;
    double r_squared;  // uncentered, matching the through-origin model
};

/// Least squares through the origin of vertical image length against gap length:
/// g(I_j) ~ c_N |I_j|. Gaps shrink faster than their images, so c_N grows with N.
inline SlopeFit slope_scatter(const GapCover& cover) {
    if (cover.gaps.empty()) throw domain_error("slope_scatter: empty cover");
    double sxy = 0, sxx = 0, syy = 0;
    for (const Gap& g : cover.gaps) {
        sxy += g.length * g.fb_image_length;
        sxx += g.length * g.length;
        syy += g.fb_image_length * g.fb_image_length;
    }
    return {sxy / sxx, sxy * sxy / (sxx * syy)};
}

}  // namespace farey
