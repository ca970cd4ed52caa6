#pragma once

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "farey/error.hpp"

namespace farey {

struct RootResult {
    double root;
    double residual;
    int iterations;
};

/// Root of an increasing-or-decreasing `f` on [lo, hi]: bisection down to
/// `polish_width`, then Newton steps kept inside the bracket.
///
/// `fdf(x)` returns {f(x), f'(x)}. Stops when |f| <= ftol or the bracket collapses.
template <class FDF>
RootResult bisect_newton(FDF&& fdf, double lo, double hi, double ftol, int max_iter = 200,
                         double polish_width = 1e-3, const char* what = "root") {
    auto [flo, dlo] = fdf(lo);
    auto [fhi, dhi] = fdf(hi);
    (void)dlo;
    (void)dhi;
    if (std::abs(flo) <= ftol) return {lo, flo, 0};
    if (std::abs(fhi) <= ftol) return {hi, fhi, 0};
    if (!(std::signbit(flo) != std::signbit(fhi))) {
        std::ostringstream os;
        os << what << ": no sign change on bracket [" << lo << ", " << hi << "], f = (" << flo
           << ", " << fhi << ")";
        throw numeric_error(os.str());
    }
    const bool increasing = fhi > flo;
    double x = 0.5 * (lo + hi);
    for (int it = 1; it <= max_iter; ++it) {
        auto [fx, dfx] = fdf(x);
        if (std::abs(fx) <= ftol) return {x, fx, it};
        if ((fx > 0) == increasing)
            hi = x;
        else
            lo = x;
        double next = 0.5 * (lo + hi);
        if (hi - lo < polish_width && dfx != 0 && std::isfinite(dfx)) {
            const double newton = x - fx / dfx;
            if (newton > lo && newton < hi) next = newton;
        }
        // Bracket exhausted at machine precision: the root is located as well as it can be.
        if (next == x || hi - lo <= 4 * std::numeric_limits<double>::epsilon() * std::abs(x))
            return {x, fx, it};
        x = next;
    }
    std::ostringstream os;
    os.precision(17);
    os << what << ": no convergence after " << max_iter << " iterations, bracket [" << lo << ", "
       << hi << "]";
    throw numeric_error(os.str());
}

}  // namespace farey
