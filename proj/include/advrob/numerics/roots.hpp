#pragma once

#include <cmath>
#include <functional>
#include <optional>

#include "advrob/error.hpp"

namespace advrob {

/// Stops when |g(μ)| ≤ value_tol or the bracket is narrower than
/// width_tol·(1 + |μ|).
struct RootOptions {
    double value_tol = 1e-10;
    double width_tol = 1e-10;
    int max_iterations = 400;
};

/// Root of g on [lo, hi] by bisection, optionally accelerated with Newton
/// steps from `dg`. A Newton step is taken only when it lands strictly inside
/// the current bracket. Endpoint values may be ±inf (poles at the bracket
/// edge are fine as long as the sign is right).
inline double solve_scalar_root(const std::function<double(double)>& g, double lo, double hi,
                                const RootOptions& opts = {},
                                const std::function<double(double)>& dg = nullptr) {
    if (!(lo <= hi))
        std::swap(lo, hi);
    double glo = g(lo);
    double ghi = g(hi);
    if (glo == 0.0)
        return lo;
    if (ghi == 0.0)
        return hi;
    if (std::isnan(glo) || std::isnan(ghi) || std::signbit(glo) == std::signbit(ghi))
        fail(ErrorKind::bracket, "solve_scalar_root: no sign change on the bracket");

    double mu = 0.5 * (lo + hi);
    for (int it = 0; it < opts.max_iterations; ++it) {
        const double gm = g(mu);
        if (std::abs(gm) <= opts.value_tol || gm == 0.0)
            return mu;
        if (std::signbit(gm) == std::signbit(glo)) {
            lo = mu;
            glo = gm;
        } else {
            hi = mu;
        }
        if (hi - lo <= opts.width_tol * (1.0 + std::abs(mu)))
            return 0.5 * (lo + hi);

        double next = 0.5 * (lo + hi);
        if (dg) {
            const double slope = dg(mu);
            if (slope != 0.0 && std::isfinite(slope)) {
                const double newton = mu - gm / slope;
                if (newton > lo && newton < hi)
                    next = newton;
            }
        }
        if (!(next > lo && next < hi))
            return mu; // bracket exhausted at double resolution
        mu = next;
    }
    return mu;
}

} // namespace advrob
