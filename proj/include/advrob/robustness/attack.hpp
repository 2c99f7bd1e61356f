#pragma once

#include <cmath>
#include <limits>

#include "advrob/classifiers/classifier.hpp"
#include "advrob/numerics/random.hpp"
#include "advrob/robustness/report.hpp"

namespace advrob {

/// Penalized-subgradient attack settings. For each penalty c the attack
/// minimizes c‖r‖₂ + max(0, sign(f(x))·f(x + r)) by subgradient descent.
struct AttackConfig {
    std::vector<double> c_grid = geometric_grid(1e-3, 1e3, 20);
    int inner_steps = 200;
    /// Base step α = step_scale·max(‖x‖₂, |f(x)|/‖∇f(x)‖₂) (step_scale alone
    /// when both vanish); step t moves a distance α/√t.
    double step_scale = 0.1;
    /// Extra bisection levels on c between the last success and first failure.
    int refine_levels = 5;
    /// Relative precision of the final radial refinement along r.
    double tolerance = 1e-9;
    /// Random starting points per penalty, in addition to r = 0.
    int random_starts = 2;
    /// Warm-started descents at the selected penalty with steps scaled to Δ̂.
    int polish_passes = 2;

    static std::vector<double> geometric_grid(double lo, double hi, int n) {
        std::vector<double> g(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            g[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, n == 1 ? 0.0 : double(i) / (n - 1));
        return g;
    }

    void validate() const {
        if (c_grid.empty() || inner_steps < 1 || refine_levels < 0 || !(step_scale > 0.0))
            fail(ErrorKind::invalid_input, "attack config: need a nonempty c grid, inner_steps >= 1, step_scale > 0");
        for (std::size_t i = 0; i < c_grid.size(); ++i)
            if (!(c_grid[i] > 0.0) || (i && !(c_grid[i] > c_grid[i - 1])))
                fail(ErrorKind::invalid_input, "attack config: c grid must be positive and strictly increasing");
    }
};

namespace detail {

struct FlipSearch {
    const Classifier& clf;
    std::span<const double> x;
    double fx;
    double sign;

    bool flips(std::span<const double> r) const {
        const Vector y = add(x, r);
        return fx * value(clf, y) <= 0.0;
    }

    /// Smallest t ∈ (0, 1] with x + t·r still flipped, by bisection.
    Vector shrink_radially(const Vector& r, double rel_tol) const {
        double lo = 0.0, hi = 1.0;
        while (hi - lo > rel_tol) {
            const double mid = 0.5 * (lo + hi);
            if (flips(scaled(r, mid)))
                hi = mid;
            else
                lo = mid;
        }
        return scaled(r, hi);
    }

    /// Normalized subgradient descent on c‖r‖ + max(0, s·f(x + r)) from r0
    /// with steps α/√t. Returns the flipping iterate of least norm, if any.
    std::optional<Vector> descend(double c, int steps, double alpha, Vector r) const {
        std::optional<Vector> best;
        double best_norm = std::numeric_limits<double>::infinity();
        if (flips(r)) {
            best = r;
            best_norm = norm2(r);
        }
        for (int t = 1; t <= steps; ++t) {
            const Vector y = add(x, r);
            const double loss = sign * value(clf, y);
            Vector g(x.size(), 0.0);
            const double rn = norm2(r);
            if (rn > 0.0)
                axpy(c / rn, r, g);
            if (loss > 0.0)
                axpy(sign, subgradient(clf, y), g);
            const double gn = norm2(g);
            if (gn == 0.0)
                break;
            axpy(-alpha / (std::sqrt(static_cast<double>(t)) * gn), g, r);
            const double nr = norm2(r);
            if (nr < best_norm && flips(r)) {
                best = r;
                best_norm = nr;
            }
        }
        return best;
    }
};

} // namespace detail

/// Empirical minimal perturbation by the penalized subgradient attack with a
/// line search on the penalty c: the largest c (from the grid, then refined
/// by bisection) whose minimizer still flips the label is kept. The returned
/// r always satisfies f(x)·f(x + r) ≤ 0, so Δ̂ = ‖r‖₂ is an upper estimate of
/// Δ_adv. Failure to flip for every c is reported with success = false.
inline PointRobustness delta_adv_empirical(const Classifier& clf, std::span<const double> x, const AttackConfig& cfg,
                                           RandomStream& rng) {
    cfg.validate();
    check_same_dim(dim(clf), x.size());
    PointRobustness out;
    out.method = Method::empirical;
    const double fx = value(clf, x);
    if (fx == 0.0) {
        out.delta = 0.0;
        out.perturbation = Vector(x.size(), 0.0);
        return out;
    }
    // step scale: the larger of ‖x‖ and the linearized boundary distance
    const double grad_norm = norm2(subgradient(clf, x));
    double scale = std::max(norm2(x), grad_norm > 0.0 ? std::abs(fx) / grad_norm : 0.0);
    if (!(scale > 0.0) || !std::isfinite(scale))
        scale = 1.0;
    const double alpha = cfg.step_scale * scale;
    const detail::FlipSearch search{clf, x, fx, fx > 0.0 ? 1.0 : -1.0};

    // r = 0 plus a few random starts of norm α; the random starts break
    // symmetric saddles such as points on a principal axis of a quadric
    std::vector<Vector> starts{Vector(x.size(), 0.0)};
    for (int k = 0; k < cfg.random_starts; ++k)
        starts.push_back(sample_sphere(x.size(), alpha, rng));

    std::optional<Vector> best;
    auto run = [&](double c) {
        bool flipped = false;
        for (const auto& r0 : starts) {
            const auto r = search.descend(c, cfg.inner_steps, alpha, r0);
            if (!r)
                continue;
            flipped = true;
            Vector shrunk = search.shrink_radially(*r, cfg.tolerance);
            if (!best || norm2(shrunk) < norm2(*best))
                best = std::move(shrunk);
        }
        return flipped;
    };

    // largest c in the grid whose minimizer flips
    std::ptrdiff_t success = -1;
    for (auto k = static_cast<std::ptrdiff_t>(cfg.c_grid.size()) - 1; k >= 0; --k) {
        if (run(cfg.c_grid[static_cast<std::size_t>(k)])) {
            success = k;
            break;
        }
    }
    if (success < 0) {
        out.success = false;
        out.delta = std::numeric_limits<double>::quiet_NaN();
        out.flag = "no penalty in the grid produced a label flip";
        return out;
    }
    double c_best = cfg.c_grid[static_cast<std::size_t>(success)];
    if (static_cast<std::size_t>(success) + 1 < cfg.c_grid.size()) {
        double hi = cfg.c_grid[static_cast<std::size_t>(success) + 1];
        for (int level = 0; level < cfg.refine_levels; ++level) {
            const double mid = std::sqrt(c_best * hi);
            if (run(mid))
                c_best = mid;
            else
                hi = mid;
        }
    }

    // polish: restart at the best point with steps on the scale of Δ̂
    for (int pass = 0; pass < cfg.polish_passes; ++pass) {
        const double step = cfg.step_scale * norm2(*best);
        if (!(step > 0.0))
            break;
        const auto r = search.descend(c_best, cfg.inner_steps, step, *best);
        if (r) {
            Vector shrunk = search.shrink_radially(*r, cfg.tolerance);
            if (norm2(shrunk) < norm2(*best))
                best = std::move(shrunk);
        }
    }
    out.delta = norm2(*best);
    out.perturbation = std::move(best);
    return out;
}

} // namespace advrob
