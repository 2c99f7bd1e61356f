#pragma once

#include <cmath>

#include "advrob/classifiers/classifier.hpp"
#include "advrob/numerics/roots.hpp"
#include "advrob/robustness/report.hpp"

namespace advrob {

namespace detail {

/// Stretches r by growing factors until x + r is on the other side of the
/// boundary (or on it) as actually evaluated. Needed because a point computed
/// to lie exactly on f = 0 can round to the original side.
template <class F>
void make_feasible(const F& f, std::span<const double> x, Vector& r) {
    const double fx = f(x);
    double grow = 0x1.0p-52;
    for (int k = 0; k < 80; ++k) {
        const Vector y = add(x, r);
        if (fx * f(y) <= 0.0)
            return;
        for (double& v : r)
            v *= 1.0 + grow;
        grow *= 2.0;
    }
    fail(ErrorKind::numerical, "could not push the perturbation across the decision boundary");
}

} // namespace detail

/// Δ = |wᵀx + b|/‖w‖₂ with r = −f(x)·w/‖w‖₂².
inline PointRobustness delta_adv_linear_exact(const LinearClassifier& c, std::span<const double> x) {
    const double wn = c.w_norm();
    if (!(wn > 0.0))
        fail(ErrorKind::invalid_input, "delta_adv_linear_exact: w must be nonzero");
    const double fx = value(c, x);
    PointRobustness out;
    out.method = Method::exact;
    out.delta = std::abs(fx) / wn;
    Vector r = scaled(c.w, -fx / (wn * wn));
    if (fx != 0.0)
        detail::make_feasible([&](std::span<const double> y) { return value(c, y); }, x, r);
    out.perturbation = std::move(r);
    return out;
}

/// Minimal ℓ₂ perturbation onto the quadric xᵀAx = 0.
///
/// In the eigenbasis (z = Qᵀx, f(x) = Σλᵢzᵢ²) the stationary points are
/// y(μ) = (I + μΛ)⁻¹z. With signs arranged so that f(x) > 0, the minimizer is
/// the unique root of the decreasing secular function
///     g(μ) = Σ λᵢ zᵢ² / (1 + μλᵢ)²
/// on (0, −1/λ₋), λ₋ the most negative eigenvalue. The root is found in the
/// variable s = 1 + μλ₋ ∈ (0, 1] on a log scale, which keeps full relative
/// precision when the root sits next to the pole.
///
/// Hard case: when z has no component on the λ₋ eigenspace and g stays
/// nonnegative up to the pole, the minimizer sits at μ = −1/λ₋ and the
/// missing eigenspace component is chosen to satisfy the constraint exactly.
/// Such results carry flag "hard-case".
inline PointRobustness delta_adv_quadratic_exact(const QuadraticClassifier& c, std::span<const double> x) {
    c.require_nontrivial();
    check_same_dim(c.dim(), x.size());
    const double fx = value(c, x);
    PointRobustness out;
    out.method = Method::exact;
    if (fx == 0.0) {
        out.delta = 0.0;
        out.perturbation = Vector(x.size(), 0.0);
        return out;
    }

    const auto& spec = c.spectrum();
    const std::size_t d = spec.dim();
    const double sign = fx > 0.0 ? 1.0 : -1.0;
    Vector lam(d);
    for (std::size_t i = 0; i < d; ++i)
        lam[i] = sign * spec.eigenvalues[i];
    const Vector z = spec.to_eigenbasis(x);

    double lam_neg = 0.0;
    double lam_scale = 0.0;
    for (double l : lam) {
        lam_neg = std::min(lam_neg, l);
        lam_scale = std::max(lam_scale, std::abs(l));
    }
    // ratio[i] = λᵢ/λ₋; cluster = eigenvalues equal to λ₋ up to rounding
    const double cluster_tol = 1e-10 * lam_scale;
    Vector one_minus_ratio(d);
    std::vector<bool> cluster(d);
    double z_cluster_sq = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        cluster[i] = std::abs(lam[i] - lam_neg) <= cluster_tol;
        one_minus_ratio[i] = cluster[i] ? 0.0 : 1.0 - lam[i] / lam_neg;
        if (cluster[i])
            z_cluster_sq += z[i] * z[i];
    }
    auto denom = [&](std::size_t i, double s) { return s + (1.0 - s) * one_minus_ratio[i]; };

    Vector y(d);
    const double z_norm = norm2(z);
    double g_rest_at_pole = 0.0;
    for (std::size_t i = 0; i < d; ++i)
        if (!cluster[i]) {
            const double di = one_minus_ratio[i];
            g_rest_at_pole += lam[i] * z[i] * z[i] / (di * di);
        }

    if (std::sqrt(z_cluster_sq) <= 1e-12 * z_norm && g_rest_at_pole >= 0.0) {
        const double t = std::sqrt(g_rest_at_pole / -lam_neg);
        const double zc = std::sqrt(z_cluster_sq);
        bool placed = false;
        for (std::size_t i = 0; i < d; ++i) {
            if (!cluster[i]) {
                y[i] = z[i] / one_minus_ratio[i];
            } else if (zc > 0.0) {
                y[i] = t * z[i] / zc;
            } else {
                y[i] = placed ? 0.0 : t;
                placed = true;
            }
        }
        out.flag = "hard-case";
    } else {
        auto g = [&](double log_s) {
            const double s = std::exp(log_s);
            double acc = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                const double di = denom(i, s);
                acc += lam[i] * z[i] * z[i] / (di * di);
            }
            return acc;
        };
        auto dg = [&](double log_s) {
            const double s = std::exp(log_s);
            double acc = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                const double di = denom(i, s);
                const double ddi = 1.0 - one_minus_ratio[i];
                acc += -2.0 * lam[i] * z[i] * z[i] * ddi / (di * di * di);
            }
            return acc * s;
        };
        // walk toward the pole until g turns negative
        double hi = 0.0; // log s; g(0) = f > 0
        double lo = std::log(0.5);
        while (g(lo) > 0.0) {
            hi = lo;
            lo -= std::log(2.0) * 4;
            if (lo < -700.0)
                fail(ErrorKind::numerical, "delta_adv_quadratic_exact: secular function has no sign change");
        }
        const double log_s = solve_scalar_root(g, lo, hi, {0.0, 1e-15, 500}, dg);
        const double s = std::exp(log_s);
        for (std::size_t i = 0; i < d; ++i)
            y[i] = z[i] / denom(i, s);
    }

    Vector r_eig(d);
    for (std::size_t i = 0; i < d; ++i)
        r_eig[i] = y[i] - z[i];
    Vector r = spec.from_eigenbasis(r_eig);
    out.delta = norm2(r_eig);

    const Vector moved = add(x, r);
    const double residual = value(c, moved);
    if (std::abs(residual) > 1e-8 * (1.0 + lam_scale * dot(moved, moved)))
        fail(ErrorKind::numerical, "delta_adv_quadratic_exact: constraint residual too large");
    detail::make_feasible([&](std::span<const double> v) { return value(c, v); }, x, r);
    out.perturbation = std::move(r);
    return out;
}

} // namespace advrob
