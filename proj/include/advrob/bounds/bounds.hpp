#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>

#include "advrob/classifiers/classifier.hpp"
#include "advrob/data/moments.hpp"

namespace advrob {

/// Parameters of the residual-to-distance assumption
/// dist(x, opposite region) ≤ τ·|f(x)|^γ.
struct AssumptionAParams {
    double tau = 1.0;
    double gamma = 1.0;

    AssumptionAParams() = default;
    AssumptionAParams(double tau_, double gamma_) : tau(tau_), gamma(gamma_) {
        if (!(tau > 0.0) || !(gamma > 0.0 && gamma <= 1.0))
            fail(ErrorKind::invalid_input, "residual-distance assumption needs tau > 0 and 0 < gamma <= 1");
    }
};

/// An upper bound on ρ_adv together with the quantities it was computed from.
/// Expectations are replaced by dataset averages, so every bound here is an
/// empirical plug-in value.
struct BoundReport {
    std::string theorem;
    double value = 0.0;
    /// The bracketed argument was negative (possible only through rounding or
    /// an underestimated ‖f‖∞); `value` is then NaN and inputs["argument"]
    /// holds the signed argument.
    bool vacuous = false;
    bool empirical_plugin = true;
    std::map<std::string, double> inputs;
};

inline AssumptionAParams tau_gamma_linear(const LinearClassifier& c) { return {1.0 / c.w_norm(), 1.0}; }

inline AssumptionAParams tau_gamma_quadratic(const QuadraticClassifier& c) {
    c.require_nontrivial();
    return {std::max(1.0 / std::sqrt(-c.lambda_min()), 1.0 / std::sqrt(c.lambda_max())), 0.5};
}

/// Smallest K with max(|λ_min/λ_max|, |λ_max/λ_min|) ≤ K.
inline double eq13_K(const QuadraticClassifier& c) {
    c.require_nontrivial();
    const double r = std::abs(c.lambda_min() / c.lambda_max());
    return std::max(r, 1.0 / r);
}

/// ρ_adv ≤ 4^{1−γ}·τ·(p₁E₁f − p₋₁E₋₁f + 2‖f‖∞R)^γ
inline BoundReport lemma1_bound(const AssumptionAParams& p, double p1, double p_m1, double mean_f_1, double mean_f_m1,
                                double f_inf, double risk) {
    BoundReport r;
    r.theorem = "lemma1";
    r.inputs = {{"tau", p.tau},           {"gamma", p.gamma},           {"p1", p1},   {"p_m1", p_m1},
                {"mean_f_1", mean_f_1}, {"mean_f_m1", mean_f_m1}, {"f_inf", f_inf}, {"risk", risk}};
    const double arg = p1 * mean_f_1 - p_m1 * mean_f_m1 + 2.0 * f_inf * risk;
    r.inputs["argument"] = arg;
    if (arg < 0.0) {
        r.vacuous = true;
        r.value = std::numeric_limits<double>::quiet_NaN();
        return r;
    }
    r.value = std::pow(4.0, 1.0 - p.gamma) * p.tau * std::pow(arg, p.gamma);
    return r;
}

/// The residual bound with every plug-in quantity computed from the classifier and the
/// dataset (class means of f, ‖f‖∞ on the ball of radius M, empirical risk).
inline BoundReport lemma1_bound(const Classifier& c, const LabeledDataset& ds) {
    const auto m = compute_moments(ds);
    double s1 = 0.0, s_m1 = 0.0;
    for (std::size_t i = 0; i < ds.size(); ++i)
        (ds.label(i) == 1 ? s1 : s_m1) += value(c, ds.point(i));
    AssumptionAParams params;
    if (const auto* lin = std::get_if<LinearClassifier>(&c))
        params = tau_gamma_linear(*lin);
    else if (const auto* quad = std::get_if<QuadraticClassifier>(&c))
        params = tau_gamma_quadratic(*quad);
    else
        fail(ErrorKind::unsupported_method, "lemma1_bound: (tau, gamma) known only for linear and quadratic classifiers");
    const auto sup = sup_norm_on_ball(c, ds.radius());
    return lemma1_bound(params, m.p1, m.p_m1, s1 / static_cast<double>(ds.count(1)),
                        s_m1 / static_cast<double>(ds.count(-1)), sup.value, risk(c, ds));
}

/// Linear-classifier bound from class means:
///   general:  ‖p₁E₁x − p₋₁E₋₁x‖ + M(|p₁ − p₋₁| + 4R)
///   balanced with zero intercept (caller asserts): ½‖E₁x − E₋₁x‖ + 2MR
inline BoundReport theorem1_bound(const ClassMoments& m, double radius, double risk, bool balanced_zero_intercept) {
    BoundReport r;
    r.theorem = balanced_zero_intercept ? "theorem1-balanced" : "theorem1";
    r.inputs = {{"M", radius}, {"risk", risk}, {"p1", m.p1}, {"p_m1", m.p_m1}};
    if (balanced_zero_intercept) {
        const double dist = m.mean_difference_norm();
        r.inputs["distinguishability"] = 0.5 * dist;
        r.value = 0.5 * dist + 2.0 * radius * risk;
    } else {
        const double dist = norm2(m.weighted_mean_difference());
        r.inputs["distinguishability"] = dist;
        r.value = dist + radius * (std::abs(m.p1 - m.p_m1) + 4.0 * risk);
    }
    return r;
}

/// Precondition |b| ≤ M‖w‖ of the mean-difference bound.
inline bool linear_intercept_admissible(const LinearClassifier& c, double radius) {
    return std::abs(c.b) <= radius * c.w_norm();
}

/// Quadratic-classifier bound 2·√(K‖p₁C₁ − p₋₁C₋₁‖_* + 2MKR).
inline BoundReport theorem3_bound(const ClassMoments& m, double K, double radius, double risk) {
    if (!(K >= 1.0))
        fail(ErrorKind::invalid_input, "theorem3_bound: K must be >= 1");
    BoundReport r;
    r.theorem = "theorem3";
    const double nuc = nuclear_norm(m.weighted_second_moment_difference());
    r.inputs = {{"K", K}, {"M", radius}, {"risk", risk}, {"nuclear_norm", nuc}};
    r.value = 2.0 * std::sqrt(K * nuc + 2.0 * radius * K * risk);
    return r;
}

/// Data-side distinguishability measures: ½‖E₁x − E₋₁x‖ (linear) and
/// 2√(K‖p₁C₁ − p₋₁C₋₁‖_*) with K = 1 (quadratic).
struct Distinguishability {
    double linear = 0.0;
    double quadratic = 0.0;
};

inline Distinguishability distinguishability(const ClassMoments& m, double K = 1.0) {
    return {0.5 * m.mean_difference_norm(), 2.0 * std::sqrt(K * nuclear_norm(m.weighted_second_moment_difference()))};
}

/// Constants relating ρ_unif,ε and ρ_adv for linear classifiers:
///   max(C₁√d, 1)·ρ_adv ≤ ρ_unif,ε ≤ C̃₂·ρ_adv ≤ C₂√d·ρ_adv
struct Theorem2Constants {
    double c1 = 0.0;
    double c2_tilde = 1.0;
    double c2 = 1.0;
    /// ε = 0: values are the limits (C₁ → 0, C̃₂ = C₂ = 1).
    bool limit = false;

    double lower_factor(std::size_t d) const { return std::max(c1 * std::sqrt(static_cast<double>(d)), 1.0); }
};

inline Theorem2Constants theorem2_constants(double epsilon, std::size_t d) {
    if (!(epsilon >= 0.0 && epsilon < 1.0 / 12.0) || d < 1)
        fail(ErrorKind::invalid_input, "theorem2_constants: need epsilon in [0, 1/12) and d >= 1");
    if (epsilon == 0.0)
        return {0.0, 1.0, 1.0, true};
    Theorem2Constants c;
    c.c1 = 1.0 / std::sqrt(2.0 * std::log(2.0 / epsilon));
    // 1 − (12ε)^{1/d} = −expm1(ln(12ε)/d), accurate for large d
    c.c2_tilde = 1.0 / std::sqrt(-std::expm1(std::log(12.0 * epsilon) / static_cast<double>(d)));
    c.c2 = 1.0 / std::sqrt(1.0 - 12.0 * epsilon);
    return c;
}

struct CapBounds {
    double lower = 0.0;
    double upper = 0.0;
};

/// Bounds on P(wᵀx ≥ τ) for x uniform on the unit sphere of R^d, ‖w‖ = 1:
///   (1 − τ²)^d / 12 ≤ P ≤ 2·exp(−τ²d/2)
inline CapBounds spherical_cap_bounds(double tau, std::size_t d) {
    if (!(tau >= 0.0 && tau < 1.0) || d < 1)
        fail(ErrorKind::invalid_input, "spherical_cap_bounds: need tau in [0, 1) and d >= 1");
    const auto dd = static_cast<double>(d);
    return {std::pow(1.0 - tau * tau, dd) / 12.0, 2.0 * std::exp(-tau * tau * dd / 2.0)};
}

/// Sharper cap bounds: [1/12, 1/2] for τ ≤ √(2/d), and
/// (1/(6τ√d))(1−τ²)^{(d−1)/2} ≤ P ≤ (1/(2τ√d))(1−τ²)^{(d−1)/2} for τ ≥ √(2/d).
inline CapBounds cap_bounds_sharp(double tau, std::size_t d) {
    if (!(tau >= 0.0 && tau < 1.0) || d < 1)
        fail(ErrorKind::invalid_input, "cap_bounds_sharp: need tau in [0, 1) and d >= 1");
    const auto dd = static_cast<double>(d);
    if (tau < std::sqrt(2.0 / dd))
        return {1.0 / 12.0, 0.5};
    const double base = std::pow(1.0 - tau * tau, (dd - 1.0) / 2.0) / (tau * std::sqrt(dd));
    return {base / 6.0, base / 2.0};
}

/// c(d) such that the ℓ∞ ball of radius η₀ and the ℓ₂ ball of radius
/// c(d)·√d·η₀ have the same volume: c(d) = (2/√π)·Γ(d/2 + 1)^{1/d}/√d.
/// Tends to √(2/(eπ)) ≈ 0.4839.
inline double volume_match_coefficient(std::size_t d) {
    if (d < 1)
        fail(ErrorKind::invalid_input, "volume_match_coefficient: d must be >= 1");
    if (d == 1)
        return 1.0; // both balls are the interval [−η₀, η₀]
    const auto dd = static_cast<double>(d);
    const double log_c = std::log(2.0) - 0.5 * std::log(std::numbers::pi) + std::lgamma(dd / 2.0 + 1.0) / dd -
                         0.5 * std::log(dd);
    return std::exp(log_c);
}

inline double volume_match_asymptote() { return std::sqrt(2.0 / (std::numbers::e * std::numbers::pi)); }

/// Σ zᵢ^γ ≤ n^{1−γ}(Σ zᵢ)^γ for nonnegative z and γ ∈ [0, 1], checked with a
/// 1e-12 relative slack for the equality cases.
inline bool lemma3_check(std::span<const double> values, double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0))
        fail(ErrorKind::invalid_input, "lemma3_check: gamma must be in [0, 1]");
    double lhs = 0.0, sum = 0.0;
    for (double z : values) {
        if (!(z >= 0.0))
            fail(ErrorKind::invalid_input, "lemma3_check: values must be nonnegative");
        lhs += std::pow(z, gamma);
        sum += z;
    }
    const double rhs = std::pow(static_cast<double>(values.size()), 1.0 - gamma) * std::pow(sum, gamma);
    return lhs <= rhs * (1.0 + 1e-12);
}

} // namespace advrob
