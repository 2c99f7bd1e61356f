#pragma once

#include <cmath>
#include <optional>

#include "advrob/classifiers/classifier.hpp"
#include "advrob/numerics/random.hpp"
#include "advrob/robustness/report.hpp"

namespace advrob {

/// Settings for the empirical ε-robustness to uniform sphere noise.
struct NoiseConfig {
    double epsilon = 0.01;
    std::size_t samples = 500;
    double eta_lo = 1e-6;
    /// Upper end of the η bracket; rho_unif fills in 4M when unset.
    std::optional<double> eta_hi;
    int bisection_iterations = 30;

    void validate() const {
        if (!(epsilon >= 0.0 && epsilon <= 1.0) || samples < 1 || !(eta_lo > 0.0) || bisection_iterations < 0)
            fail(ErrorKind::invalid_input, "noise config: need epsilon in [0,1], samples >= 1, eta_lo > 0");
        if (eta_hi && !(*eta_hi > eta_lo))
            fail(ErrorKind::invalid_input, "noise config: eta bracket must satisfy lo < hi");
    }
};

/// Largest η in the bracket for which at most ε·J of J random directions,
/// scaled to radius η, flip the sign of f at x.
///
/// The J unit directions are drawn once (direction j from rng.child(j)) and
/// reused for every η; n_j = η·u_j are still iid uniform on ηS for each η, and
/// the flip count becomes a deterministic function of η. Bisection treats it
/// as monotone in η (exact for linear classifiers). Results pinned to an end
/// of the bracket carry flag "below-bracket" or "above-bracket".
inline PointRobustness delta_unif_empirical(const Classifier& clf, std::span<const double> x, const NoiseConfig& cfg,
                                            const RandomStream& rng) {
    cfg.validate();
    if (!cfg.eta_hi)
        fail(ErrorKind::invalid_input, "delta_unif_empirical: eta bracket upper end not set");
    const std::size_t d = x.size();
    check_same_dim(dim(clf), d);
    PointRobustness out;
    out.method = Method::noise;
    const double fx = value(clf, x);
    if (fx == 0.0) {
        out.delta = 0.0;
        return out;
    }

    const std::size_t J = cfg.samples;
    std::vector<double> dirs(J * d);
    std::vector<RayProbe> rays;
    rays.reserve(J);
    for (std::size_t j = 0; j < J; ++j) {
        std::span<double> u(&dirs[j * d], d);
        RandomStream s = rng.child(j);
        sample_sphere(u, 1.0, s);
        rays.emplace_back(clf, x, u);
    }
    const auto allowed = static_cast<std::size_t>(std::floor(cfg.epsilon * static_cast<double>(J) + 1e-9));
    auto acceptable = [&](double eta) {
        std::size_t flips = 0;
        for (const auto& ray : rays)
            if (fx * ray(eta) <= 0.0 && ++flips > allowed)
                return false;
        return true;
    };

    double lo = cfg.eta_lo;
    double hi = *cfg.eta_hi;
    if (!acceptable(lo)) {
        out.delta = lo;
        out.flag = "below-bracket";
        return out;
    }
    if (acceptable(hi)) {
        out.delta = hi;
        out.flag = "above-bracket";
        return out;
    }
    for (int it = 0; it < cfg.bisection_iterations; ++it) {
        const double mid = 0.5 * (lo + hi);
        (acceptable(mid) ? lo : hi) = mid;
    }
    out.delta = lo;
    return out;
}

} // namespace advrob
