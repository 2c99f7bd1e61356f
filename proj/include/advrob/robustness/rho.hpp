#pragma once

#include "advrob/numerics/parallel.hpp"
#include "advrob/robustness/attack.hpp"
#include "advrob/robustness/exact.hpp"
#include "advrob/robustness/noise.hpp"

namespace advrob {

/// Exact Δ_adv for the families that have a closed form.
inline PointRobustness delta_adv_exact(const Classifier& c, std::span<const double> x) {
    if (const auto* lin = std::get_if<LinearClassifier>(&c))
        return delta_adv_linear_exact(*lin, x);
    if (const auto* quad = std::get_if<QuadraticClassifier>(&c))
        return delta_adv_quadratic_exact(*quad, x);
    fail(ErrorKind::unsupported_method, "exact minimal perturbations are only available for linear and quadratic classifiers");
}

/// ρ_adv over a dataset: per-point Δ by the selected method, averaged. Point i
/// gets the child stream rng.child(i), so the report does not depend on the
/// number of worker threads.
inline RobustnessReport rho_adv(const Classifier& c, const LabeledDataset& ds, Method method, const AttackConfig& cfg,
                                const RandomStream& rng, std::size_t threads = 1) {
    if (method == Method::noise)
        fail(ErrorKind::unsupported_method, "rho_adv: use rho_unif for noise robustness");
    if (method == Method::exact && std::holds_alternative<KernelClassifier>(c))
        fail(ErrorKind::unsupported_method, "exact minimal perturbations are only available for linear and quadratic classifiers");
    check_same_dim(dim(c), ds.dim());
    auto per_point = parallel_map(ds.size(), threads, [&](std::size_t i) {
        if (method == Method::exact)
            return delta_adv_exact(c, ds.point(i));
        RandomStream s = rng.child(i);
        return delta_adv_empirical(c, ds.point(i), cfg, s);
    });
    return RobustnessReport::aggregate(std::move(per_point), ds);
}

/// ρ̂_unif,ε over a dataset. When the config has no upper η bracket, 4M is used.
inline RobustnessReport rho_unif(const Classifier& c, const LabeledDataset& ds, NoiseConfig cfg,
                                 const RandomStream& rng, std::size_t threads = 1) {
    check_same_dim(dim(c), ds.dim());
    if (!cfg.eta_hi)
        cfg.eta_hi = 4.0 * ds.radius();
    auto per_point = parallel_map(ds.size(), threads,
                                  [&](std::size_t i) { return delta_unif_empirical(c, ds.point(i), cfg, rng.child(i)); });
    return RobustnessReport::aggregate(std::move(per_point), ds);
}

} // namespace advrob
