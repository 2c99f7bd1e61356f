#pragma once

#include <optional>
#include <string>
#include <vector>

#include "advrob/data/dataset.hpp"

namespace advrob {

enum class Method { exact, empirical, noise };

inline const char* to_string(Method m) {
    switch (m) {
    case Method::exact: return "exact";
    case Method::empirical: return "empirical";
    case Method::noise: return "noise";
    }
    return "?";
}

/// Result of a single-point robustness computation.
struct PointRobustness {
    double delta = 0.0;
    std::optional<Vector> perturbation;
    Method method = Method::exact;
    bool success = true;
    /// Non-empty when the value needed special handling (hard case, clipped
    /// to the noise bracket, ...).
    std::string flag;
};

/// Per-point values plus dataset averages. Points whose computation failed
/// stay in `per_point` (success = false) and are excluded from the means.
struct RobustnessReport {
    std::vector<PointRobustness> per_point;
    double rho = 0.0;
    double rho_normalized = 0.0;
    std::size_t failures = 0;

    static RobustnessReport aggregate(std::vector<PointRobustness> per_point, const LabeledDataset& ds) {
        RobustnessReport r;
        r.per_point = std::move(per_point);
        double sum = 0.0, sum_normalized = 0.0;
        std::size_t n = 0, n_normalized = 0;
        for (std::size_t i = 0; i < r.per_point.size(); ++i) {
            const auto& p = r.per_point[i];
            if (!p.success) {
                ++r.failures;
                continue;
            }
            sum += p.delta;
            ++n;
            const double xn = norm2(ds.point(i));
            if (xn > 0.0) {
                sum_normalized += p.delta / xn;
                ++n_normalized;
            }
        }
        r.rho = n ? sum / static_cast<double>(n) : 0.0;
        r.rho_normalized = n_normalized ? sum_normalized / static_cast<double>(n_normalized) : 0.0;
        return r;
    }
};

} // namespace advrob
