#pragma once

#include <cmath>
#include <cstddef>

#include "advrob/data/dataset.hpp"

namespace advrob {

/// Square √d×√d images with a single vertical (class +1) or horizontal
/// (class −1) line and a constant bias a.
struct RunningExampleConfig {
    std::size_t d = 4;
    double a = 0.05;

    std::size_t side() const {
        const auto s = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(d))));
        return s;
    }
    bool valid() const { return d > 0 && side() * side() == d && a >= 0.0 && std::isfinite(a); }

    /// a = 0.1/√d, which puts ρ_adv(f_lin) at exactly 0.1 for every d.
    static RunningExampleConfig with_default_bias(std::size_t d) {
        return {d, 0.1 / std::sqrt(static_cast<double>(d))};
    }
};

/// Generates 2√d points. Images are vectorized column-major (pixel (row,
/// col) at index row + col·√d). The √d class-+1 points come first (column j
/// set to 1+a, a elsewhere), followed by the √d class-−1 points (row i set to
/// 1−a, −a elsewhere).
inline LabeledDataset gen_running_example(const RunningExampleConfig& cfg) {
    if (!cfg.valid())
        fail(ErrorKind::invalid_input, "running example: d must be a positive perfect square and a >= 0");
    const std::size_t s = cfg.side();
    const double a = cfg.a;
    std::vector<Vector> pts;
    std::vector<Label> labels;
    for (std::size_t col = 0; col < s; ++col) {
        Vector x(cfg.d, a);
        for (std::size_t row = 0; row < s; ++row)
            x[row + col * s] = 1.0 + a;
        pts.push_back(std::move(x));
        labels.push_back(1);
    }
    for (std::size_t row = 0; row < s; ++row) {
        Vector x(cfg.d, -a);
        for (std::size_t col = 0; col < s; ++col)
            x[row + col * s] = 1.0 - a;
        pts.push_back(std::move(x));
        labels.push_back(-1);
    }
    return LabeledDataset(std::move(pts), std::move(labels));
}

} // namespace advrob
