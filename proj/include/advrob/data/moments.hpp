#pragma once

#include "advrob/data/dataset.hpp"
#include "advrob/numerics/sym_matrix.hpp"

namespace advrob {

/// Empirical class priors, means and second-moment matrices E[x xᵀ].
struct ClassMoments {
    double p1 = 0.5;
    double p_m1 = 0.5;
    Vector mean1;
    Vector mean_m1;
    SymMatrix c1;
    SymMatrix c_m1;

    double prior(Label y) const { return y == 1 ? p1 : p_m1; }

    /// ‖mean1 − mean_m1‖₂
    double mean_difference_norm() const {
        return std::sqrt(squared_distance(mean1, mean_m1));
    }

    /// p₁·mean1 − p₋₁·mean_m1
    Vector weighted_mean_difference() const {
        Vector v(mean1.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = p1 * mean1[i] - p_m1 * mean_m1[i];
        return v;
    }

    /// p₁C₁ − p₋₁C₋₁
    SymMatrix weighted_second_moment_difference() const { return SymMatrix::combine(p1, c1, -p_m1, c_m1); }
};

inline ClassMoments compute_moments(const LabeledDataset& ds) {
    require_both_classes(ds, "compute_moments");
    const std::size_t d = ds.dim();
    ClassMoments m{0.0, 0.0, Vector(d, 0.0), Vector(d, 0.0), SymMatrix(d), SymMatrix(d)};
    const auto n1 = static_cast<double>(ds.count(1));
    const auto n_m1 = static_cast<double>(ds.count(-1));
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const bool pos = ds.label(i) == 1;
        const double w = 1.0 / (pos ? n1 : n_m1);
        axpy(w, ds.point(i), pos ? m.mean1 : m.mean_m1);
        (pos ? m.c1 : m.c_m1).add_outer(ds.point(i), w);
    }
    const auto n = static_cast<double>(ds.size());
    m.p1 = n1 / n;
    m.p_m1 = n_m1 / n;
    return m;
}

/// ‖mean1 − mean_m1‖₂ without forming the second-moment matrices.
inline double mean_difference_norm(const LabeledDataset& ds) {
    require_both_classes(ds, "mean_difference_norm");
    Vector m1(ds.dim(), 0.0), m_m1(ds.dim(), 0.0);
    const auto n1 = static_cast<double>(ds.count(1));
    const auto n_m1 = static_cast<double>(ds.count(-1));
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const bool pos = ds.label(i) == 1;
        axpy(1.0 / (pos ? n1 : n_m1), ds.point(i), pos ? m1 : m_m1);
    }
    return std::sqrt(squared_distance(m1, m_m1));
}

} // namespace advrob
