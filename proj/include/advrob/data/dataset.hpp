#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "advrob/numerics/vector.hpp"

namespace advrob {

using Label = int;

/// Points in R^d with ±1 labels and a support radius M ≥ max ‖x‖₂.
class LabeledDataset {
public:
    LabeledDataset() = default;

    LabeledDataset(std::vector<Vector> points, std::vector<Label> labels, std::optional<double> radius = std::nullopt)
        : points_(std::move(points)), labels_(std::move(labels)) {
        if (points_.size() != labels_.size())
            fail(ErrorKind::invalid_input, "dataset: points and labels differ in length");
        dim_ = points_.empty() ? 0 : points_.front().size();
        double max_norm = 0.0;
        for (std::size_t i = 0; i < points_.size(); ++i) {
            if (points_[i].size() != dim_)
                fail(ErrorKind::dimension_mismatch, "dataset: point " + std::to_string(i) + " has dimension " +
                                                        std::to_string(points_[i].size()) + ", expected " +
                                                        std::to_string(dim_));
            if (labels_[i] != 1 && labels_[i] != -1)
                fail(ErrorKind::invalid_input, "dataset: labels must be +1 or -1");
            if (!all_finite(points_[i]))
                fail(ErrorKind::invalid_input, "dataset: non-finite coordinate in point " + std::to_string(i));
            max_norm = std::max(max_norm, norm2(points_[i]));
        }
        radius_ = max_norm;
        if (radius) {
            if (*radius < max_norm)
                fail(ErrorKind::invalid_input, "dataset: support radius below the largest point norm");
            radius_ = *radius;
        }
    }

    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }
    std::size_t dim() const noexcept { return dim_; }
    double radius() const noexcept { return radius_; }

    const Vector& point(std::size_t i) const { return points_[i]; }
    Label label(std::size_t i) const { return labels_[i]; }
    const std::vector<Vector>& points() const noexcept { return points_; }
    const std::vector<Label>& labels() const noexcept { return labels_; }

    std::size_t count(Label y) const { return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), y)); }
    bool has_both_classes() const { return count(1) > 0 && count(-1) > 0; }

    /// Same points with M raised to `radius`.
    LabeledDataset with_radius(double radius) const { return LabeledDataset(points_, labels_, radius); }

    LabeledDataset subset(const std::vector<std::size_t>& idx) const {
        std::vector<Vector> p;
        std::vector<Label> l;
        for (std::size_t i : idx) {
            p.push_back(points_[i]);
            l.push_back(labels_[i]);
        }
        return LabeledDataset(std::move(p), std::move(l));
    }

    friend bool operator==(const LabeledDataset&, const LabeledDataset&) = default;

private:
    std::vector<Vector> points_;
    std::vector<Label> labels_;
    std::size_t dim_ = 0;
    double radius_ = 0.0;
};

inline void require_both_classes(const LabeledDataset& ds, const char* who) {
    if (!ds.has_both_classes())
        fail(ErrorKind::invalid_input, std::string(who) + ": dataset must contain both classes");
}

/// Every point rescaled to unit Euclidean norm; M = 1.
inline LabeledDataset normalize_unit(const LabeledDataset& ds) {
    std::vector<Vector> pts;
    pts.reserve(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const double n = norm2(ds.point(i));
        if (n == 0.0)
            fail(ErrorKind::invalid_input, "normalize_unit: point " + std::to_string(i) + " has zero norm");
        pts.push_back(scaled(ds.point(i), 1.0 / n));
    }
    return LabeledDataset(std::move(pts), ds.labels(), 1.0);
}

/// Average over points of the distance to the nearest point of the opposite
/// class.
inline double kappa(const LabeledDataset& ds) {
    require_both_classes(ds, "kappa");
    double total = 0.0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < ds.size(); ++j)
            if (ds.label(j) != ds.label(i))
                best = std::min(best, squared_distance(ds.point(i), ds.point(j)));
        total += std::sqrt(best);
    }
    return total / static_cast<double>(ds.size());
}

} // namespace advrob
