#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "advrob/error.hpp"

namespace advrob {

using Vector = std::vector<double>;

inline void check_same_dim(std::size_t a, std::size_t b) {
    if (a != b)
        fail(ErrorKind::dimension_mismatch,
             "expected dimension " + std::to_string(a) + ", got " + std::to_string(b));
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double t = a[i] - b[i];
        s += t * t;
    }
    return s;
}

inline Vector add(std::span<const double> a, std::span<const double> b) {
    Vector out(a.begin(), a.end());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] += b[i];
    return out;
}

inline Vector scaled(std::span<const double> a, double t) {
    Vector out(a.begin(), a.end());
    for (double& v : out)
        v *= t;
    return out;
}

/// a += t * b
inline void axpy(double t, std::span<const double> b, std::span<double> a) {
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] += t * b[i];
}

inline bool all_finite(std::span<const double> a) {
    for (double v : a)
        if (!std::isfinite(v))
            return false;
    return true;
}

} // namespace advrob
