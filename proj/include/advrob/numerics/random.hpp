#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "advrob/numerics/vector.hpp"

namespace advrob {

namespace detail {

constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace detail

/// Counter-based random stream: the k-th draw is a pure function of
/// (key, k). Streams are never shared between workers; use `child(i)` to
/// derive an independent stream for work item i.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed = 0) noexcept : key_(detail::splitmix64(seed ^ 0x6a09e667f3bcc909ULL)) {}

    std::uint64_t key() const noexcept { return key_; }
    std::uint64_t counter() const noexcept { return counter_; }

    RandomStream child(std::uint64_t index) const noexcept {
        RandomStream s;
        s.key_ = detail::splitmix64(key_ ^ detail::splitmix64(index + 0x3c6ef372fe94f82bULL));
        return s;
    }

    std::uint64_t next_u64() noexcept {
        const std::uint64_t c = counter_++;
        return detail::splitmix64(key_ + detail::splitmix64(c));
    }

    /// Uniform on the open interval (0, 1).
    double uniform() noexcept { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

    std::uint64_t uniform_index(std::uint64_t n) noexcept { return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)) % n; }

    /// Standard normal via Box–Muller; both outputs of a pair are used.
    double normal() noexcept {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(phi);
        has_spare_ = true;
        return r * std::cos(phi);
    }

private:
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

inline void fill_normal(std::span<double> out, RandomStream& rng) {
    for (double& v : out)
        v = rng.normal();
}

/// Uniform sample on the sphere of the given radius in R^d (normalized
/// isotropic Gaussian).
inline void sample_sphere(std::span<double> out, double radius, RandomStream& rng) {
    if (!(radius > 0.0))
        fail(ErrorKind::invalid_input, "sample_sphere: radius must be positive");
    if (out.empty())
        fail(ErrorKind::invalid_input, "sample_sphere: dimension must be at least 1");
    double n = 0.0;
    do {
        fill_normal(out, rng);
        n = norm2(out);
    } while (n == 0.0);
    const double s = radius / n;
    for (double& v : out)
        v *= s;
}

inline Vector sample_sphere(std::size_t d, double radius, RandomStream& rng) {
    Vector v(d);
    sample_sphere(v, radius, rng);
    return v;
}

} // namespace advrob
