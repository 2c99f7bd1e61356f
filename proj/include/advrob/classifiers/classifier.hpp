#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <variant>

#include "advrob/data/dataset.hpp"
#include "advrob/numerics/eigen.hpp"

namespace advrob {

/// f(x) = wᵀx + b
struct LinearClassifier {
    Vector w;
    double b = 0.0;

    LinearClassifier() = default;
    LinearClassifier(Vector w_, double b_) : w(std::move(w_)), b(b_) {
        if (!(norm2(w) > 0.0))
            fail(ErrorKind::invalid_input, "linear classifier: w must be nonzero");
    }

    std::size_t dim() const noexcept { return w.size(); }
    double w_norm() const { return norm2(w); }
};

/// f(x) = xᵀAx, no linear or constant term. The spectrum is computed once at
/// construction; non-triviality (λ_min < 0 < λ_max) is checked where needed.
class QuadraticClassifier {
public:
    QuadraticClassifier() = default;
    explicit QuadraticClassifier(SymMatrix a) : a_(std::move(a)), spectrum_(eig_sym(a_)) {}

    std::size_t dim() const noexcept { return a_.dim(); }
    const SymMatrix& matrix() const noexcept { return a_; }
    const SpectralDecomposition& spectrum() const noexcept { return spectrum_; }
    double lambda_min() const { return spectrum_.min_eigenvalue(); }
    double lambda_max() const { return spectrum_.max_eigenvalue(); }

    bool is_nontrivial() const { return lambda_min() < 0.0 && lambda_max() > 0.0; }
    void require_nontrivial() const {
        if (!is_nontrivial())
            fail(ErrorKind::trivial_classifier, "quadratic classifier needs lambda_min < 0 < lambda_max");
    }

private:
    SymMatrix a_;
    SpectralDecomposition spectrum_;
};

enum class KernelKind { polynomial, rbf };

/// Polynomial (sᵀx + 1)^q or RBF exp(−‖s − x‖²/(2σ²)).
struct KernelSpec {
    KernelKind kind = KernelKind::polynomial;
    int degree = 2;
    double sigma2 = 1.0;

    static KernelSpec polynomial(int q) {
        if (q < 1)
            fail(ErrorKind::invalid_input, "polynomial kernel degree must be >= 1");
        return {KernelKind::polynomial, q, 1.0};
    }
    static KernelSpec rbf(double sigma2) {
        if (!(sigma2 > 0.0))
            fail(ErrorKind::invalid_input, "rbf kernel width must be positive");
        return {KernelKind::rbf, 1, sigma2};
    }

    double operator()(std::span<const double> s, std::span<const double> x) const {
        if (kind == KernelKind::polynomial)
            return std::pow(dot(s, x) + 1.0, degree);
        return std::exp(-squared_distance(s, x) / (2.0 * sigma2));
    }

    /// out += weight · ∇ₓK(s, x)
    void add_gradient(std::span<const double> s, std::span<const double> x, double weight, std::span<double> out) const {
        if (kind == KernelKind::polynomial) {
            const double base = dot(s, x) + 1.0;
            axpy(weight * degree * std::pow(base, degree - 1), s, out);
        } else {
            const double k = (*this)(s, x);
            const double c = weight * k / sigma2;
            for (std::size_t i = 0; i < out.size(); ++i)
                out[i] += c * (s[i] - x[i]);
        }
    }

    std::string name() const {
        if (kind == KernelKind::polynomial)
            return "poly-svm:" + std::to_string(degree);
        char buf[64];
        std::snprintf(buf, sizeof buf, "rbf-svm:%g", sigma2);
        return buf;
    }
};

/// f(x) = Σᵢ αᵢ K(sᵢ, x) + intercept
struct KernelClassifier {
    std::vector<Vector> support_points;
    Vector coefficients;
    double intercept = 0.0;
    KernelSpec kernel;

    std::size_t dim() const noexcept { return support_points.empty() ? 0 : support_points.front().size(); }

    void validate() const {
        if (support_points.size() != coefficients.size())
            fail(ErrorKind::invalid_input, "kernel classifier: coefficient count differs from support point count");
        for (const auto& s : support_points)
            check_same_dim(dim(), s.size());
    }
};

using Classifier = std::variant<LinearClassifier, QuadraticClassifier, KernelClassifier>;

inline std::size_t dim(const Classifier& c) {
    return std::visit([](const auto& m) { return m.dim(); }, c);
}

inline std::string kind_name(const Classifier& c) {
    switch (c.index()) {
    case 0: return "linear";
    case 1: return "quadratic";
    default: return "kernel";
    }
}

inline double value(const LinearClassifier& c, std::span<const double> x) {
    check_same_dim(c.dim(), x.size());
    return dot(c.w, x) + c.b;
}

inline double value(const QuadraticClassifier& c, std::span<const double> x) {
    check_same_dim(c.dim(), x.size());
    return c.matrix().quadratic_form(x);
}

inline double value(const KernelClassifier& c, std::span<const double> x) {
    check_same_dim(c.dim(), x.size());
    double s = c.intercept;
    for (std::size_t i = 0; i < c.support_points.size(); ++i)
        s += c.coefficients[i] * c.kernel(c.support_points[i], x);
    return s;
}

inline double value(const Classifier& c, std::span<const double> x) {
    return std::visit([&](const auto& m) { return value(m, x); }, c);
}

inline Vector subgradient(const LinearClassifier& c, std::span<const double> x) {
    check_same_dim(c.dim(), x.size());
    return c.w;
}

inline Vector subgradient(const QuadraticClassifier& c, std::span<const double> x) {
    return scaled(c.matrix().apply(x), 2.0);
}

inline Vector subgradient(const KernelClassifier& c, std::span<const double> x) {
    check_same_dim(c.dim(), x.size());
    Vector g(x.size(), 0.0);
    for (std::size_t i = 0; i < c.support_points.size(); ++i)
        c.kernel.add_gradient(c.support_points[i], x, c.coefficients[i], g);
    return g;
}

inline Vector subgradient(const Classifier& c, std::span<const double> x) {
    return std::visit([&](const auto& m) { return subgradient(m, x); }, c);
}

/// Boundary points count as +1.
inline Label predict(double f) { return f >= 0.0 ? 1 : -1; }

inline double risk(const Classifier& c, const LabeledDataset& ds) {
    if (ds.empty())
        fail(ErrorKind::invalid_input, "risk: empty dataset");
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < ds.size(); ++i)
        if (predict(value(c, ds.point(i))) != ds.label(i))
            ++wrong;
    return static_cast<double>(wrong) / static_cast<double>(ds.size());
}

/// f restricted to the ray η ↦ x + ηu. Linear and quadratic classifiers
/// collapse to a polynomial in η, so repeated evaluation along the ray is O(1).
class RayProbe {
public:
    RayProbe(const Classifier& c, std::span<const double> x, std::span<const double> u) : c_(&c), x_(x), u_(u) {
        if (const auto* lin = std::get_if<LinearClassifier>(&c)) {
            poly_ = {value(*lin, x), dot(lin->w, u), 0.0};
        } else if (const auto* quad = std::get_if<QuadraticClassifier>(&c)) {
            const Vector au = quad->matrix().apply(u);
            poly_ = {value(*quad, x), 2.0 * dot(au, x), dot(au, u)};
        }
    }

    double operator()(double eta) const {
        if (poly_)
            return (*poly_)[0] + eta * ((*poly_)[1] + eta * (*poly_)[2]);
        Vector y(x_.begin(), x_.end());
        axpy(eta, u_, y);
        return value(*c_, y);
    }

private:
    const Classifier* c_;
    std::span<const double> x_;
    std::span<const double> u_;
    std::optional<std::array<double, 3>> poly_;
};

/// ‖f‖∞ over the ball ‖x‖₂ ≤ M. Exact for linear and quadratic models; an
/// upper estimate (exact = false) for kernel expansions.
struct SupNorm {
    double value = 0.0;
    bool exact = true;
};

inline SupNorm sup_norm_on_ball(const Classifier& c, double radius) {
    if (radius < 0.0)
        fail(ErrorKind::invalid_input, "sup_norm_on_ball: radius must be nonnegative");
    if (const auto* lin = std::get_if<LinearClassifier>(&c))
        return {radius * lin->w_norm() + std::abs(lin->b), true};
    if (const auto* quad = std::get_if<QuadraticClassifier>(&c))
        return {std::max(std::abs(quad->lambda_min()), std::abs(quad->lambda_max())) * radius * radius, true};
    const auto& k = std::get<KernelClassifier>(c);
    double s = std::abs(k.intercept);
    for (std::size_t i = 0; i < k.support_points.size(); ++i) {
        const double kmax = k.kernel.kind == KernelKind::polynomial
                                ? std::pow(norm2(k.support_points[i]) * radius + 1.0, k.kernel.degree)
                                : 1.0;
        s += std::abs(k.coefficients[i]) * kmax;
    }
    return {s, false};
}

/// w = 1/√d, b = −1: zero risk on the running example, ρ_adv = √d·a.
inline LinearClassifier f_lin_reference(std::size_t d) {
    if (d == 0)
        fail(ErrorKind::invalid_input, "f_lin_reference: d must be positive");
    return LinearClassifier(Vector(d, 1.0 / std::sqrt(static_cast<double>(d))), -1.0);
}

/// x₁x₂ + x₃x₄ − x₁x₃ − x₂x₄ on 2×2 column-major images: +1 on vertical
/// lines, −1 on horizontal ones, for any bias.
inline QuadraticClassifier f_quad_reference() {
    SymMatrix a{{0.0, 0.5, -0.5, 0.0}, {0.5, 0.0, 0.0, -0.5}, {-0.5, 0.0, 0.0, 0.5}, {0.0, -0.5, 0.5, 0.0}};
    return QuadraticClassifier(std::move(a));
}

} // namespace advrob
