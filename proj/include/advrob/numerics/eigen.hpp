#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "advrob/numerics/sym_matrix.hpp"

namespace advrob {

/// Eigenvalues ascending; column k of `eigenvectors` pairs with eigenvalues[k].
struct SpectralDecomposition {
    Vector eigenvalues;
    DenseMatrix eigenvectors;

    std::size_t dim() const noexcept { return eigenvalues.size(); }
    double min_eigenvalue() const { return eigenvalues.front(); }
    double max_eigenvalue() const { return eigenvalues.back(); }

    /// Qᵀx: coordinates of x in the eigenbasis.
    Vector to_eigenbasis(std::span<const double> x) const { return eigenvectors.apply_transposed(x); }
    /// Qz
    Vector from_eigenbasis(std::span<const double> z) const { return eigenvectors.apply(z); }

    SymMatrix reconstruct() const {
        const std::size_t d = dim();
        DenseMatrix a(d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                double s = 0.0;
                for (std::size_t k = 0; k < d; ++k)
                    s += eigenvectors(i, k) * eigenvalues[k] * eigenvectors(j, k);
                a(i, j) = s;
            }
        return SymMatrix(a);
    }
};

struct JacobiOptions {
    double relative_threshold = 1e-12;
    int max_sweeps = 100;
};

namespace detail {

inline double off_diagonal_norm(const DenseMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            if (i != j)
                s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

} // namespace detail

/// Cyclic Jacobi eigensolver for symmetric matrices.
///
/// Sweeps over all (p, q) pairs with the classic stable rotation
/// (t = sgn(θ)/(|θ| + sqrt(θ² + 1))) until the off-diagonal Frobenius norm drops
/// below `relative_threshold · ‖A‖_F` or `max_sweeps` is reached.
inline SpectralDecomposition eig_sym(const SymMatrix& input, const JacobiOptions& opts = {}) {
    if (!input.is_finite())
        fail(ErrorKind::invalid_input, "eig_sym: matrix has non-finite entries");
    const std::size_t n = input.dim();
    DenseMatrix a = input.dense();
    DenseMatrix v = DenseMatrix::identity(n);
    const double threshold = opts.relative_threshold * a.frobenius_norm();

    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
        if (detail::off_diagonal_norm(a) <= threshold)
            break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0)
                    continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // A <- JᵀAJ restricted to rows/cols p, q
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

    SpectralDecomposition out{Vector(n), DenseMatrix(n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]);
        for (std::size_t i = 0; i < n; ++i)
            out.eigenvectors(i, k) = v(i, order[k]);
    }
    return out;
}

/// Sum of singular values; for a symmetric matrix that is Σ|λᵢ|.
inline double nuclear_norm(const SymMatrix& a) {
    const auto spec = eig_sym(a);
    double s = 0.0;
    for (double l : spec.eigenvalues)
        s += std::abs(l);
    return s;
}

} // namespace advrob
