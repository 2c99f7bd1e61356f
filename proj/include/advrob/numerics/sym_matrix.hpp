#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "advrob/numerics/vector.hpp"

namespace advrob {

/// Square row-major dense matrix.
class DenseMatrix {
public:
    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t dim, double fill = 0.0) : dim_(dim), data_(dim * dim, fill) {}

    static DenseMatrix identity(std::size_t dim) {
        DenseMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i)
            m(i, i) = 1.0;
        return m;
    }

    std::size_t dim() const noexcept { return dim_; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
    std::span<const double> data() const noexcept { return data_; }

    Vector column(std::size_t j) const {
        Vector c(dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            c[i] = (*this)(i, j);
        return c;
    }

    DenseMatrix transposed() const {
        DenseMatrix t(dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
        check_same_dim(a.dim_, b.dim_);
        DenseMatrix c(a.dim_);
        for (std::size_t i = 0; i < a.dim_; ++i)
            for (std::size_t k = 0; k < a.dim_; ++k) {
                const double aik = a(i, k);
                if (aik == 0.0)
                    continue;
                for (std::size_t j = 0; j < a.dim_; ++j)
                    c(i, j) += aik * b(k, j);
            }
        return c;
    }

    Vector apply(std::span<const double> x) const {
        check_same_dim(dim_, x.size());
        Vector y(dim_, 0.0);
        for (std::size_t i = 0; i < dim_; ++i)
            y[i] = dot({&data_[i * dim_], dim_}, x);
        return y;
    }

    /// Qᵀx
    Vector apply_transposed(std::span<const double> x) const {
        check_same_dim(dim_, x.size());
        Vector y(dim_, 0.0);
        for (std::size_t i = 0; i < dim_; ++i)
            axpy(x[i], {&data_[i * dim_], dim_}, y);
        return y;
    }

    double frobenius_norm() const { return norm2(data_); }

private:
    std::size_t dim_ = 0;
    std::vector<double> data_;
};

/// Symmetric matrix. Construction from arbitrary entries symmetrizes as
/// (X + Xᵀ)/2, so entries(i, j) == entries(j, i) holds bit-for-bit.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(std::size_t dim) : m_(dim) {}
    explicit SymMatrix(const DenseMatrix& x) : m_(x.dim()) {
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = i; j < dim(); ++j) {
                const double v = i == j ? x(i, i) : 0.5 * (x(i, j) + x(j, i));
                m_(i, j) = v;
                m_(j, i) = v;
            }
    }

    /// Row-major nested initializer; symmetrized like any other input.
    SymMatrix(std::initializer_list<std::initializer_list<double>> rows) {
        DenseMatrix x(rows.size());
        std::size_t i = 0;
        for (const auto& row : rows) {
            check_same_dim(rows.size(), row.size());
            std::size_t j = 0;
            for (double v : row)
                x(i, j++) = v;
            ++i;
        }
        *this = SymMatrix(x);
    }

    static SymMatrix identity(std::size_t dim) { return SymMatrix(DenseMatrix::identity(dim)); }

    static SymMatrix diagonal(std::span<const double> d) {
        SymMatrix m(d.size());
        for (std::size_t i = 0; i < d.size(); ++i)
            m.m_(i, i) = d[i];
        return m;
    }

    std::size_t dim() const noexcept { return m_.dim(); }
    double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

    /// Writes both (i, j) and (j, i).
    void set(std::size_t i, std::size_t j, double v) {
        m_(i, j) = v;
        m_(j, i) = v;
    }

    void add_outer(std::span<const double> x, double weight) {
        check_same_dim(dim(), x.size());
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j)
                m_(i, j) += weight * x[i] * x[j];
    }

    const DenseMatrix& dense() const noexcept { return m_; }

    Vector apply(std::span<const double> x) const { return m_.apply(x); }

    double quadratic_form(std::span<const double> x) const { return dot(x, apply(x)); }

    double trace() const {
        double t = 0.0;
        for (std::size_t i = 0; i < dim(); ++i)
            t += m_(i, i);
        return t;
    }

    double frobenius_norm() const { return m_.frobenius_norm(); }

    bool is_finite() const { return all_finite(m_.data()); }

    friend SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) { return combine(1.0, a, 1.0, b); }
    friend SymMatrix operator-(const SymMatrix& a, const SymMatrix& b) { return combine(1.0, a, -1.0, b); }
    friend SymMatrix operator*(double t, const SymMatrix& a) { return combine(t, a, 0.0, a); }

    /// s·a + t·b
    static SymMatrix combine(double s, const SymMatrix& a, double t, const SymMatrix& b) {
        check_same_dim(a.dim(), b.dim());
        SymMatrix c(a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i)
            for (std::size_t j = 0; j < a.dim(); ++j)
                c.m_(i, j) = s * a(i, j) + t * b(i, j);
        return c;
    }

    /// QᵀAQ for a square Q.
    SymMatrix congruence(const DenseMatrix& q) const { return SymMatrix(q.transposed() * m_ * q); }

private:
    DenseMatrix m_;
};

} // namespace advrob
