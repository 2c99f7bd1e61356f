#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "advrob/classifiers/classifier.hpp"
#include "advrob/numerics/random.hpp"

namespace advrob {

struct SvmOptions {
    double lambda = 1e-2;
    int epochs = 20;
};

/// Primal hinge-loss SVM by stochastic subgradient steps ηₜ = 1/(λt)
/// (Pegasos). The intercept is learned as the weight of a constant feature,
/// so it is regularized along with w. Deterministic given the stream.
inline LinearClassifier train_linear_svm(const LabeledDataset& ds, const SvmOptions& opts, RandomStream rng) {
    require_both_classes(ds, "train_linear_svm");
    if (!(opts.lambda > 0.0) || opts.epochs < 1)
        fail(ErrorKind::invalid_input, "train_linear_svm: lambda must be positive and epochs >= 1");
    const std::size_t d = ds.dim();
    Vector w(d, 0.0);
    double b = 0.0;
    const std::size_t total = static_cast<std::size_t>(opts.epochs) * ds.size();
    const double radius = 1.0 / std::sqrt(opts.lambda);
    for (std::size_t t = 1; t <= total; ++t) {
        const std::size_t i = rng.uniform_index(ds.size());
        const auto& x = ds.point(i);
        const double y = ds.label(i);
        const double eta = 1.0 / (opts.lambda * static_cast<double>(t));
        const double margin = y * (dot(w, x) + b);
        const double shrink = 1.0 - eta * opts.lambda;
        for (double& v : w)
            v *= shrink;
        b *= shrink;
        if (margin < 1.0) {
            axpy(eta * y, x, w);
            b += eta * y;
        }
        // projection onto the ball that contains the optimum
        const double n = std::sqrt(dot(w, w) + b * b);
        if (n > radius) {
            const double s = radius / n;
            for (double& v : w)
                v *= s;
            b *= s;
        }
    }
    if (!(norm2(w) > 0.0))
        fail(ErrorKind::invalid_input, "train_linear_svm: training produced w = 0");
    return LinearClassifier(std::move(w), b);
}

/// Kernelized Pegasos. Decision values of all training points are kept up to
/// date incrementally, so each update costs one kernel row. The kernel is
/// augmented with a constant 1 to learn an intercept.
inline KernelClassifier train_kernel_svm(const LabeledDataset& ds, const KernelSpec& kernel, const SvmOptions& opts,
                                         RandomStream rng) {
    require_both_classes(ds, "train_kernel_svm");
    if (!(opts.lambda > 0.0) || opts.epochs < 1)
        fail(ErrorKind::invalid_input, "train_kernel_svm: lambda must be positive and epochs >= 1");
    const std::size_t n = ds.size();
    std::vector<double> alpha(n, 0.0);
    std::vector<double> decision(n, 0.0); // Σ_j alpha_j y_j (K(x_j, x_i) + 1)
    const std::size_t total = static_cast<std::size_t>(opts.epochs) * n;
    for (std::size_t t = 1; t <= total; ++t) {
        const std::size_t i = rng.uniform_index(n);
        const double y = ds.label(i);
        const double scale = 1.0 / (opts.lambda * static_cast<double>(t));
        if (y * scale * decision[i] < 1.0) {
            alpha[i] += 1.0;
            for (std::size_t j = 0; j < n; ++j)
                decision[j] += y * (kernel(ds.point(i), ds.point(j)) + 1.0);
        }
    }
    KernelClassifier out;
    out.kernel = kernel;
    const double scale = 1.0 / (opts.lambda * static_cast<double>(total));
    for (std::size_t j = 0; j < n; ++j) {
        if (alpha[j] == 0.0)
            continue;
        const double coef = alpha[j] * ds.label(j) * scale;
        out.support_points.push_back(ds.point(j));
        out.coefficients.push_back(coef);
        out.intercept += coef;
    }
    if (out.support_points.empty())
        fail(ErrorKind::invalid_input, "train_kernel_svm: no support vectors");
    return out;
}

/// Trains a model for a given regularization weight.
using Trainer = std::function<Classifier(const LabeledDataset&, double lambda, RandomStream)>;

inline Trainer linear_svm_trainer(int epochs) {
    return [epochs](const LabeledDataset& ds, double lambda, RandomStream rng) -> Classifier {
        return train_linear_svm(ds, {lambda, epochs}, rng);
    };
}

inline Trainer kernel_svm_trainer(KernelSpec kernel, int epochs) {
    return [kernel, epochs](const LabeledDataset& ds, double lambda, RandomStream rng) -> Classifier {
        return train_kernel_svm(ds, kernel, {lambda, epochs}, rng);
    };
}

inline std::vector<double> default_lambda_grid() { return {1e-4, 1e-3, 1e-2, 1e-1, 1e0, 1e1}; }

/// k-fold cross-validation over `grid`; returns the λ with the lowest mean
/// validation error (ties go to the larger λ). Folds come from a seeded
/// shuffle.
inline double select_lambda_cv(const LabeledDataset& ds, const Trainer& trainer, const std::vector<double>& grid,
                               std::size_t folds, RandomStream rng) {
    require_both_classes(ds, "select_lambda_cv");
    if (grid.empty() || folds < 2 || folds > ds.size())
        fail(ErrorKind::invalid_input, "select_lambda_cv: need a nonempty grid and 2 <= folds <= n");
    std::vector<std::size_t> order(ds.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[rng.uniform_index(i)]);

    double best_lambda = grid.front();
    double best_error = std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < grid.size(); ++g) {
        double err = 0.0;
        for (std::size_t f = 0; f < folds; ++f) {
            std::vector<std::size_t> train, test;
            for (std::size_t k = 0; k < order.size(); ++k)
                (k % folds == f ? test : train).push_back(order[k]);
            const auto tr = ds.subset(train);
            if (!tr.has_both_classes()) {
                err += 1.0;
                continue;
            }
            const Classifier model = trainer(tr, grid[g], rng.child(g * folds + f));
            err += risk(model, ds.subset(test));
        }
        err /= static_cast<double>(folds);
        if (err < best_error || (err == best_error && grid[g] > best_lambda)) {
            best_error = err;
            best_lambda = grid[g];
        }
    }
    return best_lambda;
}

} // namespace advrob
