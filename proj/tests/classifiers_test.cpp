#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "advrob/bounds/bounds.hpp"
#include "advrob/classifiers/classifier.hpp"
#include "advrob/classifiers/serialize.hpp"
#include "advrob/classifiers/training.hpp"
#include "advrob/data/running_example.hpp"
#include "oracles.hpp"

using namespace advrob;

namespace {

KernelClassifier random_kernel_classifier(RandomStream& rng, KernelSpec kernel, std::size_t n, std::size_t d) {
    KernelClassifier k;
    k.kernel = kernel;
    for (std::size_t i = 0; i < n; ++i) {
        Vector s(d);
        fill_normal(s, rng);
        k.support_points.push_back(scaled(s, 0.5));
        k.coefficients.push_back(rng.normal());
    }
    k.intercept = rng.normal();
    return k;
}

LabeledDataset gaussian_blobs(RandomStream& rng, std::size_t per_class, double separation) {
    std::vector<Vector> pts;
    std::vector<Label> labels;
    for (std::size_t i = 0; i < 2 * per_class; ++i) {
        const Label y = i % 2 == 0 ? 1 : -1;
        Vector x{y * separation + 0.3 * rng.normal(), 0.3 * rng.normal()};
        pts.push_back(x);
        labels.push_back(y);
    }
    return LabeledDataset(pts, labels);
}

void expect_gradient_matches(const Classifier& c, const Vector& x, double rel) {
    const Vector g = subgradient(c, x);
    const Vector fd = oracle::finite_difference_gradient([&](const Vector& y) { return value(c, y); }, x);
    const double scale = std::max(1.0, norm2(fd));
    for (std::size_t k = 0; k < x.size(); ++k)
        EXPECT_NEAR(g[k], fd[k], rel * scale) << "coordinate " << k;
}

} // namespace

TEST(LinearClassifier, RejectsZeroWeights) { EXPECT_THROW(LinearClassifier(Vector(3, 0.0), 1.0), Error); }

TEST(LinearClassifier, ReferenceModel) {
    const auto f = f_lin_reference(25);
    for (double w : f.w)
        EXPECT_DOUBLE_EQ(w, 0.2);
    EXPECT_EQ(f.b, -1.0);
    EXPECT_NEAR(f.w_norm(), 1.0, 1e-15);
    for (std::size_t d : {4u, 25u, 100u}) {
        const auto ds = gen_running_example(RunningExampleConfig::with_default_bias(d));
        EXPECT_EQ(risk(f_lin_reference(d), ds), 0.0);
    }
}

TEST(QuadraticClassifier, ReferenceModel) {
    const auto f = f_quad_reference();
    EXPECT_NEAR(f.lambda_min(), -1.0, 1e-14);
    EXPECT_NEAR(f.lambda_max(), 1.0, 1e-14);
    EXPECT_TRUE(f.is_nontrivial());
    EXPECT_NEAR(eq13_K(f), 1.0, 1e-14);
    for (double a : {0.0, 0.01, 0.1, 0.4}) {
        const auto ds = gen_running_example({4, a});
        EXPECT_EQ(risk(f, ds), 0.0) << "a=" << a;
        for (std::size_t i = 0; i < ds.size(); ++i)
            EXPECT_NEAR(value(f, ds.point(i)), ds.label(i), 1e-14);
    }
}

TEST(QuadraticClassifier, DefiniteMatrixIsTrivial) {
    const QuadraticClassifier f(SymMatrix::diagonal(Vector{1.0, 2.0}));
    EXPECT_FALSE(f.is_nontrivial());
    try {
        f.require_nontrivial();
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::trivial_classifier);
    }
}

TEST(Classifier, ValuesFromDefinitions) {
    const Classifier lin = LinearClassifier({1.0, -2.0}, 0.5);
    EXPECT_DOUBLE_EQ(value(lin, Vector{3.0, 1.0}), 1.5);
    const Classifier quad = QuadraticClassifier(SymMatrix{{1.0, 2.0}, {2.0, -3.0}});
    EXPECT_DOUBLE_EQ(value(quad, Vector{1.0, 2.0}), 1.0 + 8.0 - 12.0);
    KernelClassifier k;
    k.kernel = KernelSpec::polynomial(2);
    k.support_points = {{1.0, 0.0}};
    k.coefficients = {2.0};
    k.intercept = -1.0;
    EXPECT_DOUBLE_EQ(value(Classifier(k), Vector{3.0, 5.0}), 2.0 * 16.0 - 1.0);
    k.kernel = KernelSpec::rbf(0.5);
    EXPECT_DOUBLE_EQ(value(Classifier(k), Vector{1.0, 1.0}), 2.0 * std::exp(-1.0) - 1.0);
}

TEST(Classifier, DimensionMismatchIsReported) {
    const Classifier lin = LinearClassifier({1.0, -2.0}, 0.5);
    try {
        value(lin, Vector{1.0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::dimension_mismatch);
    }
}

TEST(Classifier, SubgradientsMatchFiniteDifferences) {
    RandomStream rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t d = 1 + rng.uniform_index(6);
        Vector x(d);
        fill_normal(x, rng);
        Vector w(d);
        fill_normal(w, rng);
        expect_gradient_matches(LinearClassifier(w, rng.normal()), x, 1e-6);
        expect_gradient_matches(QuadraticClassifier(oracle::random_symmetric(d, rng)), x, 1e-5);
        expect_gradient_matches(random_kernel_classifier(rng, KernelSpec::polynomial(3), 5, d), x, 1e-5);
        expect_gradient_matches(random_kernel_classifier(rng, KernelSpec::rbf(0.7), 5, d), x, 1e-5);
    }
}

TEST(Classifier, RiskCountsBoundaryAsPositive) {
    const Classifier f = LinearClassifier({1.0}, 0.0);
    EXPECT_EQ(predict(0.0), 1);
    EXPECT_EQ(risk(f, LabeledDataset({{0.0}}, {1})), 0.0);
    EXPECT_EQ(risk(f, LabeledDataset({{0.0}}, {-1})), 1.0);
    EXPECT_DOUBLE_EQ(risk(f, LabeledDataset({{1.0}, {-1.0}, {2.0}, {-3.0}}, {1, 1, -1, -1})), 0.5);
}

TEST(Classifier, PredictionsInvariantUnderPositiveScaling) {
    RandomStream rng(22);
    for (int trial = 0; trial < 20; ++trial) {
        const SymMatrix a = oracle::random_symmetric(3, rng);
        const double s = 0.01 + 10.0 * rng.uniform();
        const Classifier f = QuadraticClassifier(a);
        const Classifier g = QuadraticClassifier(s * a);
        for (int k = 0; k < 20; ++k) {
            const Vector x = sample_sphere(3, 1.0 + rng.uniform(), rng);
            EXPECT_EQ(predict(value(f, x)), predict(value(g, x)));
        }
    }
}

TEST(RayProbe, MatchesDirectEvaluation) {
    RandomStream rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t d = 2 + rng.uniform_index(5);
        Vector w(d);
        fill_normal(w, rng);
        const std::vector<Classifier> models = {LinearClassifier(w, rng.normal()),
                                                QuadraticClassifier(oracle::random_symmetric(d, rng)),
                                                random_kernel_classifier(rng, KernelSpec::rbf(1.0), 4, d)};
        Vector x(d);
        fill_normal(x, rng);
        const Vector u = sample_sphere(d, 1.0, rng);
        for (const auto& c : models) {
            const RayProbe ray(c, x, u);
            for (double eta : {0.0, 0.3, 1.7, 5.0}) {
                Vector y = x;
                axpy(eta, u, y);
                EXPECT_NEAR(ray(eta), value(c, y), 1e-10 * (1.0 + std::abs(value(c, y))));
            }
        }
    }
}

TEST(SupNorm, ClosedForms) {
    const auto lin = sup_norm_on_ball(LinearClassifier({3.0, 4.0}, -2.0), 2.0);
    EXPECT_DOUBLE_EQ(lin.value, 12.0);
    EXPECT_TRUE(lin.exact);
    const auto quad = sup_norm_on_ball(QuadraticClassifier(SymMatrix::diagonal(Vector{1.0, -3.0})), 2.0);
    EXPECT_DOUBLE_EQ(quad.value, 12.0);
    EXPECT_NEAR(sup_norm_on_ball(f_quad_reference(), 1.0).value, 1.0, 1e-14);
}

TEST(SupNorm, DominatesSampledValues) {
    RandomStream rng(24);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t d = 2 + rng.uniform_index(4);
        Vector w(d);
        fill_normal(w, rng);
        const std::vector<Classifier> models = {LinearClassifier(w, rng.normal()),
                                                QuadraticClassifier(oracle::random_symmetric(d, rng)),
                                                random_kernel_classifier(rng, KernelSpec::polynomial(2), 4, d),
                                                random_kernel_classifier(rng, KernelSpec::rbf(0.5), 4, d)};
        const double radius = 0.5 + rng.uniform();
        for (const auto& c : models) {
            const auto sup = sup_norm_on_ball(c, radius);
            double sampled = 0.0;
            for (int k = 0; k < 2000; ++k) {
                const Vector x = sample_sphere(d, radius * std::sqrt(rng.uniform()), rng);
                sampled = std::max(sampled, std::abs(value(c, x)));
            }
            EXPECT_LE(sampled, sup.value * (1.0 + 1e-12));
            if (sup.exact) {
                EXPECT_GE(sampled, 0.5 * sup.value);
            }
        }
    }
}

TEST(Training, LinearSvmSeparatesBlobs) {
    RandomStream rng(31);
    const auto ds = gaussian_blobs(rng, 50, 2.0);
    const auto f = train_linear_svm(ds, {1e-2, 20}, RandomStream(1));
    EXPECT_EQ(risk(f, ds), 0.0);
    const auto g = train_linear_svm(ds, {1e-2, 20}, RandomStream(1));
    EXPECT_EQ(f.w, g.w);
    EXPECT_EQ(f.b, g.b);
}

TEST(Training, KernelSvmSolvesXor) {
    std::vector<Vector> pts;
    std::vector<Label> labels;
    RandomStream rng(32);
    for (int i = 0; i < 80; ++i) {
        const double sx = i % 2 ? 1.0 : -1.0;
        const double sy = (i / 2) % 2 ? 1.0 : -1.0;
        pts.push_back({sx + 0.2 * rng.normal(), sy + 0.2 * rng.normal()});
        labels.push_back(sx * sy > 0 ? 1 : -1);
    }
    const LabeledDataset ds(pts, labels);
    const Classifier poly = train_kernel_svm(ds, KernelSpec::polynomial(2), {1e-2, 30}, RandomStream(2));
    EXPECT_EQ(risk(poly, ds), 0.0);
    const Classifier rbf = train_kernel_svm(ds, KernelSpec::rbf(0.5), {1e-2, 30}, RandomStream(2));
    EXPECT_EQ(risk(rbf, ds), 0.0);
}

TEST(Training, DegreeOneKernelIsAffine) {
    RandomStream rng(33);
    const auto ds = gaussian_blobs(rng, 30, 1.0);
    const auto k = train_kernel_svm(ds, KernelSpec::polynomial(1), {1e-2, 10}, RandomStream(3));
    Vector w(2, 0.0);
    double b = k.intercept;
    for (std::size_t i = 0; i < k.support_points.size(); ++i) {
        axpy(k.coefficients[i], k.support_points[i], w);
        b += k.coefficients[i];
    }
    const LinearClassifier lin(w, b);
    for (int t = 0; t < 50; ++t) {
        const Vector x{3.0 * rng.normal(), 3.0 * rng.normal()};
        EXPECT_NEAR(value(Classifier(k), x), value(lin, x), 1e-9 * (1.0 + std::abs(value(lin, x))));
    }
}

TEST(Training, CrossValidationPicksFromGridDeterministically) {
    RandomStream rng(34);
    const auto ds = gaussian_blobs(rng, 25, 1.0);
    const auto grid = default_lambda_grid();
    const double a = select_lambda_cv(ds, linear_svm_trainer(10), grid, 5, RandomStream(4));
    const double b = select_lambda_cv(ds, linear_svm_trainer(10), grid, 5, RandomStream(4));
    EXPECT_EQ(a, b);
    EXPECT_NE(std::find(grid.begin(), grid.end(), a), grid.end());
    EXPECT_THROW(select_lambda_cv(ds, linear_svm_trainer(10), {}, 5, RandomStream(4)), Error);
}

TEST(Training, RejectsSingleClassData) {
    const LabeledDataset ds({{1.0}, {2.0}}, {1, 1});
    EXPECT_THROW(train_linear_svm(ds, {}, RandomStream(0)), Error);
    EXPECT_THROW(train_kernel_svm(ds, KernelSpec::rbf(1.0), {}, RandomStream(0)), Error);
}

TEST(Serialize, RoundTripAllFamilies) {
    RandomStream rng(41);
    const std::vector<Classifier> models = {LinearClassifier({0.1, -2.5, 1e-17}, 3.25),
                                            QuadraticClassifier(oracle::random_symmetric(3, rng)),
                                            random_kernel_classifier(rng, KernelSpec::polynomial(3), 4, 3),
                                            random_kernel_classifier(rng, KernelSpec::rbf(0.37), 4, 3)};
    for (const auto& c : models) {
        std::stringstream buf;
        write_classifier(buf, c);
        const Classifier back = read_classifier(buf);
        EXPECT_EQ(back.index(), c.index());
        for (int t = 0; t < 10; ++t) {
            const Vector x = sample_sphere(3, 1.0, rng);
            EXPECT_EQ(value(back, x), value(c, x));
        }
    }
}

TEST(Serialize, MalformedInputIsFormatError) {
    for (const char* text : {"", "advrob-classifier 2\n", "advrob-classifier 1\nlinear 2\n1 x\n0\n",
                             "advrob-classifier 1\ncubic 2\n", "advrob-classifier 1\nkernel poly 2 2 1\n0\n1 1\n"}) {
        std::istringstream in(text);
        try {
            read_classifier(in);
            ADD_FAILURE() << "accepted: " << text;
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::format) << text;
        }
    }
}
