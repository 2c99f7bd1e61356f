#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "advrob/bounds/bounds.hpp"
#include "advrob/data/running_example.hpp"
#include "advrob/robustness/rho.hpp"
#include "oracles.hpp"

using namespace advrob;

namespace {

// P(u₁ ≥ τ) for u uniform on S^{d−1}: the marginal density of u₁ is
// ∝ (1 − t²)^{(d−3)/2}. Composite Simpson on both integrals.
double cap_probability(double tau, std::size_t d) {
    const double k = (static_cast<double>(d) - 3.0) / 2.0;
    auto integrate = [&](double a, double b) {
        const int n = 200000;
        const double h = (b - a) / n;
        double s = 0.0;
        for (int i = 0; i <= n; ++i) {
            const double t = a + i * h;
            const double v = std::pow(std::max(0.0, 1.0 - t * t), k);
            s += v * (i == 0 || i == n ? 1.0 : (i % 2 ? 4.0 : 2.0));
        }
        return s * h / 3.0;
    };
    return integrate(tau, 1.0) / integrate(-1.0, 1.0);
}

// Unit ℓ₂-ball volume in log form via V_d = (2π/d)·V_{d−2}.
double log_ball_volume(std::size_t d) {
    double v = d % 2 ? std::log(2.0) : 0.0;
    for (std::size_t k = d % 2 ? 3 : 2; k <= d; k += 2)
        v += std::log(2.0 * std::numbers::pi / static_cast<double>(k));
    return v;
}

double volume_coefficient_oracle(std::size_t d) {
    const auto dd = static_cast<double>(d);
    return 2.0 / (std::sqrt(dd) * std::exp(log_ball_volume(d) / dd));
}

} // namespace

TEST(ResidualDistance, ParameterValidation) {
    EXPECT_THROW(AssumptionAParams(0.0, 1.0), Error);
    EXPECT_THROW(AssumptionAParams(1.0, 1.5), Error);
    EXPECT_NO_THROW(AssumptionAParams(2.0, 0.5));
}

TEST(ResidualDistance, TauGammaForReferenceModels) {
    const auto lin = tau_gamma_linear(f_lin_reference(25));
    EXPECT_NEAR(lin.tau, 1.0, 1e-15);
    EXPECT_EQ(lin.gamma, 1.0);
    const auto quad = tau_gamma_quadratic(QuadraticClassifier(SymMatrix::diagonal(Vector{4.0, -0.25})));
    EXPECT_DOUBLE_EQ(quad.tau, 2.0);
    EXPECT_EQ(quad.gamma, 0.5);
}

TEST(ResidualDistance, HoldsForQuadraticsAtRandomPoints) {
    RandomStream rng(61);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t d = 2 + rng.uniform_index(5);
        const QuadraticClassifier f(oracle::random_symmetric(d, rng));
        if (!f.is_nontrivial())
            continue;
        const auto p = tau_gamma_quadratic(f);
        Vector x(d);
        fill_normal(x, rng);
        const double delta = delta_adv_quadratic_exact(f, x).delta;
        EXPECT_LE(delta, p.tau * std::pow(std::abs(value(f, x)), p.gamma) * (1.0 + 1e-9));
    }
}

TEST(EigenvalueRatioK, RatioOfExtremeEigenvalues) {
    EXPECT_DOUBLE_EQ(eq13_K(QuadraticClassifier(SymMatrix::diagonal(Vector{2.0, 0.0, -0.5}))), 4.0);
    EXPECT_DOUBLE_EQ(eq13_K(QuadraticClassifier(SymMatrix::diagonal(Vector{0.5, -3.0}))), 6.0);
}

TEST(ResidualBound, TightForReferenceLinearModel) {
    for (std::size_t d : {4u, 25u, 100u}) {
        const auto ds = gen_running_example(RunningExampleConfig::with_default_bias(d));
        const auto b = lemma1_bound(f_lin_reference(d), ds);
        EXPECT_FALSE(b.vacuous);
        EXPECT_TRUE(b.empirical_plugin);
        EXPECT_NEAR(b.value, 0.1, 1e-12);
    }
}

TEST(ResidualBound, ExplicitArguments) {
    const auto b = lemma1_bound(AssumptionAParams(2.0, 0.5), 0.5, 0.5, 3.0, -1.0, 10.0, 0.1);
    // 4^{1/2}·2·(1.5 + 0.5 + 2)^{1/2}
    EXPECT_DOUBLE_EQ(b.value, 8.0);
    const auto v = lemma1_bound(AssumptionAParams(1.0, 1.0), 0.5, 0.5, -3.0, 1.0, 1.0, 0.0);
    EXPECT_TRUE(v.vacuous);
    EXPECT_TRUE(std::isnan(v.value));
    EXPECT_DOUBLE_EQ(v.inputs.at("argument"), -2.0);
}

TEST(ResidualBound, KernelModelsAreUnsupported) {
    KernelClassifier k;
    k.kernel = KernelSpec::rbf(1.0);
    k.support_points = {{0.0}};
    k.coefficients = {1.0};
    const LabeledDataset ds({{1.0}, {-1.0}}, {1, -1});
    EXPECT_THROW(lemma1_bound(Classifier(k), ds), Error);
}

TEST(MeanDifferenceBound, TightOnRunningExample) {
    for (std::size_t d : {4u, 25u, 100u, 2500u}) {
        const auto cfg = RunningExampleConfig::with_default_bias(d);
        const auto ds = gen_running_example(cfg);
        const auto m = compute_moments(ds);
        const double expected = std::sqrt(static_cast<double>(d)) * cfg.a;
        EXPECT_NEAR(theorem1_bound(m, ds.radius(), 0.0, true).value, expected, 1e-12);
        EXPECT_NEAR(theorem1_bound(m, ds.radius(), 0.0, false).value, expected, 1e-12);
        EXPECT_TRUE(linear_intercept_admissible(f_lin_reference(d), ds.radius()));
    }
}

TEST(MeanDifferenceBound, RiskAndImbalanceTerms) {
    const LabeledDataset ds({{1.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}, {1, 1, -1});
    const auto m = compute_moments(ds);
    const auto b = theorem1_bound(m, 1.0, 0.25, false);
    const double dist = std::hypot(2.0 / 3.0, 1.0 / 3.0);
    EXPECT_NEAR(b.value, dist + (1.0 / 3.0 + 1.0), 1e-15);
}

TEST(SecondMomentBound, RunningExampleValue) {
    for (double a : {0.0, 0.01, 0.1}) {
        const auto ds = gen_running_example({4, a});
        const auto m = compute_moments(ds);
        const auto b = theorem3_bound(m, eq13_K(f_quad_reference()), ds.radius(), 0.0);
        EXPECT_NEAR(b.value, 2.0 * std::sqrt(1.0 + 4.0 * a), 1e-9);
        EXPECT_GE(b.value, 1.0 / std::sqrt(2.0));
        const auto dist = distinguishability(m);
        EXPECT_NEAR(dist.linear, 2.0 * a, 1e-12);
        EXPECT_NEAR(dist.quadratic, b.value, 1e-12);
    }
    EXPECT_THROW(theorem3_bound(compute_moments(gen_running_example({4, 0.1})), 0.5, 1.0, 0.0), Error);
}

TEST(Bounds, DominateExactRobustnessOnGaussianMixtures) {
    RandomStream rng(62);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t d = 2 + rng.uniform_index(6);
        Vector mu(d);
        fill_normal(mu, rng);
        std::vector<Vector> pts;
        std::vector<Label> labels;
        for (int i = 0; i < 40; ++i) {
            const Label y = rng.uniform() < 0.5 ? 1 : -1;
            Vector x(d);
            fill_normal(x, rng);
            axpy(0.5 * y, mu, x);
            pts.push_back(x);
            labels.push_back(y);
        }
        const LabeledDataset ds(pts, labels);
        if (!ds.has_both_classes())
            continue;
        const auto m = compute_moments(ds);
        Vector w(d);
        fill_normal(w, rng);
        const double b = ds.radius() * norm2(w) * (2.0 * rng.uniform() - 1.0);
        const Classifier lin = LinearClassifier(w, b);
        const double rho_lin = rho_adv(lin, ds, Method::exact, {}, rng).rho;
        EXPECT_GE(theorem1_bound(m, ds.radius(), risk(lin, ds), false).value, rho_lin);
        EXPECT_GE(lemma1_bound(lin, ds).value, rho_lin);

        const QuadraticClassifier q(oracle::random_symmetric(d, rng));
        if (!q.is_nontrivial())
            continue;
        const double rho_q = rho_adv(q, ds, Method::exact, {}, rng).rho;
        EXPECT_GE(theorem3_bound(m, eq13_K(q), ds.radius(), risk(q, ds)).value, rho_q);
        const auto l1 = lemma1_bound(q, ds);
        if (!l1.vacuous) {
            EXPECT_GE(l1.value, rho_q);
        }
    }
}

TEST(NoiseRatioConstants, ConstantsAtOnePercent) {
    const auto c = theorem2_constants(0.01, 100);
    EXPECT_NEAR(c.c1, 1.0 / std::sqrt(2.0 * std::log(200.0)), 1e-15);
    EXPECT_NEAR(c.c2, 1.0 / std::sqrt(0.88), 1e-15);
    EXPECT_NEAR(c.c2_tilde, 1.0 / std::sqrt(1.0 - std::pow(0.12, 0.01)), 1e-10);
    EXPECT_NEAR(c.c1, 0.30720, 1e-5);
    EXPECT_NEAR(c.lower_factor(100), 3.0720, 1e-4);
    EXPECT_DOUBLE_EQ(c.lower_factor(4), 1.0);
}

TEST(NoiseRatioConstants, EpsilonZeroLimit) {
    const auto c = theorem2_constants(0.0, 50);
    EXPECT_TRUE(c.limit);
    EXPECT_EQ(c.c2_tilde, 1.0);
    EXPECT_EQ(c.lower_factor(50), 1.0);
    EXPECT_THROW(theorem2_constants(0.1, 10), Error);
    EXPECT_THROW(theorem2_constants(0.01, 0), Error);
}

TEST(NoiseRatioConstants, SharpConstantBelowSimpleConstant) {
    for (double eps : {0.001, 0.01, 0.05})
        for (std::size_t d = 1; d <= 10000; d = d < 10 ? d + 1 : d * 3 / 2) {
            const auto c = theorem2_constants(eps, d);
            EXPECT_LE(c.c2_tilde, c.c2 * std::sqrt(static_cast<double>(d)) * (1.0 + 1e-12)) << eps << " " << d;
            EXPECT_GE(c.c2_tilde, c.lower_factor(d) * (1.0 - 1e-12)) << eps << " " << d;
        }
}

TEST(CapBounds, TauZero) {
    const auto b = spherical_cap_bounds(0.0, 10);
    EXPECT_DOUBLE_EQ(b.lower, 1.0 / 12.0);
    EXPECT_DOUBLE_EQ(b.upper, 2.0);
    EXPECT_THROW(spherical_cap_bounds(1.0, 10), Error);
    EXPECT_THROW(cap_bounds_sharp(-0.1, 10), Error);
}

TEST(CapBounds, ContainIntegratedProbability) {
    for (std::size_t d : {3u, 10u, 100u, 1000u})
        for (double tau : {0.0, 0.05, 0.1, 0.3, 0.5, 0.7}) {
            const double p = cap_probability(tau, d);
            const auto simple = spherical_cap_bounds(tau, d);
            EXPECT_LE(simple.lower, p) << tau << " " << d;
            EXPECT_GE(simple.upper, p) << tau << " " << d;
            const auto sharp = cap_bounds_sharp(tau, d);
            EXPECT_LE(sharp.lower, p) << tau << " " << d;
            EXPECT_GE(sharp.upper, p) << tau << " " << d;
        }
}

TEST(CapBounds, IntegrationAgreesWithSampling) {
    RandomStream rng(63);
    const std::size_t d = 10;
    const double tau = 0.3;
    const int n = 100000;
    int hits = 0;
    for (int i = 0; i < n; ++i)
        hits += sample_sphere(d, 1.0, rng)[0] >= tau;
    const double p = cap_probability(tau, d);
    EXPECT_NEAR(static_cast<double>(hits) / n, p, 4.0 * std::sqrt(p * (1.0 - p) / n));
}

TEST(VolumeCoefficient, KnownValues) {
    EXPECT_EQ(volume_match_coefficient(1), 1.0);
    EXPECT_NEAR(volume_match_coefficient(2), std::sqrt(2.0 / std::numbers::pi), 1e-15);
    EXPECT_NEAR(volume_match_asymptote(), 0.48394, 1e-5);
    EXPECT_LT(std::abs(volume_match_coefficient(1000000) - volume_match_asymptote()), 1e-3);
    EXPECT_THROW(volume_match_coefficient(0), Error);
}

TEST(VolumeCoefficient, MatchesBallVolumeRecursion) {
    for (std::size_t d = 1; d <= 400; ++d)
        EXPECT_NEAR(volume_match_coefficient(d), volume_coefficient_oracle(d), 1e-12) << d;
}

TEST(VolumeCoefficient, DecreasesTowardAsymptote) {
    double prev = volume_match_coefficient(1);
    for (std::size_t d = 2; d <= 100000; d = d < 100 ? d + 1 : d * 11 / 10) {
        const double c = volume_match_coefficient(d);
        EXPECT_LT(c, prev) << d;
        EXPECT_GT(c, volume_match_asymptote()) << d;
        prev = c;
    }
}

TEST(PowerSumInequality, HoldsOnRandomVectors) {
    RandomStream rng(64);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t n = 1 + rng.uniform_index(50);
        Vector z(n);
        for (double& v : z)
            v = rng.uniform() < 0.2 ? 0.0 : std::exp(3.0 * rng.normal());
        EXPECT_TRUE(lemma3_check(z, rng.uniform()));
    }
}

TEST(PowerSumInequality, EqualityCasesAndValidation) {
    const Vector equal(7, 2.5);
    for (double g : {0.0, 0.3, 1.0})
        EXPECT_TRUE(lemma3_check(equal, g));
    EXPECT_THROW(lemma3_check(Vector{1.0, -1.0}, 0.5), Error);
    EXPECT_THROW(lemma3_check(Vector{1.0}, 1.5), Error);
}
