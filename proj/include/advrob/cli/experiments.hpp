#pragma once

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "advrob/advrob.hpp"

namespace advrob::cli {

/// Stream tags derived from the master seed. Every command uses the same tag
/// for the same purpose, so e.g. the noise estimate of a running-example
/// dataset is identical whether it comes from `running-example` or `analyze`.
namespace stream {
inline constexpr std::uint64_t attack = 1;
inline constexpr std::uint64_t noise = 2;
inline constexpr std::uint64_t training = 3;
inline constexpr std::uint64_t cross_validation = 4;
inline constexpr std::uint64_t split = 5;
inline constexpr std::uint64_t sphere = 6;
} // namespace stream

inline constexpr std::size_t cv_folds = 5;

/// Exit codes: 0 success, 2 usage, 3 data, 4 numerical.
inline int exit_code(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::invalid_input:
    case ErrorKind::unsupported_method: return 2;
    case ErrorKind::dimension_mismatch:
    case ErrorKind::format:
    case ErrorKind::trivial_classifier: return 3;
    case ErrorKind::bracket:
    case ErrorKind::attack_failure:
    case ErrorKind::numerical: return 4;
    }
    return 4;
}

struct CommonOptions {
    std::uint64_t seed = 0;
    std::size_t threads = 1;
    double epsilon = 0.01;
    std::size_t samples_j = 500;
};

inline NoiseConfig noise_config(const CommonOptions& o) {
    NoiseConfig cfg;
    cfg.epsilon = o.epsilon;
    cfg.samples = o.samples_j;
    cfg.validate();
    return cfg;
}

// ---------------------------------------------------------------------------
// running-example

struct RunningExampleOptions {
    std::vector<std::size_t> dims{4, 25, 100, 2500};
    /// Pixel bias; 0.1/√d per dimension when unset.
    std::optional<double> bias;
};

struct RunningExampleResult {
    std::string curves_csv;
    /// Reference quadratic model at d = 4; empty when 4 is not requested.
    std::string quadratic_csv;
};

inline RunningExampleResult run_running_example(const RunningExampleOptions& opts, const CommonOptions& common) {
    if (opts.dims.empty())
        fail(ErrorKind::invalid_input, "running-example: the list of dimensions is empty");
    for (std::size_t d : opts.dims)
        if (!RunningExampleConfig{d, 0.0}.valid())
            fail(ErrorKind::invalid_input, "running-example: d = " + std::to_string(d) + " is not a perfect square");
    const NoiseConfig noise = noise_config(common);
    const RandomStream root(common.seed);

    RunningExampleResult out;
    std::ostringstream csv;
    csv << "d,rho_adv,rho_unif_hat,t2_lower,t2_upper,t1_bound\n";
    for (std::size_t d : opts.dims) {
        RunningExampleConfig cfg = RunningExampleConfig::with_default_bias(d);
        if (opts.bias)
            cfg.a = *opts.bias;
        const auto ds = gen_running_example(cfg);
        const Classifier f = f_lin_reference(d);
        const auto adv = rho_adv(f, ds, Method::exact, {}, root.child(stream::attack), common.threads);
        const auto unif = rho_unif(f, ds, noise, root.child(stream::noise), common.threads);
        const auto c = theorem2_constants(common.epsilon, d);
        const auto t1 = theorem1_bound(compute_moments(ds), ds.radius(), risk(f, ds), true);
        csv << d << ',' << format_double(adv.rho) << ',' << format_double(unif.rho) << ','
            << format_double(c.lower_factor(d) * adv.rho) << ',' << format_double(c.c2_tilde * adv.rho) << ','
            << format_double(t1.value) << '\n';

        if (d == 4) {
            const QuadraticClassifier q = f_quad_reference();
            const auto qa = rho_adv(q, ds, Method::exact, {}, root.child(stream::attack), common.threads);
            const auto t3 = theorem3_bound(compute_moments(ds), eq13_K(q), ds.radius(), risk(q, ds));
            std::ostringstream qcsv;
            qcsv << "d,a,rho_adv_quad,t3_bound\n"
                 << d << ',' << format_double(cfg.a) << ',' << format_double(qa.rho) << ',' << format_double(t3.value)
                 << '\n';
            out.quadratic_csv = qcsv.str();
        }
    }
    out.curves_csv = csv.str();
    return out;
}

// ---------------------------------------------------------------------------
// analyze

enum class ModelKind { linear_reference, quadratic_reference, linear_svm, kernel_svm };

struct ModelSpec {
    ModelKind kind = ModelKind::linear_svm;
    KernelSpec kernel;
    std::string text = "linear-svm";
};

inline ModelSpec parse_model_spec(const std::string& text) {
    ModelSpec m;
    m.text = text;
    auto number_after = [&](std::size_t prefix) {
        const std::string rest = text.substr(prefix);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(rest, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (rest.empty() || used != rest.size())
            fail(ErrorKind::invalid_input, "--model: cannot parse '" + text + "'");
        return v;
    };
    if (text == "linear") {
        m.kind = ModelKind::linear_reference;
    } else if (text == "quadratic-ref") {
        m.kind = ModelKind::quadratic_reference;
    } else if (text == "linear-svm") {
        m.kind = ModelKind::linear_svm;
    } else if (text.rfind("poly-svm:", 0) == 0) {
        const double q = number_after(9);
        if (q != std::floor(q) || q < 1 || q > 20)
            fail(ErrorKind::invalid_input, "--model: polynomial degree must be an integer in [1, 20]");
        m.kind = ModelKind::kernel_svm;
        m.kernel = KernelSpec::polynomial(static_cast<int>(q));
    } else if (text.rfind("rbf-svm:", 0) == 0) {
        m.kind = ModelKind::kernel_svm;
        m.kernel = KernelSpec::rbf(number_after(8));
    } else {
        fail(ErrorKind::invalid_input,
             "--model: expected linear, quadratic-ref, linear-svm, poly-svm:<q> or rbf-svm:<sigma2>, got '" + text + "'");
    }
    return m;
}

struct AnalyzeOptions {
    /// CSV source; the running example (`running_example`) is used otherwise.
    std::optional<std::string> csv_path;
    CsvOptions csv;
    RunningExampleConfig running_example = RunningExampleConfig::with_default_bias(4);
    std::optional<std::string> test_csv_path;
    double test_fraction = 0.0;
    bool normalize = false;

    ModelSpec model;
    std::optional<std::string> model_file;
    std::optional<double> lambda;
    int epochs = 20;

    /// Robustness is evaluated on the first n training points (0 = all).
    std::size_t robustness_points = 0;
    /// "auto" uses the exact solver where one exists.
    std::string attack = "auto";
};

struct AnalyzeResult {
    nlohmann::ordered_json report;
    std::optional<Classifier> model;
};

namespace detail {

inline nlohmann::ordered_json number(double v) {
    if (!std::isfinite(v))
        return nullptr;
    return v;
}

inline nlohmann::ordered_json to_json(const BoundReport& b) {
    nlohmann::ordered_json j;
    j["theorem"] = b.theorem;
    j["value"] = number(b.value);
    j["vacuous"] = b.vacuous;
    j["empirical_plugin"] = b.empirical_plugin;
    nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
    for (const auto& [k, v] : b.inputs)
        inputs[k] = number(v);
    j["inputs"] = inputs;
    return j;
}

inline nlohmann::ordered_json to_json(const RobustnessReport& r, Method m) {
    std::size_t flagged = 0;
    for (const auto& p : r.per_point)
        flagged += !p.flag.empty();
    nlohmann::ordered_json j;
    j["method"] = to_string(m);
    j["value"] = number(r.rho);
    j["normalized"] = number(r.rho_normalized);
    j["points"] = r.per_point.size();
    j["failures"] = r.failures;
    j["flagged"] = flagged;
    return j;
}

inline LabeledDataset first_points(const LabeledDataset& ds, std::size_t n) {
    if (n == 0 || n >= ds.size())
        return ds;
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i)
        idx[i] = i;
    return LabeledDataset(ds.subset(idx).points(), ds.subset(idx).labels(), ds.radius());
}

} // namespace detail

inline AnalyzeResult run_analyze(const AnalyzeOptions& opts, const CommonOptions& common) {
    const RandomStream root(common.seed);
    const NoiseConfig noise = noise_config(common);
    if (!(opts.test_fraction >= 0.0 && opts.test_fraction < 1.0))
        fail(ErrorKind::invalid_input, "--test-fraction must be in [0, 1)");
    if (opts.test_fraction > 0.0 && opts.test_csv_path)
        fail(ErrorKind::invalid_input, "--test-fraction and --test-csv are mutually exclusive");
    if (opts.attack != "auto" && opts.attack != "exact" && opts.attack != "empirical")
        fail(ErrorKind::invalid_input, "--attack must be auto, exact or empirical");

    LabeledDataset all = opts.csv_path ? load_csv(*opts.csv_path, opts.csv) : gen_running_example(opts.running_example);
    std::optional<LabeledDataset> test;
    if (opts.test_csv_path)
        test = load_csv(*opts.test_csv_path, opts.csv);
    if (opts.normalize) {
        all = normalize_unit(all);
        if (test)
            test = normalize_unit(*test);
    }
    if (test && test->dim() != all.dim())
        fail(ErrorKind::dimension_mismatch, "test set dimension differs from training set dimension");

    LabeledDataset train = all;
    if (opts.test_fraction > 0.0) {
        std::vector<std::size_t> order(all.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            order[i] = i;
        RandomStream s = root.child(stream::split);
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[s.uniform_index(i)]);
        const auto n_test = static_cast<std::size_t>(std::floor(opts.test_fraction * static_cast<double>(all.size())));
        if (n_test == 0 || n_test >= all.size())
            fail(ErrorKind::invalid_input, "--test-fraction leaves an empty training or test set");
        std::vector<std::size_t> tr(order.begin(), order.end() - static_cast<std::ptrdiff_t>(n_test));
        std::vector<std::size_t> te(order.end() - static_cast<std::ptrdiff_t>(n_test), order.end());
        std::sort(tr.begin(), tr.end());
        std::sort(te.begin(), te.end());
        train = all.subset(tr);
        test = all.subset(te);
    }
    if (!train.has_both_classes())
        fail(ErrorKind::format, "training data must contain both classes");

    // model
    std::optional<Classifier> model;
    nlohmann::ordered_json model_json;
    model_json["spec"] = opts.model_file ? "file" : opts.model.text;
    std::optional<double> lambda = opts.lambda;
    bool cv = false;
    if (opts.model_file) {
        model = load_classifier(*opts.model_file);
    } else {
        switch (opts.model.kind) {
        case ModelKind::linear_reference: model = f_lin_reference(train.dim()); break;
        case ModelKind::quadratic_reference:
            if (train.dim() != 4)
                fail(ErrorKind::dimension_mismatch, "quadratic-ref is defined for d = 4 only");
            model = f_quad_reference();
            break;
        case ModelKind::linear_svm:
        case ModelKind::kernel_svm: {
            const Trainer trainer = opts.model.kind == ModelKind::linear_svm
                                        ? linear_svm_trainer(opts.epochs)
                                        : kernel_svm_trainer(opts.model.kernel, opts.epochs);
            if (!lambda) {
                if (train.size() < cv_folds)
                    fail(ErrorKind::invalid_input, "cross-validation needs at least 5 training points; pass --lambda");
                lambda = select_lambda_cv(train, trainer, default_lambda_grid(), cv_folds,
                                          root.child(stream::cross_validation));
                cv = true;
            }
            model = trainer(train, *lambda, root.child(stream::training));
            break;
        }
        }
    }
    const Classifier& f = *model;
    check_same_dim(dim(f), train.dim());
    model_json["kind"] = kind_name(f);
    if (opts.model_file || opts.model.kind == ModelKind::linear_reference ||
        opts.model.kind == ModelKind::quadratic_reference) {
        model_json["lambda"] = nullptr;
        model_json["lambda_from_cv"] = false;
        model_json["epochs"] = nullptr;
    } else {
        model_json["lambda"] = *lambda;
        model_json["lambda_from_cv"] = cv;
        model_json["epochs"] = opts.epochs;
    }
    if (const auto* k = std::get_if<KernelClassifier>(&f))
        model_json["support_vectors"] = k->support_points.size();

    // robustness
    Method method = Method::empirical;
    const bool has_exact = !std::holds_alternative<KernelClassifier>(f);
    if (opts.attack == "exact" || (opts.attack == "auto" && has_exact))
        method = Method::exact;
    const LabeledDataset eval = detail::first_points(train, opts.robustness_points);
    const auto adv = rho_adv(f, eval, method, {}, root.child(stream::attack), common.threads);
    if (adv.failures == eval.size())
        fail(ErrorKind::attack_failure, "the attack found no label flip for any point");
    const auto unif = rho_unif(f, eval, noise, root.child(stream::noise), common.threads);

    const auto moments = compute_moments(train);
    const double train_risk = risk(f, train);

    nlohmann::ordered_json j;
    j["schema"] = "advrob-analyze/1";
    j["seed"] = common.seed;
    nlohmann::ordered_json data;
    data["source"] = opts.csv_path ? *opts.csv_path : "running-example";
    data["dim"] = train.dim();
    data["n_train"] = train.size();
    data["n_test"] = test ? nlohmann::ordered_json(test->size()) : nlohmann::ordered_json(nullptr);
    data["radius"] = train.radius();
    data["normalized"] = opts.normalize;
    data["p1"] = moments.p1;
    data["p_m1"] = moments.p_m1;
    j["dataset"] = data;
    j["model"] = model_json;
    j["train_error"] = train_risk;
    j["test_error"] = test ? nlohmann::ordered_json(risk(f, *test)) : nlohmann::ordered_json(nullptr);
    j["rho_adv"] = detail::to_json(adv, method);
    auto unif_json = detail::to_json(unif, Method::noise);
    unif_json["epsilon"] = noise.epsilon;
    unif_json["samples"] = noise.samples;
    j["rho_unif"] = unif_json;
    j["kappa"] = kappa(train);

    double K = 1.0;
    if (const auto* q = std::get_if<QuadraticClassifier>(&f); q && q->is_nontrivial())
        K = eq13_K(*q);
    const auto dist = distinguishability(moments, K);
    nlohmann::ordered_json dj;
    dj["mean_difference"] = dist.linear;
    dj["second_moment"] = dist.quadratic;
    dj["K"] = K;
    j["distinguishability"] = dj;

    nlohmann::ordered_json bounds = nlohmann::ordered_json::array();
    if (const auto* lin = std::get_if<LinearClassifier>(&f)) {
        auto t1 = detail::to_json(theorem1_bound(moments, train.radius(), train_risk, false));
        t1["precondition_met"] = linear_intercept_admissible(*lin, train.radius());
        bounds.push_back(t1);
        if (lin->b == 0.0 && moments.p1 == moments.p_m1) {
            auto t1b = detail::to_json(theorem1_bound(moments, train.radius(), train_risk, true));
            t1b["precondition_met"] = true;
            bounds.push_back(t1b);
        }
        auto l1 = detail::to_json(lemma1_bound(f, train));
        l1["precondition_met"] = true;
        bounds.push_back(l1);
    } else if (const auto* q = std::get_if<QuadraticClassifier>(&f); q && q->is_nontrivial()) {
        auto t3 = detail::to_json(theorem3_bound(moments, K, train.radius(), train_risk));
        t3["precondition_met"] = true;
        bounds.push_back(t3);
        auto l1 = detail::to_json(lemma1_bound(f, train));
        l1["precondition_met"] = true;
        bounds.push_back(l1);
    }
    j["bounds"] = bounds;
    return {j, model};
}

// ---------------------------------------------------------------------------
// concentration

struct ConcentrationOptions {
    std::vector<std::size_t> dims{10, 100, 1000};
    std::vector<double> taus{0.05, 0.1, 0.3, 0.5};
    std::size_t samples = 100000;
};

struct CapEstimate {
    std::size_t d = 0;
    double tau = 0.0;
    std::size_t samples = 0;
    double p_hat = 0.0;
    double std_err = 0.0;
    CapBounds simple;
    CapBounds sharp;
    bool tail_regime = false;
};

inline constexpr std::size_t sphere_chunk = 4096;

/// Monte-Carlo estimate of P(u₁ ≥ τ) for u uniform on the unit sphere, with
/// the matching bounds. Chunk c of dimension d draws from
/// rng.child(d).child(c), independent of the thread count.
inline std::vector<CapEstimate> estimate_caps(const ConcentrationOptions& opts, const RandomStream& rng,
                                              std::size_t threads) {
    if (opts.dims.empty() || opts.taus.empty())
        fail(ErrorKind::invalid_input, "concentration: dimension and tau lists must be nonempty");
    if (opts.samples < 1)
        fail(ErrorKind::invalid_input, "concentration: need at least one sample");
    for (double t : opts.taus)
        if (!(t >= 0.0 && t < 1.0))
            fail(ErrorKind::invalid_input, "concentration: tau must lie in [0, 1)");
    for (std::size_t d : opts.dims)
        if (d < 1)
            fail(ErrorKind::invalid_input, "concentration: d must be >= 1");

    const std::size_t chunks = (opts.samples + sphere_chunk - 1) / sphere_chunk;
    std::vector<CapEstimate> out;
    for (std::size_t d : opts.dims) {
        const RandomStream dim_stream = rng.child(d);
        const auto counts = parallel_map(chunks, threads, [&](std::size_t c) {
            RandomStream s = dim_stream.child(c);
            const std::size_t n = std::min(sphere_chunk, opts.samples - c * sphere_chunk);
            std::vector<std::size_t> hits(opts.taus.size(), 0);
            Vector u(d);
            for (std::size_t i = 0; i < n; ++i) {
                sample_sphere(u, 1.0, s);
                for (std::size_t k = 0; k < opts.taus.size(); ++k)
                    hits[k] += u[0] >= opts.taus[k];
            }
            return hits;
        });
        for (std::size_t k = 0; k < opts.taus.size(); ++k) {
            std::size_t total = 0;
            for (const auto& h : counts)
                total += h[k];
            CapEstimate e;
            e.d = d;
            e.tau = opts.taus[k];
            e.samples = opts.samples;
            e.p_hat = static_cast<double>(total) / static_cast<double>(opts.samples);
            e.std_err = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(opts.samples));
            e.simple = spherical_cap_bounds(e.tau, d);
            e.sharp = cap_bounds_sharp(e.tau, d);
            e.tail_regime = e.tau >= std::sqrt(2.0 / static_cast<double>(d));
            out.push_back(e);
        }
    }
    return out;
}

inline std::string run_concentration(const ConcentrationOptions& opts, const CommonOptions& common) {
    const auto rows = estimate_caps(opts, RandomStream(common.seed).child(stream::sphere), common.threads);
    std::ostringstream csv;
    csv << "d,tau,samples,p_hat,std_err,cap_lower,cap_upper,sharp_lower,sharp_upper,tail_regime\n";
    for (const auto& e : rows)
        csv << e.d << ',' << format_double(e.tau) << ',' << e.samples << ',' << format_double(e.p_hat) << ','
            << format_double(e.std_err) << ',' << format_double(e.simple.lower) << ','
            << format_double(e.simple.upper) << ',' << format_double(e.sharp.lower) << ','
            << format_double(e.sharp.upper) << ',' << (e.tail_regime ? 1 : 0) << '\n';
    return csv.str();
}

// ---------------------------------------------------------------------------
// volume

inline std::vector<std::size_t> default_volume_dims() {
    return {1, 2, 3, 5, 10, 20, 50, 100, 1000, 10000, 100000, 1000000};
}

inline std::string run_volume(const std::vector<std::size_t>& dims) {
    if (dims.empty())
        fail(ErrorKind::invalid_input, "volume: the list of dimensions is empty");
    std::ostringstream csv;
    csv << "d,c,asymptote\n";
    const double asymptote = volume_match_asymptote();
    for (std::size_t d : dims)
        csv << d << ',' << format_double(volume_match_coefficient(d)) << ',' << format_double(asymptote) << '\n';
    return csv.str();
}

} // namespace advrob::cli
