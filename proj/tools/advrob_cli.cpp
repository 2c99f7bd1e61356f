#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "advrob/cli/experiments.hpp"

using namespace advrob;
using namespace advrob::cli;

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        fail(ErrorKind::format, "cannot write '" + path + "'");
    out << content;
    if (!out)
        fail(ErrorKind::format, "error while writing '" + path + "'");
}

// results.csv -> results_quad.csv
std::string companion_path(const std::string& path, const std::string& suffix) {
    const std::filesystem::path p(path);
    auto name = p.stem().string() + suffix + p.extension().string();
    return (p.parent_path() / name).string();
}

// Every command accepts the common flags; commands ignore the ones they do
// not use.
void add_common(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--seed", o.seed, "Master seed")->capture_default_str();
    cmd->add_option("--threads", o.threads, "Worker threads (results do not depend on it)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--epsilon", o.epsilon, "Allowed flip fraction for noise robustness")->capture_default_str();
    cmd->add_option("--samples-j", o.samples_j, "Random directions per point")->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adversarial and random-noise robustness of binary classifiers"};
    app.require_subcommand(1);

    CommonOptions common;
    common.threads = default_thread_count();

    // running-example
    auto* re = app.add_subcommand("running-example", "Robustness curves of the linear reference model");
    RunningExampleOptions re_opts;
    std::string re_out = "running_example.csv";
    double re_bias = -1.0;
    add_common(re, common);
    re->add_option("--d", re_opts.dims, "Dimensions (perfect squares)")->delimiter(',')->capture_default_str();
    re->add_option("--a", re_bias, "Pixel bias (default 0.1/sqrt(d))");
    re->add_option("--out", re_out, "Output CSV")->capture_default_str();

    // analyze
    auto* an = app.add_subcommand("analyze", "Train or load a model and report robustness, bounds and statistics");
    AnalyzeOptions an_opts;
    std::string an_out = "analyze.json";
    std::string model_text = "linear-svm";
    std::string save_model;
    std::size_t re_dim = 4;
    double an_bias = -1.0;
    double lambda = 0.0;
    std::string csv_path, test_csv, model_file;
    add_common(an, common);
    an->add_option("--csv", csv_path, "Training data (running example when omitted)");
    an->add_option("--label-col", an_opts.csv.label_column, "Label column index")->capture_default_str();
    an->add_option("--pos-label", an_opts.csv.pos_label, "Label text of class +1")->capture_default_str();
    an->add_option("--neg-label", an_opts.csv.neg_label, "Label text of class -1")->capture_default_str();
    an->add_flag("--header", an_opts.csv.has_header, "CSV files start with a header row");
    an->add_flag("--normalize", an_opts.normalize, "Scale every point to unit norm");
    an->add_option("--test-csv", test_csv, "Separate test data");
    an->add_option("--test-fraction", an_opts.test_fraction, "Hold out this fraction as test set")
        ->capture_default_str();
    an->add_option("--d", re_dim, "Running-example dimension when no CSV is given")->capture_default_str();
    an->add_option("--a", an_bias, "Running-example pixel bias (default 0.1/sqrt(d))");
    an->add_option("--model", model_text, "linear | quadratic-ref | linear-svm | poly-svm:<q> | rbf-svm:<sigma2>")
        ->capture_default_str();
    an->add_option("--model-file", model_file, "Load a saved model instead of training");
    an->add_option("--save-model", save_model, "Write the trained model to this file");
    an->add_option("--lambda", lambda, "Regularization weight (cross-validated when omitted)");
    an->add_option("--epochs", an_opts.epochs, "Training epochs")->check(CLI::PositiveNumber)->capture_default_str();
    an->add_option("--robustness-points", an_opts.robustness_points,
                   "Evaluate robustness on the first n training points (0 = all)")
        ->capture_default_str();
    an->add_option("--attack", an_opts.attack, "auto | exact | empirical")->capture_default_str();
    an->add_option("--out", an_out, "Output JSON")->capture_default_str();

    // concentration
    auto* co = app.add_subcommand("concentration", "Monte-Carlo spherical cap probabilities against their bounds");
    ConcentrationOptions co_opts;
    std::string co_out = "concentration.csv";
    add_common(co, common);
    co->add_option("--d", co_opts.dims, "Dimensions")->delimiter(',')->capture_default_str();
    co->add_option("--tau", co_opts.taus, "Cap heights")->delimiter(',')->capture_default_str();
    co->add_option("--samples", co_opts.samples, "Sphere samples per dimension")->capture_default_str();
    co->add_option("--out", co_out, "Output CSV")->capture_default_str();

    // volume
    auto* vo = app.add_subcommand("volume", "Volume-matching coefficient c(d)");
    std::vector<std::size_t> vo_dims = default_volume_dims();
    std::string vo_out = "volume.csv";
    add_common(vo, common);
    vo->add_option("--d", vo_dims, "Dimensions")->delimiter(',')->capture_default_str();
    vo->add_option("--out", vo_out, "Output CSV")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (re->parsed()) {
            if (re->count("--a"))
                re_opts.bias = re_bias;
            if (re->count("--d") && re_opts.dims.empty())
                fail(ErrorKind::invalid_input, "running-example: the list of dimensions is empty");
            const auto r = run_running_example(re_opts, common);
            write_file(re_out, r.curves_csv);
            if (!r.quadratic_csv.empty())
                write_file(companion_path(re_out, "_quad"), r.quadratic_csv);
        } else if (an->parsed()) {
            if (!csv_path.empty())
                an_opts.csv_path = csv_path;
            if (!test_csv.empty())
                an_opts.test_csv_path = test_csv;
            if (!model_file.empty())
                an_opts.model_file = model_file;
            if (an->count("--lambda"))
                an_opts.lambda = lambda;
            an_opts.running_example = RunningExampleConfig::with_default_bias(re_dim);
            if (an->count("--a"))
                an_opts.running_example.a = an_bias;
            an_opts.model = parse_model_spec(model_text);
            const auto r = run_analyze(an_opts, common);
            write_file(an_out, r.report.dump(2) + "\n");
            if (!save_model.empty())
                save_classifier(save_model, *r.model);
        } else if (co->parsed()) {
            write_file(co_out, run_concentration(co_opts, common));
        } else if (vo->parsed()) {
            write_file(vo_out, run_volume(vo_dims));
        }
    } catch (const Error& e) {
        std::cerr << "advrob: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "advrob: " << e.what() << '\n';
        return 4;
    }
    return 0;
}
