#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "bioblend/dataset_io.hpp"
#include "bioblend/errors.hpp"
#include "bioblend/eval_harness.hpp"
#include "bioblend/pipeline.hpp"
#include "bioblend/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitInternal = 4;

struct GenerateArgs {
    bioblend::GeneratorConfig config;
    std::string blending_mode = "linear";
    std::string usefulness_scheme = "linear";
    std::string sampling_distribution = "normal";
    std::string envelope = "normal";
    std::string noise_mode = "auto";
    std::string output;
    std::string csv_dir;
    bool no_noise = false;
    bool dry_run = false;
    bool quiet = false;
};

void add_generate_options(CLI::App& cmd, GenerateArgs& a) {
    bioblend::GeneratorConfig& c = a.config;
    cmd.add_option("--n-labels", c.n_labels, "Number of classes")->capture_default_str();
    cmd.add_option("--n-samples-per-label", c.n_samples_per_label, "Samples per class")
        ->capture_default_str();
    cmd.add_option("--n-true-features", c.n_true_features, "Class-informative hidden features")
        ->capture_default_str();
    cmd.add_option("--n-fake-features", c.n_fake_features, "Pure-noise hidden features")
        ->capture_default_str();
    cmd.add_option("--average-consecutive-locations", c.average_consecutive_locations,
                   "Ordering extent: average length of sorted location runs (0..n-labels)")
        ->capture_default_str();
    cmd.add_option("--average-shared-locations", c.average_shared_locations,
                   "Sharing extent: average classes sharing one location (0..n-labels)")
        ->capture_default_str();
    cmd.add_option("--n-features-out", c.n_features_out, "Number of visible features")
        ->capture_default_str();
    cmd.add_option("--blending-mode", a.blending_mode, "linear|logarithmic")
        ->capture_default_str();
    cmd.add_option("--usefulness-scheme", a.usefulness_scheme, "linear|exponential|longtailed")
        ->capture_default_str();
    cmd.add_option("--usefulness-min", c.usefulness_min, "Smallest true-feature usefulness (0,1]")
        ->capture_default_str();
    cmd.add_option("--usefulness-max", c.usefulness_max, "Largest true-feature usefulness (0,1]")
        ->capture_default_str();
    cmd.add_option("--sampling-distribution", a.sampling_distribution, "normal|uniform")
        ->capture_default_str();
    cmd.add_option("--envelope", a.envelope, "Location envelope: normal|uniform")
        ->capture_default_str();
    cmd.add_option("--envelope-location", c.envelope_location, "Envelope location")
        ->capture_default_str();
    cmd.add_option("--envelope-scale", c.envelope_scale, "Envelope scale (> 0)")
        ->capture_default_str();
    cmd.add_option("--scale-jitter", c.scale_jitter, "Half-width of the scale multiplier [0,1)")
        ->capture_default_str();
    cmd.add_option("--fake-scale", c.fake_scale, "Sampling scale of fake features (> 0)")
        ->capture_default_str();
    cmd.add_option("--polynomial-degree", c.polynomial_degree, "Maximum monomial degree d")
        ->capture_default_str();
    cmd.add_option("--blend-k-min", c.blend_k_min, "Fewest transitional features per visible one")
        ->capture_default_str();
    cmd.add_option("--blend-k-max", c.blend_k_max, "Most transitional features per visible one")
        ->capture_default_str();
    cmd.add_option("--blend-concentration", c.blend_concentration,
                   "Dirichlet concentration of the blend weights")
        ->capture_default_str();
    cmd.add_flag("--no-noise", a.no_noise, "Disable the noise stage entirely");
    cmd.add_option("--noise-mode", a.noise_mode, "auto|linear|logarithmic (auto follows blending)")
        ->capture_default_str();
    cmd.add_option("--noise-alpha-min", c.noise_alpha_min, "Smallest signal weight [0,1]")
        ->capture_default_str();
    cmd.add_option("--noise-alpha-max", c.noise_alpha_max, "Largest signal weight [0,1]")
        ->capture_default_str();
    cmd.add_option("--seed", c.seed, "Generator seed")
        ->envname("BIOBLEND_SEED")
        ->capture_default_str();
    cmd.add_flag("--store-hidden", c.store_hidden, "Also store the hidden feature matrix");
    cmd.add_option("--threads", c.threads, "Worker threads (0 = hardware)")
        ->capture_default_str();
    cmd.add_option("--output,-o", a.output, "Output HDF5 path");
    cmd.add_option("--export-csv", a.csv_dir, "Also export CSV files into this directory");
    cmd.add_flag("--dry-run", a.dry_run, "Print the resolved config and derived sizes, then stop");
    cmd.add_flag("--quiet", a.quiet, "Suppress progress output");
}

void apply_string_options(GenerateArgs& a) {
    a.config.blending_mode = bioblend::blend_mode_from_string(a.blending_mode);
    a.config.usefulness_scheme = bioblend::scheme_from_string(a.usefulness_scheme);
    a.config.sampling_distribution = bioblend::sample_dist_from_string(a.sampling_distribution);
    a.config.envelope_kind = bioblend::envelope_from_string(a.envelope);
    if (a.noise_mode != "auto")
        a.config.noise_mode = bioblend::noise_mode_from_string(a.noise_mode);
    if (a.no_noise) a.config.noise_enabled = false;
}

std::string human_bytes(double bytes) {
    const char* units[] = {"B", "KiB", "MiB", "GiB"};
    int u = 0;
    while (bytes >= 1024.0 && u < 3) {
        bytes /= 1024.0;
        ++u;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f %s", bytes, units[u]);
    return buf;
}

void print_dry_run(const bioblend::GeneratorConfig& c) {
    const std::uint64_t f_trans =
        bioblend::count_transitional(c.f_hidden(), c.polynomial_degree);
    const double feature_bytes =
        static_cast<double>(c.n_samples()) * static_cast<double>(c.n_features_out) * 8.0;
    std::cout << "resolved configuration:\n"
              << "  n-labels                       " << c.n_labels << "\n"
              << "  n-samples-per-label            " << c.n_samples_per_label << "\n"
              << "  n-true-features                " << c.n_true_features << "\n"
              << "  n-fake-features                " << c.n_fake_features << "\n"
              << "  average-consecutive-locations  " << c.average_consecutive_locations << "\n"
              << "  average-shared-locations       " << c.average_shared_locations << "\n"
              << "  n-features-out                 " << c.n_features_out << "\n"
              << "  blending-mode                  " << bioblend::to_string(c.blending_mode) << "\n"
              << "  usefulness-scheme              " << bioblend::to_string(c.usefulness_scheme)
              << " [" << c.usefulness_min << ", " << c.usefulness_max << "]\n"
              << "  sampling-distribution          "
              << bioblend::to_string(c.sampling_distribution) << "\n"
              << "  envelope                       " << bioblend::to_string(c.envelope_kind)
              << " (location " << c.envelope_location << ", scale " << c.envelope_scale << ")\n"
              << "  scale-jitter                   " << c.scale_jitter << "\n"
              << "  fake-scale                     " << c.fake_scale << "\n"
              << "  polynomial-degree              " << c.polynomial_degree << "\n"
              << "  blend-k                        [" << c.blend_k_min << ", " << c.blend_k_max
              << "] concentration " << c.blend_concentration << "\n"
              << "  noise                          "
              << (c.noise_enabled ? bioblend::to_string(c.resolved_noise_mode()) : "off")
              << " alpha [" << c.noise_alpha_min << ", " << c.noise_alpha_max << "]\n"
              << "  seed                           " << c.seed << "\n"
              << "  store-hidden                   " << (c.store_hidden ? "yes" : "no") << "\n"
              << "derived quantities:\n"
              << "  samples                        " << c.n_samples() << "\n"
              << "  f-hidden                       " << c.f_hidden() << "\n"
              << "  f-trans                        " << f_trans << "\n"
              << "  feature matrix size            " << human_bytes(feature_bytes) << "\n";
}

int run_generate(GenerateArgs& a) {
    apply_string_options(a);
    std::vector<std::string> errors = bioblend::validate_config(a.config);
    if (!a.dry_run && a.output.empty()) errors.push_back("--output is required");
    if (!errors.empty()) {
        std::cerr << "error: invalid configuration:\n";
        for (const std::string& e : errors) std::cerr << "  - " << e << "\n";
        return kExitConfig;
    }
    if (a.dry_run) {
        print_dry_run(a.config);
        return kExitOk;
    }
    const bioblend::ProgressFn progress = [&](std::string_view msg) {
        if (!a.quiet) std::cerr << "[bioblend] " << msg << "\n";
    };
    const bioblend::DatasetBundle bundle = bioblend::run_pipeline(a.config, progress);
    progress("writing " + a.output);
    bioblend::write_hdf5(bundle, a.output);
    if (!a.csv_dir.empty()) {
        progress("exporting CSV to " + a.csv_dir);
        bioblend::export_csv(bundle, a.csv_dir);
    }
    if (!a.quiet)
        std::cerr << "[bioblend] wrote " << a.output << " (" << bundle.visible.rows() << " x "
                  << bundle.visible.cols() << ")\n";
    return kExitOk;
}

struct ValidateArgs {
    std::string input;
    std::vector<std::size_t> k_list{10, 25, 50, 100, 200, 400, 800};
    std::size_t folds = 4;
    std::vector<std::size_t> neighbors{1, 5};
    std::uint64_t seed = 0;
    std::size_t threads = 0;
    std::string report_path;
};

nlohmann::json config_json(const bioblend::GeneratorConfig& c) {
    return {
        {"seed", c.seed},
        {"n_labels", c.n_labels},
        {"n_samples_per_label", c.n_samples_per_label},
        {"n_true_features", c.n_true_features},
        {"n_fake_features", c.n_fake_features},
        {"average_consecutive_locations", c.average_consecutive_locations},
        {"average_shared_locations", c.average_shared_locations},
        {"n_features_out", c.n_features_out},
        {"blending_mode", bioblend::to_string(c.blending_mode)},
        {"usefulness_scheme", bioblend::to_string(c.usefulness_scheme)},
        {"usefulness_min", c.usefulness_min},
        {"usefulness_max", c.usefulness_max},
        {"sampling_distribution", bioblend::to_string(c.sampling_distribution)},
        {"envelope_kind", bioblend::to_string(c.envelope_kind)},
        {"envelope_location", c.envelope_location},
        {"envelope_scale", c.envelope_scale},
        {"scale_jitter", c.scale_jitter},
        {"fake_scale", c.fake_scale},
        {"polynomial_degree", c.polynomial_degree},
        {"blend_k_min", c.blend_k_min},
        {"blend_k_max", c.blend_k_max},
        {"blend_concentration", c.blend_concentration},
        {"noise_enabled", c.noise_enabled},
        {"noise_mode", bioblend::to_string(c.resolved_noise_mode())},
        {"noise_alpha_min", c.noise_alpha_min},
        {"noise_alpha_max", c.noise_alpha_max},
        {"store_hidden", c.store_hidden},
    };
}

int run_validate(const ValidateArgs& a) {
    const bioblend::DatasetBundle bundle = bioblend::read_hdf5(a.input);
    std::cerr << "[bioblend] scoring " << bundle.visible.rows() << " x "
              << bundle.visible.cols() << " features\n";
    const bioblend::ScreeningReport report = bioblend::screening_curve(
        bundle, a.k_list, a.folds, a.neighbors, a.seed, a.threads);
    for (std::size_t k : a.k_list) {
        if (k > bundle.visible.cols()) {
            std::cerr << "[bioblend] note: k values above " << bundle.visible.cols()
                      << " features were clipped\n";
            break;
        }
    }

    std::cout << "screening validation of " << a.input << " (folds=" << a.folds << ")\n";
    std::cout << "  k-best   ";
    for (std::size_t nb : report.neighbor_list) std::cout << " acc@" << nb << "   ";
    std::cout << "\n";
    char buf[32];
    for (std::size_t ki = 0; ki < report.k_list.size(); ++ki) {
        std::snprintf(buf, sizeof(buf), "  %-8zu ", report.k_list[ki]);
        std::cout << buf;
        for (std::size_t ni = 0; ni < report.neighbor_list.size(); ++ni) {
            std::snprintf(buf, sizeof(buf), " %.4f  ", report.screened_accuracy[ni][ki]);
            std::cout << buf;
        }
        std::cout << "\n";
    }
    std::cout << "  full     ";
    for (double v : report.unreduced_accuracy) {
        std::snprintf(buf, sizeof(buf), " %.4f  ", v);
        std::cout << buf;
    }
    std::cout << "\n";
    if (!report.true_hidden_accuracy.empty()) {
        std::cout << "  true     ";
        for (double v : report.true_hidden_accuracy) {
            std::snprintf(buf, sizeof(buf), " %.4f  ", v);
            std::cout << buf;
        }
        std::cout << "\n";
    }
    std::cout << "best screened " << report.best_screened() << ", best unreduced "
              << report.best_unreduced() << "\n";

    if (!a.report_path.empty()) {
        nlohmann::json j;
        j["input"] = a.input;
        j["folds"] = a.folds;
        j["neighbors"] = report.neighbor_list;
        j["k_list"] = report.k_list;
        j["f_scores"] = report.f_scores;
        nlohmann::json screened = nlohmann::json::object();
        nlohmann::json unreduced = nlohmann::json::object();
        for (std::size_t ni = 0; ni < report.neighbor_list.size(); ++ni) {
            const std::string key = std::to_string(report.neighbor_list[ni]);
            nlohmann::json per_k = nlohmann::json::object();
            for (std::size_t ki = 0; ki < report.k_list.size(); ++ki)
                per_k[std::to_string(report.k_list[ki])] = report.screened_accuracy[ni][ki];
            screened[key] = per_k;
            unreduced[key] = report.unreduced_accuracy[ni];
        }
        j["screened_accuracy"] = screened;
        j["unreduced_accuracy"] = unreduced;
        if (report.true_hidden_accuracy.empty()) {
            j["true_hidden_accuracy"] = nullptr;
        } else {
            nlohmann::json truth = nlohmann::json::object();
            for (std::size_t ni = 0; ni < report.neighbor_list.size(); ++ni)
                truth[std::to_string(report.neighbor_list[ni])] =
                    report.true_hidden_accuracy[ni];
            j["true_hidden_accuracy"] = truth;
        }
        j["best"] = {{"screened", report.best_screened()},
                     {"unreduced", report.best_unreduced()}};
        if (!report.true_hidden_accuracy.empty())
            j["best"]["true_hidden"] = report.best_true_hidden();
        j["config"] = config_json(bundle.config);

        std::ofstream out(a.report_path);
        if (!out) throw bioblend::IoError("cannot open " + a.report_path);
        out << j.dump(2) << "\n";
        if (!out) throw bioblend::IoError("failed writing " + a.report_path);
        std::cerr << "[bioblend] report written to " << a.report_path << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic generator of high dimensional multi-class feature spaces"};
    app.set_version_flag("--version", bioblend::kVersionString);
    app.require_subcommand(1);

    GenerateArgs gen;
    CLI::App* generate = app.add_subcommand("generate", "Generate a dataset as HDF5");
    add_generate_options(*generate, gen);

    ValidateArgs val;
    CLI::App* validate =
        app.add_subcommand("validate", "Screening statistics and kNN check of a dataset");
    validate->add_option("--input,-i", val.input, "Dataset written by generate")->required();
    validate->add_option("--k-list", val.k_list, "Comma-separated feature counts to screen to")
        ->delimiter(',')
        ->capture_default_str();
    validate->add_option("--folds", val.folds, "Cross-validation folds")->capture_default_str();
    validate->add_option("--neighbors", val.neighbors, "kNN neighbor counts")
        ->delimiter(',')
        ->capture_default_str();
    validate->add_option("--seed", val.seed, "Fold shuffle seed")->capture_default_str();
    validate->add_option("--threads", val.threads, "Worker threads (0 = hardware)")
        ->capture_default_str();
    validate->add_option("--report", val.report_path, "Write a JSON report here");

    std::string export_input, export_output;
    CLI::App* exporter = app.add_subcommand("export", "Export a dataset to CSV files");
    exporter->add_option("--input,-i", export_input, "Dataset written by generate")->required();
    exporter->add_option("--output,-o", export_output, "Directory for the CSV files")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (generate->parsed()) return run_generate(gen);
        if (validate->parsed()) return run_validate(val);
        const bioblend::DatasetBundle bundle = bioblend::read_hdf5(export_input);
        bioblend::export_csv(bundle, export_output);
        std::cerr << "[bioblend] CSV files written to " << export_output << "\n";
        return kExitOk;
    } catch (const bioblend::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const bioblend::ArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const bioblend::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const bioblend::FormatError& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
