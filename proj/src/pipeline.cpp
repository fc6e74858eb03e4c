#include "bioblend/pipeline.hpp"

#include <utility>

#include "bioblend/errors.hpp"
#include "bioblend/noise_blender.hpp"
#include "bioblend/parallel.hpp"
#include "bioblend/polynomial_blender.hpp"

namespace bioblend {

std::vector<std::string> validate_config(const GeneratorConfig& c) {
    std::vector<std::string> errors;
    const auto complain = [&](std::string msg) { errors.push_back(std::move(msg)); };

    if (c.n_labels < 2) complain("n-labels must be >= 2");
    if (c.n_samples_per_label < 1) complain("n-samples-per-label must be >= 1");
    if (c.n_true_features < 1) complain("n-true-features must be >= 1");
    const long n_labels = static_cast<long>(c.n_labels);
    if (c.average_consecutive_locations < 0 || c.average_consecutive_locations > n_labels)
        complain("average-consecutive-locations must be in [0, n-labels]");
    if (c.average_shared_locations < 0 || c.average_shared_locations > n_labels)
        complain("average-shared-locations must be in [0, n-labels]");
    if (c.n_features_out < 1) complain("n-features-out must be >= 1");
    if (!(c.usefulness_min > 0.0 && c.usefulness_min <= 1.0))
        complain("usefulness-min must be in (0, 1]");
    if (!(c.usefulness_max > 0.0 && c.usefulness_max <= 1.0))
        complain("usefulness-max must be in (0, 1]");
    if (c.usefulness_min > c.usefulness_max) complain("usefulness-min must be <= usefulness-max");
    if (!(c.envelope_scale > 0.0)) complain("envelope-scale must be > 0");
    if (!(c.scale_jitter >= 0.0 && c.scale_jitter < 1.0)) complain("scale-jitter must be in [0, 1)");
    if (!(c.fake_scale > 0.0)) complain("fake-scale must be > 0");
    if (c.polynomial_degree < 1) complain("polynomial-degree must be >= 1");
    if (!(c.blend_concentration > 0.0)) complain("blend-concentration must be > 0");
    if (c.blend_k_min < 1) complain("blend-k-min must be >= 1");
    if (c.blend_k_min > c.blend_k_max) complain("blend-k-min must be <= blend-k-max");
    if (!(c.noise_alpha_min >= 0.0 && c.noise_alpha_min <= 1.0))
        complain("noise-alpha-min must be in [0, 1]");
    if (!(c.noise_alpha_max >= 0.0 && c.noise_alpha_max <= 1.0))
        complain("noise-alpha-max must be in [0, 1]");
    if (c.noise_alpha_min > c.noise_alpha_max)
        complain("noise-alpha-min must be <= noise-alpha-max");

    if (c.n_true_features >= 1 && c.polynomial_degree >= 1) {
        try {
            const std::uint64_t f_trans = count_transitional(c.f_hidden(), c.polynomial_degree);
            if (c.blend_k_max > f_trans)
                complain("blend-k-max exceeds the transitional feature count " +
                         std::to_string(f_trans));
        } catch (const ArgumentError& e) {
            complain(e.what());
        }
    }
    return errors;
}

DatasetBundle run_pipeline(const GeneratorConfig& config, const ProgressFn& progress) {
    const std::vector<std::string> errors = validate_config(config);
    if (!errors.empty()) {
        std::string joined = "invalid configuration:";
        for (const std::string& e : errors) joined += "\n  - " + e;
        throw ConfigError(joined);
    }
    const auto report = [&](std::string_view msg) {
        if (progress) progress(msg);
    };
    const std::size_t threads = resolve_threads(config.threads);

    RandomStream root(config.seed);
    RandomStream usefulness_jitter = root.fork("usefulness-jitter");
    RandomStream locations = root.fork("locations");
    RandomStream sampler = root.fork("sampler");
    RandomStream weights_stream = root.fork("weights");
    RandomStream noise_stream = root.fork("noise");

    report("planning locations");
    std::vector<double> usefulness =
        make_usefulness(config.scheme(), config.n_true_features, config.n_fake_features);
    LocationPlan plan = make_locations(
        locations, config.envelope(), config.n_labels, config.n_true_features,
        config.n_fake_features, config.average_consecutive_locations,
        config.average_shared_locations, std::move(usefulness));

    report("sampling hidden features");
    HiddenMatrix hidden = sample_hidden(usefulness_jitter, sampler, plan, config.sampler(),
                                        config.envelope());
    normalize_columns(hidden.values);

    report("expanding polynomial features");
    const std::uint64_t f_trans = count_transitional(config.f_hidden(), config.polynomial_degree);
    const bool materialize =
        static_cast<std::uint64_t>(hidden.values.rows()) * f_trans * sizeof(double) <=
        config.max_transitional_bytes;
    const TransitionalSource transitional(hidden.values, config.polynomial_degree, materialize);

    report("drawing blend weights");
    BlendWeights weights =
        make_weights(weights_stream, config.n_features_out, transitional.cols(),
                     config.blend_k_min, config.blend_k_max, config.blend_concentration);

    report("blending visible features");
    BlendResult blended = blend(transitional, weights, BlendMode{config.blending_mode, {}}, threads);

    report("adding noise");
    NoiseResult noise = add_noise(noise_stream, blended.visible, config.noise(), threads);

    DatasetBundle bundle;
    bundle.visible = std::move(blended.visible);
    bundle.labels = std::move(hidden.labels);
    if (config.store_hidden) bundle.hidden = std::move(hidden.values);
    bundle.usefulness = std::move(plan.usefulness);
    bundle.true_mask = std::move(plan.true_mask);
    bundle.alpha = std::move(noise.alpha);
    bundle.weights = std::move(weights);
    bundle.config = config;
    bundle.config.noise_mode = config.resolved_noise_mode();
    bundle.positivity_shift = blended.positivity_shift;
    bundle.noise_positivity_shift = noise.positivity_shift;
    return bundle;
}

}  // namespace bioblend
