#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "bioblend/feature_blender.hpp"
#include "bioblend/feature_sampler.hpp"
#include "bioblend/location_factory.hpp"
#include "bioblend/noise_blender.hpp"

namespace bioblend {

/// Full parameter set for one generation run. Field names follow the CLI
/// flags; defaults are embedded in the output file so datasets are
/// self-describing.
struct GeneratorConfig {
    std::size_t n_labels = 10;
    std::size_t n_samples_per_label = 32;
    std::size_t n_true_features = 10;
    std::size_t n_fake_features = 30;
    long average_consecutive_locations = 2;  // ordering extent, in [0, n_labels]
    long average_shared_locations = 3;       // sharing extent, in [0, n_labels]
    std::size_t n_features_out = 1000;
    BlendModeKind blending_mode = BlendModeKind::linear;

    SchemeKind usefulness_scheme = SchemeKind::linear;
    double usefulness_min = 0.5;
    double usefulness_max = 0.95;

    SampleDist sampling_distribution = SampleDist::normal;
    EnvelopeKind envelope_kind = EnvelopeKind::normal;
    double envelope_location = 0.0;
    double envelope_scale = 1.0;
    double scale_jitter = 0.1;
    double fake_scale = 2.0;

    std::size_t polynomial_degree = 2;
    std::size_t blend_k_min = 2;
    std::size_t blend_k_max = 4;
    double blend_concentration = 1.0;

    bool noise_enabled = true;
    std::optional<NoiseMode> noise_mode;  // unset: follow blending_mode
    double noise_alpha_min = 0.0;
    double noise_alpha_max = 1.0;

    std::uint64_t seed = 0;
    bool store_hidden = false;
    std::size_t threads = 0;  // 0: hardware concurrency

    /// Transitional matrices larger than this stream column-by-column
    /// instead of being materialized; the output is identical either way.
    std::size_t max_transitional_bytes = std::size_t{1} << 30;

    std::size_t f_hidden() const { return n_true_features + n_fake_features; }
    std::size_t n_samples() const { return n_labels * n_samples_per_label; }

    EnvelopeSpec envelope() const { return {envelope_kind, envelope_location, envelope_scale}; }
    UsefulnessScheme scheme() const { return {usefulness_scheme, usefulness_min, usefulness_max}; }
    SamplerSpec sampler() const {
        return {sampling_distribution, n_samples_per_label, scale_jitter, fake_scale};
    }
    NoiseMode resolved_noise_mode() const {
        if (noise_mode) return *noise_mode;
        return blending_mode == BlendModeKind::logarithmic ? NoiseMode::logarithmic
                                                           : NoiseMode::linear;
    }
    NoiseSpec noise() const {
        return {noise_enabled, resolved_noise_mode(), noise_alpha_min, noise_alpha_max, {}};
    }
};

std::string to_string(BlendModeKind v);
std::string to_string(SchemeKind v);
std::string to_string(SampleDist v);
std::string to_string(EnvelopeKind v);
std::string to_string(NoiseMode v);

BlendModeKind blend_mode_from_string(const std::string& s);
SchemeKind scheme_from_string(const std::string& s);
SampleDist sample_dist_from_string(const std::string& s);
EnvelopeKind envelope_from_string(const std::string& s);
NoiseMode noise_mode_from_string(const std::string& s);

}  // namespace bioblend
