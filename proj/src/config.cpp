#include "bioblend/config.hpp"

#include "bioblend/errors.hpp"

namespace bioblend {

std::string to_string(BlendModeKind v) {
    return v == BlendModeKind::linear ? "linear" : "logarithmic";
}

std::string to_string(SchemeKind v) {
    switch (v) {
        case SchemeKind::linear: return "linear";
        case SchemeKind::exponential: return "exponential";
        case SchemeKind::longtailed: return "longtailed";
    }
    return "linear";
}

std::string to_string(SampleDist v) { return v == SampleDist::normal ? "normal" : "uniform"; }

std::string to_string(EnvelopeKind v) { return v == EnvelopeKind::normal ? "normal" : "uniform"; }

std::string to_string(NoiseMode v) { return v == NoiseMode::linear ? "linear" : "logarithmic"; }

BlendModeKind blend_mode_from_string(const std::string& s) {
    if (s == "linear") return BlendModeKind::linear;
    if (s == "logarithmic") return BlendModeKind::logarithmic;
    throw ArgumentError("unknown blending mode \"" + s + "\" (linear|logarithmic)");
}

SchemeKind scheme_from_string(const std::string& s) {
    if (s == "linear") return SchemeKind::linear;
    if (s == "exponential") return SchemeKind::exponential;
    if (s == "longtailed") return SchemeKind::longtailed;
    throw ArgumentError("unknown usefulness scheme \"" + s + "\" (linear|exponential|longtailed)");
}

SampleDist sample_dist_from_string(const std::string& s) {
    if (s == "normal") return SampleDist::normal;
    if (s == "uniform") return SampleDist::uniform;
    throw ArgumentError("unknown sampling distribution \"" + s + "\" (normal|uniform)");
}

EnvelopeKind envelope_from_string(const std::string& s) {
    if (s == "normal") return EnvelopeKind::normal;
    if (s == "uniform") return EnvelopeKind::uniform;
    throw ArgumentError("unknown envelope \"" + s + "\" (normal|uniform)");
}

NoiseMode noise_mode_from_string(const std::string& s) {
    if (s == "linear") return NoiseMode::linear;
    if (s == "logarithmic") return NoiseMode::logarithmic;
    throw ArgumentError("unknown noise mode \"" + s + "\" (linear|logarithmic)");
}

}  // namespace bioblend
