#pragma once

#include <cstdint>
#include <vector>

#include "bioblend/location_factory.hpp"
#include "bioblend/matrix.hpp"
#include "bioblend/random.hpp"

namespace bioblend {

enum class SampleDist { normal, uniform };

struct SamplerSpec {
    SampleDist distribution = SampleDist::normal;
    std::size_t samples_per_class = 1;
    double scale_jitter = 0.1;  // in [0, 1); half-width of the multiplier around 1
    double fake_scale = 2.0;    // > 0
};

/// Samples-by-hidden-features value matrix with 1-based class labels, one
/// block of samples_per_class consecutive rows per class.
struct HiddenMatrix {
    Matrix values;
    std::vector<std::int64_t> labels;
};

/// Convert usefulness to the sampling scale: 0 maps to fake_scale exactly,
/// u > 0 maps to envelope_scale * (1 - u) / u capped at fake_scale, so the
/// scale shrinks to 0 as u approaches 1.
double usefulness_to_scale(double u, double envelope_scale, double fake_scale);

/// Draw the hidden matrix. Per (class, true feature) the scale is
/// usefulness_to_scale(u) times a jitter multiplier uniform on
/// [1 - scale_jitter, 1 + scale_jitter]; fake features use fake_scale as is.
/// Jitter multipliers and sample values come from separate streams so their
/// draw counts stay independent.
HiddenMatrix sample_hidden(RandomStream& jitter_stream, RandomStream& value_stream,
                           const LocationPlan& plan, const SamplerSpec& spec,
                           const EnvelopeSpec& envelope);

/// Rescale every column to unit sample standard deviation (divisor n - 1)
/// without centering. Constant columns are left untouched.
void normalize_columns(Matrix& m);

}  // namespace bioblend
