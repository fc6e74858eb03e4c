#pragma once

#include <optional>
#include <vector>

#include "bioblend/matrix.hpp"
#include "bioblend/random.hpp"

namespace bioblend {

enum class NoiseMode { linear, logarithmic };

struct NoiseSpec {
    bool enabled = true;
    NoiseMode mode = NoiseMode::linear;
    double alpha_min = 0.0;  // [0, 1], <= alpha_max
    double alpha_max = 1.0;
    /// Logarithmic mode only; unset means auto from the interpolated operands.
    std::optional<double> positivity_shift;
};

struct NoiseResult {
    std::vector<double> alpha;      // realized per-feature signal weight
    double positivity_shift = 0.0;  // 0 in linear mode or when nothing was logged
};

/// Blend per-feature Gaussian noise into `values` in place. Per feature j an
/// alpha_j is drawn uniform on [alpha_min, alpha_max] and a noise column is
/// drawn from a normal matched to the feature's empirical mean and standard
/// deviation; the output interpolates signal and noise with weights alpha_j
/// and 1 - alpha_j. alpha_j == 1 leaves the column untouched and alpha_j == 0
/// replaces it by the noise column, both exactly.
NoiseResult add_noise(RandomStream& stream, Matrix& values, const NoiseSpec& spec,
                      std::size_t threads = 1);

}  // namespace bioblend
