#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "bioblend/config.hpp"
#include "bioblend/feature_blender.hpp"
#include "bioblend/feature_sampler.hpp"
#include "bioblend/matrix.hpp"

namespace bioblend {

/// Everything one generation run produces: the visible matrix plus the
/// ground-truth side information feature screening benchmarks need.
struct DatasetBundle {
    Matrix visible;                       // n_samples x n_features_out
    std::vector<std::int64_t> labels;     // n_samples, 1-based class indices
    std::optional<Matrix> hidden;         // n_samples x f_hidden, when stored
    std::vector<double> usefulness;       // f_hidden
    std::vector<std::uint8_t> true_mask;  // f_hidden
    std::vector<double> alpha;            // n_features_out
    BlendWeights weights;
    GeneratorConfig config;               // resolved echo
    double positivity_shift = 0.0;        // blend-stage shift (logarithmic mode)
    double noise_positivity_shift = 0.0;  // noise-stage shift (logarithmic mode)
};

/// File layout (HDF5, all little-endian, fixed creation order):
///   /features            float64  [n_samples, n_features_out]
///   /labels              int64    [n_samples]
///   /hidden/features     float64  [n_samples, f_hidden]   (optional)
///   /hidden/usefulness   float64  [f_hidden]
///   /hidden/true_mask    uint8    [f_hidden]
///   /noise/alpha         float64  [n_features_out]
///   /weights/indices     int64    [nnz]       (CSR triplet)
///   /weights/values      float64  [nnz]
///   /weights/row_offsets int64    [n_features_out + 1]
/// Root attributes carry `version`, `seed`, every config field and the
/// realized positivity shifts. Object timestamps are disabled so identical
/// bundles produce byte-identical files.
void write_hdf5(const DatasetBundle& bundle, const std::filesystem::path& path);

/// Inverse of write_hdf5. Rejects files written by a newer major version and
/// reports the first missing required member by name.
DatasetBundle read_hdf5(const std::filesystem::path& path);

/// Write features.csv and labels.csv (plus hidden_features.csv when the
/// hidden matrix is stored) into `directory`. Floats carry 17 significant
/// digits so a reimport is value-exact.
void export_csv(const DatasetBundle& bundle, const std::filesystem::path& directory);

}  // namespace bioblend
