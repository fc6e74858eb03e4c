#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bioblend/matrix.hpp"
#include "bioblend/polynomial_blender.hpp"
#include "bioblend/random.hpp"

namespace bioblend {

/// Sparse visible-by-transitional weight matrix in CSR form. Every row has
/// between k_min and k_max distinct column indices and weights that sum to 1.
struct BlendWeights {
    std::vector<std::int64_t> row_offsets;  // n_visible + 1
    std::vector<std::int64_t> indices;      // nnz, ascending within a row
    std::vector<double> values;             // nnz, positive
    std::size_t k_min = 0;
    std::size_t k_max = 0;
    std::size_t n_trans = 0;

    std::size_t n_visible() const { return row_offsets.empty() ? 0 : row_offsets.size() - 1; }
    std::size_t nnz() const { return indices.size(); }
};

enum class BlendModeKind { linear, logarithmic };

struct BlendMode {
    BlendModeKind kind = BlendModeKind::linear;
    /// Logarithmic mode only: optional shift added to operands before their
    /// magnitudes enter the logs. Defaults to 0; operand signs are dropped by
    /// the magnitude product, so no shift is required for negative data.
    std::optional<double> positivity_shift;
};

/// Draw the sparse weight matrix: per visible feature, a row count k uniform
/// on {k_min..k_max}, k distinct transitional indices uniform without
/// replacement, and Dirichlet(concentration) weights.
BlendWeights make_weights(RandomStream& s, std::size_t f_visible, std::size_t f_trans,
                          std::size_t k_min, std::size_t k_max, double concentration);

struct BlendResult {
    Matrix visible;
    double positivity_shift = 0.0;  // 0 in linear mode
};

/// Mix transitional columns into visible features: weighted sums in linear
/// mode, products of weighted magnitude powers (long-tailed, lognormal-like)
/// in logarithmic mode.
BlendResult blend(const TransitionalSource& source, const BlendWeights& w, const BlendMode& mode,
                  std::size_t threads = 1);

/// Convenience overload for an already materialized transitional matrix.
BlendResult blend(const Matrix& trans, const BlendWeights& w, const BlendMode& mode,
                  std::size_t threads = 1);

}  // namespace bioblend
