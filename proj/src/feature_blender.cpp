#include "bioblend/feature_blender.hpp"

#include <algorithm>
#include <cmath>

#include "bioblend/errors.hpp"
#include "bioblend/parallel.hpp"

namespace bioblend {

BlendWeights make_weights(RandomStream& s, std::size_t f_visible, std::size_t f_trans,
                          std::size_t k_min, std::size_t k_max, double concentration) {
    if (k_min < 1) throw ArgumentError("make_weights: k_min must be >= 1");
    if (k_min > k_max) throw ArgumentError("make_weights: k_min must be <= k_max");
    if (k_max > f_trans) throw ArgumentError("make_weights: k_max exceeds transitional feature count");
    if (!(concentration > 0.0)) throw ArgumentError("make_weights: concentration must be > 0");

    BlendWeights w;
    w.k_min = k_min;
    w.k_max = k_max;
    w.n_trans = f_trans;
    w.row_offsets.reserve(f_visible + 1);
    w.row_offsets.push_back(0);
    w.indices.reserve(f_visible * (k_min + k_max) / 2);
    w.values.reserve(w.indices.capacity());

    std::vector<std::int64_t> row;
    for (std::size_t i = 0; i < f_visible; ++i) {
        const auto k = static_cast<std::size_t>(
            draw_discrete_uniform(s, static_cast<std::int64_t>(k_min),
                                  static_cast<std::int64_t>(k_max), 1)[0]);
        row.clear();
        while (row.size() < k) {
            const std::int64_t idx =
                draw_discrete_uniform(s, 0, static_cast<std::int64_t>(f_trans) - 1, 1)[0];
            if (std::find(row.begin(), row.end(), idx) == row.end()) row.push_back(idx);
        }
        std::sort(row.begin(), row.end());
        const std::vector<double> weights = draw_dirichlet(s, concentration, k);
        w.indices.insert(w.indices.end(), row.begin(), row.end());
        w.values.insert(w.values.end(), weights.begin(), weights.end());
        w.row_offsets.push_back(static_cast<std::int64_t>(w.indices.size()));
    }
    return w;
}

namespace {

template <typename ColumnFn>
Matrix blend_linear(std::size_t rows, const BlendWeights& w, std::size_t threads,
                    const ColumnFn& column) {
    Matrix out(rows, w.n_visible());
    parallel_for(w.n_visible(), threads, [&](std::size_t j) {
        std::vector<double> scratch;
        std::vector<double> acc(rows, 0.0);
        for (auto p = w.row_offsets[j]; p < w.row_offsets[j + 1]; ++p) {
            const std::span<const double> col =
                column(static_cast<std::size_t>(w.indices[p]), scratch);
            const double weight = w.values[p];
            for (std::size_t i = 0; i < rows; ++i) acc[i] += weight * col[i];
        }
        out.set_col(j, acc);
    });
    return out;
}

// Product of weighted magnitude powers: exp(sum w * ln |x + shift|). Operand
// magnitudes keep the multiplicative (lognormal-like) character; a zero
// operand maps to a zero output, the natural limit.
template <typename ColumnFn>
Matrix blend_logarithmic(std::size_t rows, const BlendWeights& w, double shift,
                         std::size_t threads, const ColumnFn& column) {
    Matrix out(rows, w.n_visible());
    parallel_for(w.n_visible(), threads, [&](std::size_t j) {
        std::vector<double> scratch;
        std::vector<double> acc(rows, 0.0);
        for (auto p = w.row_offsets[j]; p < w.row_offsets[j + 1]; ++p) {
            const std::span<const double> col =
                column(static_cast<std::size_t>(w.indices[p]), scratch);
            const double weight = w.values[p];
            for (std::size_t i = 0; i < rows; ++i)
                acc[i] += weight * std::log(std::fabs(col[i] + shift));
        }
        for (std::size_t i = 0; i < rows; ++i) acc[i] = std::exp(acc[i]);
        out.set_col(j, acc);
    });
    return out;
}

void check_weights(const BlendWeights& w, std::size_t n_cols) {
    if (w.n_trans != n_cols)
        throw ArgumentError("blend: weight matrix built for a different transitional width");
    for (std::int64_t idx : w.indices) {
        if (idx < 0 || static_cast<std::size_t>(idx) >= n_cols)
            throw ArgumentError("blend: weight index out of range");
    }
}

template <typename ColumnFn>
BlendResult blend_impl(std::size_t rows, std::size_t cols, const BlendWeights& w,
                       const BlendMode& mode, std::size_t threads, const ColumnFn& column) {
    check_weights(w, cols);
    if (mode.kind == BlendModeKind::linear)
        return {blend_linear(rows, w, threads, column), 0.0};
    const double shift = mode.positivity_shift.value_or(0.0);
    if (shift < 0.0) throw ArgumentError("blend: positivity shift must be >= 0");
    return {blend_logarithmic(rows, w, shift, threads, column), shift};
}

}  // namespace

BlendResult blend(const TransitionalSource& source, const BlendWeights& w, const BlendMode& mode,
                  std::size_t threads) {
    return blend_impl(
        source.rows(), source.cols(), w, mode, threads,
        [&](std::size_t t, std::vector<double>& scratch) { return source.column(t, scratch); });
}

BlendResult blend(const Matrix& trans, const BlendWeights& w, const BlendMode& mode,
                  std::size_t threads) {
    return blend_impl(
        trans.rows(), trans.cols(), w, mode, threads,
        [&](std::size_t t, std::vector<double>& scratch) -> std::span<const double> {
            scratch.resize(trans.rows());
            trans.copy_col(t, scratch);
            return scratch;
        });
}

}  // namespace bioblend
