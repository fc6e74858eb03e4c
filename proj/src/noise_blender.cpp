#include "bioblend/noise_blender.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bioblend/errors.hpp"
#include "bioblend/parallel.hpp"
#include "bioblend/stats.hpp"

namespace bioblend {

NoiseResult add_noise(RandomStream& stream, Matrix& values, const NoiseSpec& spec,
                      std::size_t threads) {
    const std::size_t rows = values.rows();
    const std::size_t cols = values.cols();
    if (!spec.enabled) return {std::vector<double>(cols, 1.0), 0.0};
    if (!(spec.alpha_min >= 0.0 && spec.alpha_min <= 1.0) ||
        !(spec.alpha_max >= 0.0 && spec.alpha_max <= 1.0) || spec.alpha_min > spec.alpha_max)
        throw ArgumentError("add_noise: alpha range must satisfy 0 <= min <= max <= 1");

    // Per-feature child streams keep the result independent of scheduling.
    std::vector<RandomStream> feature_streams;
    feature_streams.reserve(cols);
    for (std::size_t j = 0; j < cols; ++j) feature_streams.push_back(stream.fork(std::to_string(j)));

    NoiseResult result;
    result.alpha.resize(cols);
    std::vector<double>& alpha = result.alpha;

    if (spec.mode == NoiseMode::linear) {
        parallel_for(cols, threads, [&](std::size_t j) {
            RandomStream& fs = feature_streams[j];
            const double a =
                draw_uniform(fs, spec.alpha_min, spec.alpha_max - spec.alpha_min, 1)[0];
            alpha[j] = a;
            if (a == 1.0) return;  // exact identity
            std::vector<double> column(rows);
            values.copy_col(j, column);
            const double m = stats::mean(column);
            const double sd = stats::sample_std(column);
            std::vector<double> noise(rows);
            fill_normal(fs, m, sd, noise);
            if (a == 0.0) {
                values.set_col(j, noise);
                return;
            }
            for (std::size_t i = 0; i < rows; ++i)
                column[i] = a * column[i] + (1.0 - a) * noise[i];
            values.set_col(j, column);
        });
        return result;
    }

    // Logarithmic mode needs a global shift covering every operand that gets
    // logged, so noise columns are materialized first.
    Matrix noise(rows, cols);
    std::vector<double> col_min(cols, std::numeric_limits<double>::infinity());
    parallel_for(cols, threads, [&](std::size_t j) {
        RandomStream& fs = feature_streams[j];
        const double a = draw_uniform(fs, spec.alpha_min, spec.alpha_max - spec.alpha_min, 1)[0];
        alpha[j] = a;
        if (a == 1.0) return;
        std::vector<double> column(rows);
        values.copy_col(j, column);
        const double m = stats::mean(column);
        const double sd = stats::sample_std(column);
        std::vector<double> nj(rows);
        fill_normal(fs, m, sd, nj);
        noise.set_col(j, nj);
        if (a > 0.0) {  // interpolated features constrain the shift
            double lo = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < rows; ++i) lo = std::min(lo, std::min(column[i], nj[i]));
            col_min[j] = lo;
        }
    });

    double global_min = std::numeric_limits<double>::infinity();
    for (double v : col_min) global_min = std::min(global_min, v);
    const bool any_logged = std::isfinite(global_min);
    const double shift = spec.positivity_shift.value_or(
        any_logged ? (global_min < 1.0 ? 1.0 - global_min : 0.0) : 0.0);
    if (shift < 0.0) throw ArgumentError("add_noise: positivity shift must be >= 0");
    result.positivity_shift = any_logged ? shift : 0.0;

    parallel_for(cols, threads, [&](std::size_t j) {
        const double a = alpha[j];
        if (a == 1.0) return;
        std::vector<double> column(rows);
        values.copy_col(j, column);
        if (a == 0.0) {
            noise.copy_col(j, column);
            values.set_col(j, column);
            return;
        }
        std::vector<double> nj(rows);
        noise.copy_col(j, nj);
        for (std::size_t i = 0; i < rows; ++i) {
            const double v = column[i] + shift;
            const double n = nj[i] + shift;
            if (!(v > 0.0) || !(n > 0.0))
                throw InternalError("logarithmic noise: nonpositive operand after shift");
            column[i] = std::exp(a * std::log(v) + (1.0 - a) * std::log(n));
        }
        values.set_col(j, column);
    });
    return result;
}

}  // namespace bioblend
