#include "bioblend/feature_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bioblend/errors.hpp"

namespace bioblend {

double usefulness_to_scale(double u, double envelope_scale, double fake_scale) {
    if (!(u >= 0.0 && u <= 1.0)) throw ArgumentError("usefulness must be in [0, 1]");
    if (!(envelope_scale > 0.0)) throw ArgumentError("envelope scale must be > 0");
    if (!(fake_scale > 0.0)) throw ArgumentError("fake scale must be > 0");
    if (u == 0.0) return fake_scale;
    return std::min(envelope_scale * (1.0 - u) / u, fake_scale);
}

HiddenMatrix sample_hidden(RandomStream& jitter_stream, RandomStream& value_stream,
                           const LocationPlan& plan, const SamplerSpec& spec,
                           const EnvelopeSpec& envelope) {
    if (spec.samples_per_class == 0)
        throw ArgumentError("sample_hidden: samples_per_class must be >= 1");
    if (!(spec.scale_jitter >= 0.0 && spec.scale_jitter < 1.0))
        throw ArgumentError("sample_hidden: scale_jitter must be in [0, 1)");
    if (!(spec.fake_scale > 0.0)) throw ArgumentError("sample_hidden: fake_scale must be > 0");

    const std::size_t n_classes = plan.n_classes();
    const std::size_t f_hidden = plan.f_hidden();
    const std::size_t s_c = spec.samples_per_class;
    const std::size_t n_samples = n_classes * s_c;

    HiddenMatrix out;
    out.values = Matrix(n_samples, f_hidden);
    out.labels.resize(n_samples);
    for (std::size_t k = 0; k < n_classes; ++k)
        std::fill_n(out.labels.begin() + k * s_c, s_c, static_cast<std::int64_t>(k + 1));

    std::vector<double> block(s_c);
    std::vector<double> column(n_samples);
    for (std::size_t j = 0; j < f_hidden; ++j) {
        RandomStream vs = value_stream.fork(std::to_string(j));
        const bool is_true = plan.true_mask[j] != 0;
        double base_scale = spec.fake_scale;
        RandomStream js = jitter_stream.fork(std::to_string(j));
        if (is_true)
            base_scale = usefulness_to_scale(plan.usefulness[j], envelope.scale, spec.fake_scale);
        for (std::size_t k = 0; k < n_classes; ++k) {
            double scale = base_scale;
            if (is_true) {
                const double m =
                    draw_uniform(js, 1.0 - spec.scale_jitter, 2.0 * spec.scale_jitter, 1)[0];
                scale = base_scale * m;
            }
            const double location = plan.locations(k, j);
            if (spec.distribution == SampleDist::normal)
                fill_normal(vs, location, scale, block);
            else
                fill_uniform(vs, location, scale, block);
            std::copy(block.begin(), block.end(), column.begin() + k * s_c);
        }
        out.values.set_col(j, column);
    }
    return out;
}

void normalize_columns(Matrix& m) {
    const std::size_t rows = m.rows();
    if (rows < 2) return;
    std::vector<double> column(rows);
    for (std::size_t j = 0; j < m.cols(); ++j) {
        m.copy_col(j, column);
        const auto [lo, hi] = std::minmax_element(column.begin(), column.end());
        if (*lo == *hi) continue;  // constant column: unit placeholder scale
        double s = 0.0;
        for (double v : column) s += v;
        const double mean = s / static_cast<double>(rows);
        double ss = 0.0;
        for (double v : column) {
            const double d = v - mean;
            ss += d * d;
        }
        const double stddev = std::sqrt(ss / static_cast<double>(rows - 1));
        if (stddev <= 0.0) continue;
        const double inv = 1.0 / stddev;
        for (double& v : column) v *= inv;
        m.set_col(j, column);
    }
}

}  // namespace bioblend
