#include "bioblend/location_factory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bioblend/errors.hpp"

namespace bioblend {

double draw_envelope(RandomStream& s, const EnvelopeSpec& envelope) {
    if (!(envelope.scale > 0.0)) throw ArgumentError("envelope scale must be > 0");
    if (envelope.kind == EnvelopeKind::normal)
        return draw_normal(s, envelope.location, envelope.scale, 1)[0];
    return draw_uniform(s, envelope.location, envelope.scale, 1)[0];
}

std::vector<double> make_usefulness(const UsefulnessScheme& scheme, std::size_t f_true,
                                    std::size_t f_fake) {
    const double lo = scheme.min_usefulness;
    const double hi = scheme.max_usefulness;
    if (!(lo > 0.0 && lo <= 1.0) || !(hi > 0.0 && hi <= 1.0) || lo > hi)
        throw ArgumentError("usefulness bounds must satisfy 0 < min <= max <= 1");

    std::vector<double> u(f_true + f_fake, 0.0);
    if (f_true == 0) return u;
    if (f_true == 1) {
        u[0] = hi;
        return u;
    }
    const double steps = static_cast<double>(f_true - 1);
    switch (scheme.kind) {
        case SchemeKind::linear:
            for (std::size_t j = 0; j < f_true; ++j)
                u[j] = hi - (hi - lo) * static_cast<double>(j) / steps;
            break;
        case SchemeKind::exponential:
            for (std::size_t j = 0; j < f_true; ++j)
                u[j] = hi * std::pow(lo / hi, static_cast<double>(j) / steps);
            break;
        case SchemeKind::longtailed: {
            // 1/(1+j) decay, affinely pinned to [min, max] at the endpoints.
            const double tail = 1.0 / static_cast<double>(f_true);
            for (std::size_t j = 0; j < f_true; ++j) {
                const double base = 1.0 / (1.0 + static_cast<double>(j));
                u[j] = lo + (hi - lo) * (base - tail) / (1.0 - tail);
            }
            break;
        }
    }
    return u;
}

namespace {

// Geometric length with mean m on {1, 2, ...}; mean <= 1 is deterministic 1
// and consumes nothing.
std::size_t geometric_length(RandomStream& s, double m) {
    if (m <= 1.0) return 1;
    const double p = 1.0 / m;
    const double u = s.next_double();
    const double k = std::floor(std::log1p(-u) / std::log1p(-p));
    return 1 + (k > 0.0 ? static_cast<std::size_t>(k) : 0);
}

void fill_true_column(RandomStream& cs, const EnvelopeSpec& envelope, std::size_t n_classes,
                      long sharing_extent, long ordering_extent, std::vector<double>& vals) {
    const long sharing = std::max(sharing_extent, 1L);
    if (static_cast<std::size_t>(sharing) >= n_classes) {
        const double v = draw_envelope(cs, envelope);
        std::fill(vals.begin(), vals.end(), v);
    } else {
        std::size_t pos = 0;
        while (pos < n_classes) {
            const std::size_t len =
                std::min(geometric_length(cs, static_cast<double>(sharing)), n_classes - pos);
            const double v = draw_envelope(cs, envelope);
            std::fill(vals.begin() + pos, vals.begin() + pos + len, v);
            pos += len;
        }
    }

    const long ordering = std::max(ordering_extent, 1L);
    if (static_cast<std::size_t>(ordering) >= n_classes) {
        std::sort(vals.begin(), vals.end());
    } else if (ordering > 1) {
        std::size_t pos = 0;
        while (pos < n_classes) {
            const std::size_t len =
                std::min(geometric_length(cs, static_cast<double>(ordering)), n_classes - pos);
            std::sort(vals.begin() + pos, vals.begin() + pos + len);
            pos += len;
        }
    }
}

}  // namespace

LocationPlan make_locations(RandomStream& stream, const EnvelopeSpec& envelope,
                            std::size_t n_classes, std::size_t f_true, std::size_t f_fake,
                            long ordering_extent, long sharing_extent,
                            std::vector<double> usefulness) {
    if (n_classes < 2) throw ArgumentError("make_locations: need at least 2 classes");
    const long c = static_cast<long>(n_classes);
    if (ordering_extent < 0 || ordering_extent > c)
        throw ArgumentError("make_locations: ordering extent must be in [0, n_classes]");
    if (sharing_extent < 0 || sharing_extent > c)
        throw ArgumentError("make_locations: sharing extent must be in [0, n_classes]");
    const std::size_t f_hidden = f_true + f_fake;
    if (usefulness.size() != f_hidden)
        throw ArgumentError("make_locations: usefulness length must equal f_true + f_fake");
    for (std::size_t j = f_true; j < f_hidden; ++j) {
        if (usefulness[j] != 0.0)
            throw ArgumentError("make_locations: fake features must have usefulness 0");
    }

    LocationPlan plan;
    plan.locations = Matrix(n_classes, f_hidden);
    plan.usefulness = std::move(usefulness);
    plan.true_mask.assign(f_hidden, 0);
    plan.ordering_extent = ordering_extent;
    plan.sharing_extent = sharing_extent;

    std::vector<double> vals(n_classes);
    for (std::size_t j = 0; j < f_hidden; ++j) {
        RandomStream cs = stream.fork(std::to_string(j));
        if (j < f_true) {
            plan.true_mask[j] = 1;
            fill_true_column(cs, envelope, n_classes, sharing_extent, ordering_extent, vals);
        } else {
            // Fake features are the fully shared case: one location for all.
            std::fill(vals.begin(), vals.end(), draw_envelope(cs, envelope));
        }
        plan.locations.set_col(j, vals);
    }
    return plan;
}

}  // namespace bioblend
