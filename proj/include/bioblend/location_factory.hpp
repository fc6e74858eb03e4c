#pragma once

#include <cstdint>
#include <vector>

#include "bioblend/matrix.hpp"
#include "bioblend/random.hpp"

namespace bioblend {

enum class EnvelopeKind { normal, uniform };

/// Distribution the per-class feature locations are drawn under.
/// For `normal`, location/scale are mean and standard deviation; for
/// `uniform`, they are the range start and range length.
struct EnvelopeSpec {
    EnvelopeKind kind = EnvelopeKind::normal;
    double location = 0.0;
    double scale = 1.0;
};

double draw_envelope(RandomStream& s, const EnvelopeSpec& envelope);

enum class SchemeKind { linear, exponential, longtailed };

struct UsefulnessScheme {
    SchemeKind kind = SchemeKind::linear;
    double min_usefulness = 0.5;  // in (0, 1]
    double max_usefulness = 0.95; // in (0, 1], >= min
};

/// Per-(class, hidden feature) distribution locations plus the per-feature
/// usefulness and bookkeeping that downstream stages need.
struct LocationPlan {
    Matrix locations;                     // n_classes x f_hidden
    std::vector<double> usefulness;       // f_hidden; exactly 0 for fake features
    std::vector<std::uint8_t> true_mask;  // f_hidden; 1 for true features
    long ordering_extent = 1;
    long sharing_extent = 1;

    std::size_t n_classes() const { return locations.rows(); }
    std::size_t f_hidden() const { return locations.cols(); }
};

/// Usefulness values for f_true + f_fake hidden features: the first f_true
/// follow the scheme nonincreasing from max to min, the rest are exactly 0.
std::vector<double> make_usefulness(const UsefulnessScheme& scheme, std::size_t f_true,
                                    std::size_t f_fake);

/// Draw the location matrix. Per true feature: classes are partitioned into
/// groups of geometric mean size max(sharing_extent, 1) that share one
/// envelope draw, then consecutive runs of geometric mean length
/// max(ordering_extent, 1) are sorted ascending. Extent equal to n_classes
/// degenerates to a single group / fully sorted column. Fake features get a
/// single envelope draw replicated across all classes.
LocationPlan make_locations(RandomStream& stream, const EnvelopeSpec& envelope,
                            std::size_t n_classes, std::size_t f_true, std::size_t f_fake,
                            long ordering_extent, long sharing_extent,
                            std::vector<double> usefulness);

}  // namespace bioblend
