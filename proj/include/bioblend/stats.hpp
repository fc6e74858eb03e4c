#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bioblend::stats {

double mean(std::span<const double> x);

/// Sample standard deviation (divisor n - 1); 0 for n < 2.
double sample_std(std::span<const double> x);

double pearson(std::span<const double> x, std::span<const double> y);

/// Ranks with ties assigned their average rank (1-based).
std::vector<double> ranks(std::span<const double> x);

double spearman(std::span<const double> x, std::span<const double> y);

/// Moment skewness m3 / m2^(3/2); 0 for degenerate input.
double skewness(std::span<const double> x);

double median(std::vector<double> x);

}  // namespace bioblend::stats
