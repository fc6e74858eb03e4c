#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace bioblend {

/// Counter-based pseudo-random stream (Philox4x32-10).
///
/// A child stream is a pure function of the parent's seed and the fork label,
/// so the number of values drawn from one stream never affects another. This
/// keeps per-stage and per-column outputs stable when unrelated stages change
/// their draw counts.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed);

    RandomStream(const RandomStream&) = delete;
    RandomStream& operator=(const RandomStream&) = delete;
    RandomStream(RandomStream&&) = default;
    RandomStream& operator=(RandomStream&&) = default;

    std::uint64_t seed() const { return seed_; }

    /// Derive an independent child stream from (seed, label). Forking the
    /// same label twice from one parent is a configuration error.
    RandomStream fork(std::string_view label);

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    /// Uniform in [0, 1), 53-bit resolution.
    double next_double();

    /// One standard normal draw (Box-Muller, consumes two uniforms).
    double next_normal();

private:
    void refill();

    std::uint64_t seed_ = 0;
    std::array<std::uint32_t, 2> key_{};
    std::array<std::uint32_t, 4> counter_{};
    std::array<std::uint32_t, 4> block_{};
    unsigned block_pos_ = 4;
    std::unordered_set<std::string> forked_;
};

/// n i.i.d. normal draws; scale == 0 yields n copies of mean without
/// consuming the stream.
std::vector<double> draw_normal(RandomStream& s, double mean, double scale, std::size_t n);
void fill_normal(RandomStream& s, double mean, double scale, std::span<double> out);

/// n i.i.d. draws uniform on [location, location + length); length == 0
/// yields n copies of location without consuming the stream.
std::vector<double> draw_uniform(RandomStream& s, double location, double length, std::size_t n);
void fill_uniform(RandomStream& s, double location, double length, std::span<double> out);

/// One draw from a symmetric Dirichlet via normalized gamma variates.
/// Components are strictly positive and sum to 1 up to rounding.
std::vector<double> draw_dirichlet(RandomStream& s, double concentration, std::size_t k);

/// n equiprobable integers in {lo, ..., hi}, unbiased.
std::vector<std::int64_t> draw_discrete_uniform(RandomStream& s, std::int64_t lo, std::int64_t hi,
                                                std::size_t n);

/// One gamma(shape, 1) variate (Marsaglia-Tsang).
double draw_gamma(RandomStream& s, double shape);

}  // namespace bioblend
