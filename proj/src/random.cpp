#include "bioblend/random.hpp"

#include <cmath>
#include <limits>

#include "bioblend/errors.hpp"

namespace bioblend {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;
constexpr double kTwoPi = 6.283185307179586476925286766559;

inline void philox_round(std::array<std::uint32_t, 4>& ctr, std::array<std::uint32_t, 2>& key) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
    ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
           static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
           static_cast<std::uint32_t>(p0)};
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed) : seed_(seed) {
    const std::uint64_t mixed = splitmix64(seed);
    key_ = {static_cast<std::uint32_t>(mixed), static_cast<std::uint32_t>(mixed >> 32)};
}

RandomStream RandomStream::fork(std::string_view label) {
    if (label.empty()) throw ArgumentError("fork: label must be nonempty");
    if (!forked_.emplace(label).second)
        throw ConfigError("fork: label \"" + std::string(label) + "\" already forked from this stream");
    return RandomStream(splitmix64(splitmix64(seed_) ^ fnv1a64(label)));
}

void RandomStream::refill() {
    std::array<std::uint32_t, 4> ctr = counter_;
    std::array<std::uint32_t, 2> key = key_;
    for (int r = 0; r < 10; ++r) philox_round(ctr, key);
    block_ = ctr;
    block_pos_ = 0;
    for (unsigned i = 0; i < 4; ++i) {
        if (++counter_[i] != 0) break;
    }
}

std::uint32_t RandomStream::next_u32() {
    if (block_pos_ >= 4) refill();
    return block_[block_pos_++];
}

std::uint64_t RandomStream::next_u64() {
    const std::uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
}

double RandomStream::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::next_normal() {
    const double u1 = 1.0 - next_double();  // (0, 1], keeps log finite
    const double r = std::sqrt(-2.0 * std::log(u1));
    return r * std::cos(kTwoPi * next_double());
}

void fill_normal(RandomStream& s, double mean, double scale, std::span<double> out) {
    if (!(scale >= 0.0)) throw ArgumentError("draw_normal: scale must be >= 0");
    if (scale == 0.0) {
        for (double& v : out) v = mean;
        return;
    }
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; i += 2) {
        const double u1 = 1.0 - s.next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = kTwoPi * s.next_double();
        out[i] = mean + scale * r * std::cos(theta);
        if (i + 1 < n) out[i + 1] = mean + scale * r * std::sin(theta);
    }
}

std::vector<double> draw_normal(RandomStream& s, double mean, double scale, std::size_t n) {
    std::vector<double> out(n);
    fill_normal(s, mean, scale, out);
    return out;
}

void fill_uniform(RandomStream& s, double location, double length, std::span<double> out) {
    if (!(length >= 0.0)) throw ArgumentError("draw_uniform: length must be >= 0");
    if (length == 0.0) {
        for (double& v : out) v = location;
        return;
    }
    for (double& v : out) v = location + length * s.next_double();
}

std::vector<double> draw_uniform(RandomStream& s, double location, double length, std::size_t n) {
    std::vector<double> out(n);
    fill_uniform(s, location, length, out);
    return out;
}

namespace {

// Marsaglia-Tsang squeeze for shape >= 1.
double gamma_large(RandomStream& s, double shape) {
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = s.next_normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = s.next_double();
        const double xx = x * x;
        if (u < 1.0 - 0.0331 * xx * xx) return d * v;
        if (u > 0.0 && std::log(u) < 0.5 * xx + d * (1.0 - v + std::log(v))) return d * v;
    }
}

}  // namespace

double draw_gamma(RandomStream& s, double shape) {
    if (!(shape > 0.0)) throw ArgumentError("draw_gamma: shape must be > 0");
    if (shape >= 1.0) return gamma_large(s, shape);
    // Boost to shape + 1 and scale back with a uniform power.
    const double g = gamma_large(s, shape + 1.0);
    double u;
    do {
        u = s.next_double();
    } while (u == 0.0);
    return g * std::pow(u, 1.0 / shape);
}

std::vector<double> draw_dirichlet(RandomStream& s, double concentration, std::size_t k) {
    if (k == 0) throw ArgumentError("draw_dirichlet: k must be >= 1");
    if (!(concentration > 0.0)) throw ArgumentError("draw_dirichlet: concentration must be > 0");
    if (k == 1) return {1.0};
    std::vector<double> out(k);
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        double g;
        do {
            g = draw_gamma(s, concentration);
        } while (g <= 0.0);  // guards against underflow at tiny concentration
        out[i] = g;
        sum += g;
    }
    for (double& v : out) v /= sum;
    return out;
}

std::vector<std::int64_t> draw_discrete_uniform(RandomStream& s, std::int64_t lo, std::int64_t hi,
                                                std::size_t n) {
    if (lo > hi) throw ArgumentError("draw_discrete_uniform: lo must be <= hi");
    std::vector<std::int64_t> out(n);
    const std::uint64_t span =
        static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    if (span == 0) {  // full 64-bit range
        for (auto& v : out) v = static_cast<std::int64_t>(s.next_u64());
        return out;
    }
    const std::uint64_t threshold = (-span) % span;  // 2^64 mod span
    for (auto& v : out) {
        std::uint64_t r;
        do {
            r = s.next_u64();
        } while (r < threshold);
        v = lo + static_cast<std::int64_t>(r % span);
    }
    return out;
}

}  // namespace bioblend
