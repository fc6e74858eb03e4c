#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bioblend/matrix.hpp"

namespace bioblend {

/// Number of transitional features produced by degree-<=d expansion of
/// f_hidden features: C(f_hidden + d, d) - 1.
std::uint64_t count_transitional(std::size_t f_hidden, std::size_t d);

/// All multisets of feature indices of size 1..d, enumerated degree-major
/// and lexicographically within a degree. Stored flattened; entry t is the
/// sorted index tuple of transitional feature t.
class MonomialSet {
public:
    MonomialSet() = default;
    MonomialSet(std::size_t f_hidden, std::size_t d);

    std::size_t size() const { return offsets_.size() - 1; }
    std::span<const std::uint32_t> operator[](std::size_t t) const {
        return {flat_.data() + offsets_[t], offsets_[t + 1] - offsets_[t]};
    }

private:
    std::vector<std::uint32_t> flat_;
    std::vector<std::size_t> offsets_{0};
};

/// sign(p) * |p|^(1/degree): the odd, scale-preserving root.
double signed_root(double p, std::size_t degree);

/// Write transitional column `mono` of the hidden matrix into out. Each
/// distinct variable contributes sign(v) * |v|^(multiplicity / degree), so
/// signs survive even multiplicities and a pure power such as {x, x} is x
/// itself. For monomials of distinct variables this equals the signed
/// degree-th root of the row product. Degree-1 columns are exact copies.
void monomial_column(const Matrix& hidden, std::span<const std::uint32_t> mono,
                     std::span<double> out);

/// Materialized degree-<=d expansion, columns in MonomialSet order.
Matrix expand(const Matrix& values, std::size_t d);

/// Column access to the transitional matrix, either cached up front or
/// recomputed per request. Both paths produce identical values, so callers
/// can stream when the full matrix would not fit in memory.
class TransitionalSource {
public:
    TransitionalSource(const Matrix& hidden, std::size_t d, bool materialize);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return monomials_.size(); }
    bool materialized() const { return !cache_.empty(); }

    /// Column t; `scratch` is the caller's reusable buffer for the streaming
    /// path. The returned span stays valid until the next call with the same
    /// scratch. Safe to call concurrently with distinct scratch buffers.
    std::span<const double> column(std::size_t t, std::vector<double>& scratch) const;

    /// Minimum over all transitional values (one full sweep when streaming).
    double min_value() const;

private:
    const Matrix& hidden_;
    MonomialSet monomials_;
    std::size_t rows_ = 0;
    std::vector<double> cache_;  // column-major when materialized
};

}  // namespace bioblend
