#include "bioblend/polynomial_blender.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bioblend/errors.hpp"

namespace bioblend {

std::uint64_t count_transitional(std::size_t f_hidden, std::size_t d) {
    if (d == 0) throw ArgumentError("count_transitional: degree must be >= 1");
    if (f_hidden == 0) throw ArgumentError("count_transitional: f_hidden must be >= 1");
    // C(f_hidden + d, d) via the multiplicative formula, overflow-checked.
    unsigned __int128 acc = 1;
    for (std::size_t i = 1; i <= d; ++i) {
        acc = acc * (f_hidden + i) / i;  // exact: product of i consecutive ints divides by i!
        if (acc > std::numeric_limits<std::uint64_t>::max())
            throw ArgumentError("count_transitional: result does not fit 64 bits");
    }
    return static_cast<std::uint64_t>(acc) - 1;
}

MonomialSet::MonomialSet(std::size_t f_hidden, std::size_t d) {
    const std::uint64_t total = count_transitional(f_hidden, d);
    constexpr std::uint64_t kMaxMonomials = std::uint64_t{1} << 26;
    if (total > kMaxMonomials)
        throw ArgumentError("polynomial expansion too large: more than 2^26 transitional features");
    offsets_.reserve(static_cast<std::size_t>(total) + 1);

    std::vector<std::uint32_t> cur;
    for (std::size_t g = 1; g <= d; ++g) {
        cur.assign(g, 0);
        for (;;) {
            flat_.insert(flat_.end(), cur.begin(), cur.end());
            offsets_.push_back(flat_.size());
            // Advance to the next nondecreasing tuple in lexicographic order.
            std::size_t i = g;
            while (i > 0 && cur[i - 1] == f_hidden - 1) --i;
            if (i == 0) break;
            const std::uint32_t next = cur[i - 1] + 1;
            for (std::size_t k = i - 1; k < g; ++k) cur[k] = next;
        }
    }
}

double signed_root(double p, std::size_t degree) {
    if (degree == 0) throw ArgumentError("signed_root: degree must be >= 1");
    if (degree == 1) return p;
    if (degree == 2) return std::copysign(std::sqrt(std::fabs(p)), p);
    return std::copysign(std::pow(std::fabs(p), 1.0 / static_cast<double>(degree)), p);
}

namespace {

inline double signed_pow(double v, double exponent) {
    if (exponent == 1.0) return v;
    if (exponent == 0.5) return std::copysign(std::sqrt(std::fabs(v)), v);
    return std::copysign(std::pow(std::fabs(v), exponent), v);
}

}  // namespace

void monomial_column(const Matrix& hidden, std::span<const std::uint32_t> mono,
                     std::span<double> out) {
    const std::size_t rows = hidden.rows();
    const std::size_t g = mono.size();
    if (g == 1) {
        hidden.copy_col(mono[0], out);
        return;
    }
    // Collapse the sorted multiset into (index, multiplicity / g) factors.
    // Each variable keeps its own sign through the root, so a pure power
    // like {x, x} reproduces x exactly.
    struct Factor {
        std::uint32_t index;
        double exponent;
    };
    std::vector<Factor> factors;
    for (std::size_t t = 0; t < g;) {
        std::size_t run = t + 1;
        while (run < g && mono[run] == mono[t]) ++run;
        factors.push_back(
            {mono[t], static_cast<double>(run - t) / static_cast<double>(g)});
        t = run;
    }
    if (factors.size() == 1) {  // exponent is exactly 1
        hidden.copy_col(factors[0].index, out);
        return;
    }
    for (std::size_t i = 0; i < rows; ++i) {
        double acc = signed_pow(hidden(i, factors[0].index), factors[0].exponent);
        for (std::size_t k = 1; k < factors.size(); ++k)
            acc *= signed_pow(hidden(i, factors[k].index), factors[k].exponent);
        out[i] = acc;
    }
}

Matrix expand(const Matrix& values, std::size_t d) {
    const MonomialSet monomials(values.cols(), d);
    Matrix out(values.rows(), monomials.size());
    std::vector<double> column(values.rows());
    for (std::size_t t = 0; t < monomials.size(); ++t) {
        monomial_column(values, monomials[t], column);
        out.set_col(t, column);
    }
    return out;
}

TransitionalSource::TransitionalSource(const Matrix& hidden, std::size_t d, bool materialize)
    : hidden_(hidden), monomials_(hidden.cols(), d), rows_(hidden.rows()) {
    if (materialize) {
        cache_.resize(rows_ * monomials_.size());
        for (std::size_t t = 0; t < monomials_.size(); ++t)
            monomial_column(hidden_, monomials_[t], {cache_.data() + t * rows_, rows_});
    }
}

std::span<const double> TransitionalSource::column(std::size_t t,
                                                   std::vector<double>& scratch) const {
    if (t >= monomials_.size()) throw ArgumentError("transitional column index out of range");
    if (!cache_.empty()) return {cache_.data() + t * rows_, rows_};
    scratch.resize(rows_);
    monomial_column(hidden_, monomials_[t], scratch);
    return scratch;
}

double TransitionalSource::min_value() const {
    double lo = std::numeric_limits<double>::infinity();
    if (!cache_.empty()) {
        for (double v : cache_) lo = std::min(lo, v);
        return lo;
    }
    std::vector<double> scratch(rows_);
    for (std::size_t t = 0; t < monomials_.size(); ++t) {
        monomial_column(hidden_, monomials_[t], scratch);
        for (double v : scratch) lo = std::min(lo, v);
    }
    return lo;
}

}  // namespace bioblend
