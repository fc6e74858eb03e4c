#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bioblend {

/// Dense row-major samples-by-features matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    void copy_col(std::size_t j, std::span<double> out) const {
        for (std::size_t i = 0; i < rows_; ++i) out[i] = data_[i * cols_ + j];
    }

    void set_col(std::size_t j, std::span<const double> in) {
        for (std::size_t i = 0; i < rows_; ++i) data_[i * cols_ + j] = in[i];
    }

    std::vector<double> col(std::size_t j) const {
        std::vector<double> out(rows_);
        copy_col(j, out);
        return out;
    }

    bool operator==(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

}  // namespace bioblend
