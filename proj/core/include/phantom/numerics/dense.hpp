#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "phantom/errors.hpp"

namespace phantom {

/// Row-major square or rectangular matrix. Used for small materializations
/// and per-momentum blocks only.
template <class T>
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<T> multiply(std::span<const T> x) const
    {
        if (x.size() != cols_)
            throw DomainError("DenseMatrix: dimension mismatch");
        std::vector<T> y(rows_, T(0));
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                if (!((*this)(r, c) == T(0)))
                    y[r] += (*this)(r, c) * x[c];
        return y;
    }

    friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b)
    {
        if (a.cols_ != b.rows_)
            throw DomainError("DenseMatrix: dimension mismatch");
        DenseMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k) == T(0))
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    out(i, j) += a(i, k) * b(k, j);
            }
        return out;
    }

    friend DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b)
    {
        DenseMatrix out(a);
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            out.data_[i] -= b.data_[i];
        return out;
    }

    friend bool operator==(const DenseMatrix& a, const DenseMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

} // namespace phantom
