#ifndef SAW_MATRIX_HPP
#define SAW_MATRIX_HPP

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "saw/errors.hpp"
#include "saw/rational.hpp"

namespace saw {

// Small dense row-major matrix. T is double or Rational.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T fill = T(0)) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<T> data) : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows * cols) throw DimensionMismatch("matrix data size mismatch");
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }
    // e' v: every row equal to v.
    static Matrix stable(std::size_t rows, std::span<const T> v) {
        Matrix m(rows, v.size());
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[j];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    // Submatrix on the given rows and all columns.
    Matrix rows_subset(std::span<const std::size_t> idx) const {
        Matrix m(idx.size(), cols_);
        for (std::size_t r = 0; r < idx.size(); ++r)
            for (std::size_t j = 0; j < cols_; ++j) m(r, j) = (*this)(idx[r], j);
        return m;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product: inner dimensions differ");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == T(0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

template <class T>
Matrix<T> product(std::span<const Matrix<T>> chain) {
    if (chain.empty()) throw InvalidArgument("empty matrix chain");
    Matrix<T> acc = chain.front();
    for (std::size_t i = 1; i < chain.size(); ++i) acc = acc * chain[i];
    return acc;
}

Matrix<double> to_double(const Matrix<Rational>& m);

// Fixture format: "m n" header, then m rows of n "num/den" tokens.
Matrix<Rational> read_rational_matrix(std::istream& in);
void write_rational_matrix(std::ostream& out, const Matrix<Rational>& m);

}  // namespace saw

#endif  // SAW_MATRIX_HPP
