#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace colocal {

/// Dense row-major matrix over an exact scalar type (mpz_class or mpq_class).
template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<long>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
            for (long v : row) data_.emplace_back(v);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool is_zero() const {
        for (const auto& v : data_)
            if (v != 0) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    Matrix column(std::size_t c) const {
        Matrix v(rows_, 1);
        for (std::size_t r = 0; r < rows_; ++r) v(r, 0) = (*this)(r, c);
        return v;
    }

    /// Columns [first, first + count).
    Matrix columns(std::size_t first, std::size_t count) const {
        Matrix v(rows_, count);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < count; ++c) v(r, c) = (*this)(r, first + c);
        return v;
    }

    Matrix rows_range(std::size_t first, std::size_t count) const {
        Matrix v(count, cols_);
        for (std::size_t r = 0; r < count; ++r)
            for (std::size_t c = 0; c < cols_; ++c) v(r, c) = (*this)(first + r, c);
        return v;
    }

    /// [this | other]; row counts must agree (an empty operand adopts the other's rows).
    Matrix hcat(const Matrix& other) const {
        std::size_t rows = rows_;
        if (cols_ == 0) rows = other.rows_;
        else if (other.cols_ != 0 && other.rows_ != rows_)
            throw std::invalid_argument("hcat: row mismatch");
        Matrix m(rows, cols_ + other.cols_);
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c);
            for (std::size_t c = 0; c < other.cols_; ++c) m(r, cols_ + c) = other(r, c);
        }
        return m;
    }

    Matrix vcat(const Matrix& other) const { return transpose().hcat(other.transpose()).transpose(); }

    /// Block diagonal sum.
    Matrix block_sum(const Matrix& other) const {
        Matrix m(rows_ + other.rows_, cols_ + other.cols_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c);
        for (std::size_t r = 0; r < other.rows_; ++r)
            for (std::size_t c = 0; c < other.cols_; ++c) m(rows_ + r, cols_ + c) = other(r, c);
        return m;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
        Matrix m(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += aik * b(k, j);
            }
        return m;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum: shape mismatch");
        Matrix m = a;
        for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] += b.data_[i];
        return m;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        Matrix nb = b;
        for (auto& v : nb.data_) v = -v;
        return a + nb;
    }

    Matrix scaled(const T& s) const {
        Matrix m = *this;
        for (auto& v : m.data_) v *= s;
        return m;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    // Elementary operations used by the eliminations.
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
    }
    /// row[dst] += f * row[src]
    void add_row(std::size_t dst, std::size_t src, const T& f) {
        if (f == 0) return;
        for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += f * (*this)(src, c);
    }
    /// col[dst] += f * col[src]
    void add_col(std::size_t dst, std::size_t src, const T& f) {
        if (f == 0) return;
        for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += f * (*this)(r, src);
    }
    void negate_row(std::size_t r) {
        for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
    }
    void negate_col(std::size_t c) {
        for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
    }

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t r = 0; r < rows_; ++r) {
            s += r ? "; " : "";
            for (std::size_t c = 0; c < cols_; ++c) {
                s += c ? " " : "";
                s += (*this)(r, c).get_str();
            }
        }
        return s + "]";
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<mpz_class>;
using QMatrix = Matrix<mpq_class>;

}  // namespace colocal
