#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace rieszdec {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major storage.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}
    Matrix(std::size_t rows, std::size_t cols, std::initializer_list<Complex> init);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(const std::vector<Complex>& diag);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    bool empty() const { return entries_.empty(); }

    Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    Complex operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    std::vector<Complex>& entries() { return entries_; }
    const std::vector<Complex>& entries() const { return entries_; }

    /// Conjugate transpose.
    Matrix adjoint() const;
    Complex trace() const;

    Matrix& operator+=(const Matrix& rhs);
    Matrix& operator-=(const Matrix& rhs);
    Matrix& operator*=(Complex s);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator*(Complex s, Matrix m);
Matrix operator*(Matrix m, Complex s);
Matrix operator-(Matrix m);

/// Standard complex matrix product; throws DimensionError on shape mismatch.
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);

bool is_finite(const Matrix& m);
void require_finite(const Matrix& m, const char* where);
void require_square(const Matrix& m, const char* where);
void require_same_shape(const Matrix& a, const Matrix& b, const char* where);

} // namespace rieszdec
