#pragma once

#include <cstddef>
#include <vector>

#include "rieszdec/matrix.hpp"

namespace rieszdec {

namespace defaults {
inline constexpr double pivot_tol = 1e-13;
inline constexpr double rank_tol = 1e-10;
inline constexpr int op2_iters = 100;
} // namespace defaults

/// Partial-pivoting LU factorization. Unit-lower and upper factors are packed
/// into `lu`; position i of `permutation` holds the original row index, so the
/// reconstruction identity reads (PA)(i,:) = A(permutation[i],:) = (LU)(i,:).
struct LUFactors {
    std::vector<std::size_t> permutation;
    Matrix lu;
    int parity = 1;

    std::size_t order() const { return lu.rows(); }
    Complex determinant() const;
    /// Rough conditioning proxy: max/min pivot magnitude ratio.
    double cond_proxy() const;
};

LUFactors lu_factor(const Matrix& a, double pivot_tol = defaults::pivot_tol);

/// Solve A X = B column-wise from the factorization of A.
Matrix solve(const LUFactors& f, const Matrix& b);

/// Inverse via LU solves plus one residual-guarded Newton refinement pass.
Matrix inverse(const Matrix& a, double pivot_tol = defaults::pivot_tol);

double norm_fro(const Matrix& a);
/// Induced max-row-sum norm.
double norm_inf(const Matrix& a);
/// Entrywise max magnitude.
double norm_max(const Matrix& a);
/// Largest singular value by power iteration on A^H A. Deterministic
/// (fixed internal start stream); stops early once the estimate stalls.
double norm_op2_est(const Matrix& a, int iters = defaults::op2_iters);

/// Orthonormal basis of a numerical column space.
struct Basis {
    Matrix columns;          // n x rank, orthonormal columns
    std::size_t rank = 0;
    bool ambiguous = false;  // some pivot fell within a factor 10 of the rank threshold
};

/// Column-pivoted modified Gram-Schmidt with one reorthogonalization pass.
/// Columns whose residual norm stays above rank_tol * ||A||_F are accepted.
Basis rrqr(const Matrix& a, double rank_tol = defaults::rank_tol);

} // namespace rieszdec
