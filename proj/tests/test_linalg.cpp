#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "rieszdec/errors.hpp"
#include "rieszdec/linalg.hpp"
#include "rieszdec/rng.hpp"

using namespace rieszdec;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

Matrix permuted_rows(const Matrix& a, const std::vector<std::size_t>& perm) {
    Matrix p(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) p(i, j) = a(perm[i], j);
    return p;
}

Matrix unpack_lower(const Matrix& lu) {
    Matrix l = Matrix::identity(lu.rows());
    for (std::size_t i = 0; i < lu.rows(); ++i)
        for (std::size_t j = 0; j < i; ++j) l(i, j) = lu(i, j);
    return l;
}

Matrix unpack_upper(const Matrix& lu) {
    Matrix u(lu.rows(), lu.cols());
    for (std::size_t i = 0; i < lu.rows(); ++i)
        for (std::size_t j = i; j < lu.cols(); ++j) u(i, j) = lu(i, j);
    return u;
}

} // namespace

TEST_CASE("matmul identity and golden involution") {
    Rng rng(11);
    const Matrix a = random_gaussian(rng, 2, 2);
    CHECK(norm_fro(Matrix::identity(2) * a - a) == 0.0);

    const Matrix inv(2, 2, {5.0, -2.0, 12.0, -5.0});
    CHECK(norm_fro(inv * inv - Matrix::identity(2)) == 0.0);
}

TEST_CASE("matmul matches the triple-loop oracle") {
    Rng rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix a = random_gaussian(rng, 3, 3);
        const Matrix b = random_gaussian(rng, 3, 3);
        const Matrix c = a * b;
        const Matrix ref = oracles::matmul_naive(a, b);
        CHECK(norm_fro(c - ref) <= 1e-13 * norm_fro(ref));
    }
}

TEST_CASE("matmul rejects mismatched shapes") {
    CHECK_THROWS_AS(Matrix(2, 3) * Matrix(2, 2), DimensionError);
}

TEST_CASE("lu_factor identity and a pure swap") {
    const auto fi = lu_factor(Matrix::identity(2));
    CHECK(fi.permutation == std::vector<std::size_t>{0, 1});
    CHECK(fi.parity == 1);
    CHECK(norm_fro(fi.lu - Matrix::identity(2)) == 0.0);

    const auto fs = lu_factor(Matrix(2, 2, {0.0, 1.0, 1.0, 0.0}));
    CHECK(fs.permutation == std::vector<std::size_t>{1, 0});
    CHECK(fs.parity == -1);
    CHECK(norm_fro(fs.lu - Matrix::identity(2)) == 0.0);
    CHECK(std::abs(fs.determinant() - Complex(-1.0)) == 0.0);
}

TEST_CASE("lu_factor reconstruction residual on random matrices") {
    Rng rng(13);
    for (const std::size_t n : {3, 8, 17, 32}) {
        const Matrix a = random_gaussian(rng, n, n);
        const auto f = lu_factor(a);
        const Matrix recon = unpack_lower(f.lu) * unpack_upper(f.lu);
        const double res = norm_fro(permuted_rows(a, f.permutation) - recon);
        CHECK(res <= 32.0 * static_cast<double>(n) * kEps * norm_fro(a));
    }
}

TEST_CASE("lu_factor reports the singular stage") {
    const Matrix a(2, 2, {1.0, 2.0, 2.0, 4.0});
    try {
        lu_factor(a);
        FAIL("expected SingularMatrixError");
    } catch (const SingularMatrixError& e) {
        CHECK(e.stage == 1);
    }
    CHECK_THROWS_AS(lu_factor(Matrix(3, 3)), SingularMatrixError);
}

TEST_CASE("solve on trivial systems") {
    Rng rng(14);
    const Matrix b = random_gaussian(rng, 3, 2);
    CHECK(norm_fro(solve(lu_factor(Matrix::identity(3)), b) - b) == 0.0);

    const Matrix d = Matrix::diagonal({Complex(2.0), Complex(4.0)});
    const Matrix x = solve(lu_factor(d), Matrix::identity(2));
    CHECK(norm_fro(x - Matrix::diagonal({Complex(0.5), Complex(0.25)})) == 0.0);

    CHECK_THROWS_AS(solve(lu_factor(Matrix::identity(3)), Matrix(2, 2)), DimensionError);
}

TEST_CASE("solve round-trip against matmul") {
    Rng rng(15);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.next_u64() % 10);
        const Matrix a = random_gaussian(rng, n, n);
        const Matrix b = random_gaussian(rng, n, 3);
        const auto f = lu_factor(a);
        const Matrix x = solve(f, b);
        CHECK(norm_fro(a * x - b) <= 1e-10 * f.cond_proxy() * norm_fro(b));
    }
}

TEST_CASE("inverse of the golden similarity factor") {
    const Matrix v(2, 2, {1.0, 1.0, 2.0, 3.0});
    const Matrix expect(2, 2, {3.0, -1.0, -2.0, 1.0});
    CHECK(norm_fro(inverse(v) - expect) == 0.0);
    CHECK(norm_fro(inverse(Matrix::identity(4)) - Matrix::identity(4)) == 0.0);
}

TEST_CASE("inverse multiply-back residual") {
    Rng rng(16);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix a = random_gaussian(rng, 6, 6);
        const Matrix x = inverse(a);
        CHECK(norm_fro(a * x - Matrix::identity(6)) <= 1e-10);
    }
}

TEST_CASE("norms on known values") {
    CHECK(norm_fro(Matrix::identity(2)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(norm_op2_est(Matrix::diagonal({Complex(3.0), Complex(1.0)})) ==
          doctest::Approx(3.0).epsilon(1e-12));
    CHECK(norm_inf(Matrix(2, 2, {1.0, -2.0, 3.0, 4.0})) == doctest::Approx(7.0));
    CHECK(norm_max(Matrix(2, 2, {1.0, -2.0, 3.0, 4.0})) == doctest::Approx(4.0));
}

TEST_CASE("norm_op2_est matches the Jacobi oracle") {
    Rng rng(17);
    for (int trial = 0; trial < 12; ++trial) {
        const Matrix a = random_gaussian(rng, 5, 5);
        const double ref = oracles::op2_oracle(a);
        CHECK(norm_op2_est(a) == doctest::Approx(ref).epsilon(1e-6));
    }
}

TEST_CASE("operator norm brackets the Frobenius norm") {
    Rng rng(18);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.next_u64() % 7);
        const Matrix a = random_gaussian(rng, n, n);
        const double op2 = norm_op2_est(a);
        const double fro = norm_fro(a);
        CHECK(op2 <= fro * (1.0 + 1e-10));
        CHECK(fro <= std::sqrt(static_cast<double>(n)) * op2 * (1.0 + 1e-10));
    }
}

TEST_CASE("rrqr rank and golden basis direction") {
    CHECK(rrqr(Matrix::identity(3)).rank == 3);

    const Basis b = rrqr(Matrix(2, 2, {3.0, -1.0, 6.0, -2.0}));
    REQUIRE(b.rank == 1);
    // basis parallel to (1, 2)/sqrt(5)
    const Complex ratio = b.columns(1, 0) / b.columns(0, 0);
    CHECK(std::abs(ratio - 2.0) <= 1e-14);
    CHECK(std::abs(std::abs(b.columns(0, 0)) - 1.0 / std::sqrt(5.0)) <= 1e-14);

    CHECK(rrqr(Matrix(3, 3)).rank == 0);
    CHECK(rrqr(Matrix(3, 3)).columns.cols() == 0);
}

TEST_CASE("rrqr flags a pivot near the rank threshold") {
    // second singular value sits within a factor 10 of rank_tol * ||A||_F
    const Basis near = rrqr(Matrix::diagonal({Complex(1.0), Complex(3e-10)}), 1e-10);
    CHECK(near.ambiguous);
    const Basis clear = rrqr(Matrix::diagonal({Complex(1.0), Complex(0.5)}), 1e-10);
    CHECK_FALSE(clear.ambiguous);
}

TEST_CASE("rrqr recovers a constructed rank") {
    Rng rng(19);
    for (int trial = 0; trial < 10; ++trial) {
        // rank-2 4x4 as a sum of two outer products
        Matrix a(4, 4);
        for (int r = 0; r < 2; ++r) {
            const Matrix u = random_gaussian(rng, 4, 1);
            const Matrix v = random_gaussian(rng, 1, 4);
            a += u * v;
        }
        CHECK(rrqr(a).rank == 2);
    }
}

TEST_CASE("rrqr bases are orthonormal") {
    Rng rng(20);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.next_u64() % 8);
        const Basis b = rrqr(random_gaussian(rng, n, n));
        const Matrix gram = b.columns.adjoint() * b.columns;
        CHECK(norm_fro(gram - Matrix::identity(b.rank)) <=
              1e-12 * static_cast<double>(std::max<std::size_t>(b.rank, 1)));
    }
}
