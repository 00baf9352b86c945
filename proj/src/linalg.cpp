#include "rieszdec/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "rieszdec/errors.hpp"
#include "rieszdec/rng.hpp"

namespace rieszdec {

Complex LUFactors::determinant() const {
    Complex det = static_cast<double>(parity);
    for (std::size_t k = 0; k < order(); ++k) det *= lu(k, k);
    return det;
}

double LUFactors::cond_proxy() const {
    double pmax = 0.0;
    double pmin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < order(); ++k) {
        const double p = std::abs(lu(k, k));
        pmax = std::max(pmax, p);
        pmin = std::min(pmin, p);
    }
    return pmin > 0.0 ? pmax / pmin : std::numeric_limits<double>::infinity();
}

LUFactors lu_factor(const Matrix& a, double pivot_tol) {
    require_square(a, "lu_factor");
    require_finite(a, "lu_factor");
    const std::size_t n = a.rows();

    LUFactors f;
    f.lu = a;
    f.parity = 1;
    f.permutation.resize(n);
    std::iota(f.permutation.begin(), f.permutation.end(), std::size_t{0});

    const double scale = norm_inf(a);
    Matrix& lu = f.lu;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double pmag = std::abs(lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double m = std::abs(lu(i, k));
            if (m > pmag) {
                pmag = m;
                p = i;
            }
        }
        if (pmag < pivot_tol * scale || pmag == 0.0) {
            throw SingularMatrixError("lu_factor: pivot " + std::to_string(pmag) +
                                          " below tolerance at stage " + std::to_string(k),
                                      k);
        }
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
            std::swap(f.permutation[k], f.permutation[p]);
            f.parity = -f.parity;
        }
        const Complex d = lu(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex m = lu(i, k) / d;
            lu(i, k) = m;
            if (m == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= m * lu(k, j);
        }
    }
    return f;
}

Matrix solve(const LUFactors& f, const Matrix& b) {
    const std::size_t n = f.order();
    if (b.rows() != n) throw DimensionError("solve: right-hand side has wrong row count");
    const std::size_t m = b.cols();
    const Matrix& lu = f.lu;

    Matrix x(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) x(i, j) = b(f.permutation[i], j);

    // forward substitution with the unit-lower factor
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t k = 0; k < i; ++k) {
            const Complex l = lu(i, k);
            if (l == 0.0) continue;
            for (std::size_t j = 0; j < m; ++j) x(i, j) -= l * x(k, j);
        }
    }
    // back substitution with the upper factor
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t k = ii + 1; k < n; ++k) {
            const Complex u = lu(ii, k);
            if (u == 0.0) continue;
            for (std::size_t j = 0; j < m; ++j) x(ii, j) -= u * x(k, j);
        }
        const Complex d = lu(ii, ii);
        for (std::size_t j = 0; j < m; ++j) x(ii, j) /= d;
    }
    return x;
}

Matrix inverse(const Matrix& a, double pivot_tol) {
    const LUFactors f = lu_factor(a, pivot_tol);
    const std::size_t n = a.rows();
    const Matrix id = Matrix::identity(n);
    Matrix x = solve(f, id);

    // One Newton step X <- X (2I - A X), kept only when it tightens the residual.
    const Matrix r0 = a * x - id;
    Matrix x1 = x * (2.0 * id - a * x);
    const Matrix r1 = a * x1 - id;
    if (norm_fro(r1) < norm_fro(r0)) return x1;
    return x;
}

double norm_fro(const Matrix& a) {
    double s = 0.0;
    for (const auto& e : a.entries()) s += std::norm(e);
    return std::sqrt(s);
}

double norm_inf(const Matrix& a) {
    double best = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) row += std::abs(a(i, j));
        best = std::max(best, row);
    }
    return best;
}

double norm_max(const Matrix& a) {
    double best = 0.0;
    for (const auto& e : a.entries()) best = std::max(best, std::abs(e));
    return best;
}

namespace {

/// Overflow-safe Euclidean norm: scale by the largest component first, so
/// vectors with entries up to ~1e308 still produce a finite result.
double vec_norm(const std::vector<Complex>& v) {
    double m = 0.0;
    for (const auto& e : v) {
        m = std::max({m, std::abs(e.real()), std::abs(e.imag())});
    }
    if (m == 0.0 || !std::isfinite(m)) return m;
    double s = 0.0;
    for (const auto& e : v) {
        const double re = e.real() / m;
        const double im = e.imag() / m;
        s += re * re + im * im;
    }
    return m * std::sqrt(s);
}

} // namespace

double norm_op2_est(const Matrix& a, int iters) {
    if (iters < 1) throw std::invalid_argument("norm_op2_est: iters must be >= 1");
    if (a.rows() == 0 || a.cols() == 0) return 0.0;

    const std::size_t m = a.rows(), n = a.cols();
    Rng rng(0x02e57a11edULL);  // fixed stream: estimates are reproducible
    std::vector<Complex> v(n);
    for (auto& e : v) e = rng.next_cgauss();
    const double vn = vec_norm(v);
    for (auto& e : v) e /= vn;

    std::vector<Complex> w(m), u(n);
    double est = 0.0, prev = 0.0;
    for (int it = 0; it < iters; ++it) {
        for (std::size_t i = 0; i < m; ++i) {
            Complex s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += a(i, j) * v[j];
            w[i] = s;
        }
        est = vec_norm(w);  // ||A v|| with ||v|| = 1
        if (!std::isfinite(est)) return est;  // norm beyond the representable range
        if (est == 0.0) return prev;          // v landed in the null space
        for (std::size_t j = 0; j < n; ++j) {
            Complex s = 0.0;
            for (std::size_t i = 0; i < m; ++i) s += std::conj(a(i, j)) * w[i];
            u[j] = s;
        }
        const double un = vec_norm(u);
        if (un == 0.0 || !std::isfinite(un)) break;
        for (std::size_t j = 0; j < n; ++j) v[j] = u[j] / un;
        if (it >= 3 && est - prev <= 1e-13 * est) break;
        prev = est;
    }
    return est;
}

Basis rrqr(const Matrix& a, double rank_tol) {
    const std::size_t m = a.rows(), n = a.cols();
    const double threshold = rank_tol * norm_fro(a);

    std::vector<std::vector<Complex>> cols(n, std::vector<Complex>(m));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m; ++i) cols[j][i] = a(i, j);

    std::vector<bool> used(n, false);
    std::vector<std::vector<Complex>> q;
    bool ambiguous = false;

    while (q.size() < std::min(m, n)) {
        std::size_t best = n;
        double pivot = -1.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j]) continue;
            const double nj = vec_norm(cols[j]);
            if (nj > pivot) {
                pivot = nj;
                best = j;
            }
        }
        if (best == n) break;
        if (threshold > 0.0 && pivot > threshold / 10.0 && pivot < threshold * 10.0) {
            ambiguous = true;
        }
        if (pivot <= threshold) break;
        used[best] = true;

        // one extra reorthogonalization pass before normalizing
        std::vector<Complex> r = cols[best];
        for (const auto& qi : q) {
            Complex dot = 0.0;
            for (std::size_t i = 0; i < m; ++i) dot += std::conj(qi[i]) * r[i];
            for (std::size_t i = 0; i < m; ++i) r[i] -= dot * qi[i];
        }
        const double rn = vec_norm(r);
        if (rn <= threshold) break;
        for (auto& e : r) e /= rn;
        q.push_back(std::move(r));
        const auto& qk = q.back();

        for (std::size_t j = 0; j < n; ++j) {
            if (used[j]) continue;
            Complex dot = 0.0;
            for (std::size_t i = 0; i < m; ++i) dot += std::conj(qk[i]) * cols[j][i];
            for (std::size_t i = 0; i < m; ++i) cols[j][i] -= dot * qk[i];
        }
    }

    Basis b;
    b.rank = q.size();
    b.ambiguous = ambiguous;
    b.columns = Matrix(m, b.rank);
    for (std::size_t k = 0; k < b.rank; ++k)
        for (std::size_t i = 0; i < m; ++i) b.columns(i, k) = q[k][i];
    return b;
}

} // namespace rieszdec
