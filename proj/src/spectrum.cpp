#include "rieszdec/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rieszdec/errors.hpp"
#include "rieszdec/linalg.hpp"

namespace rieszdec {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

/// Eigenvalues of [[a, b], [c, d]]. The discriminant is formed from the
/// diagonal difference, not tr^2 - 4 det, which cancels catastrophically for
/// near-double eigenvalues; the smaller root comes from the product.
std::pair<Complex, Complex> eig_2x2(Complex a, Complex b, Complex c, Complex d) {
    const Complex mid = 0.5 * (a + d);
    const Complex disc = 0.5 * std::sqrt((a - d) * (a - d) + 4.0 * b * c);
    const Complex s1 = mid + disc;
    const Complex s2 = mid - disc;
    const Complex big = std::abs(s1) >= std::abs(s2) ? s1 : s2;
    if (big == 0.0) return {Complex(0.0), Complex(0.0)};
    return {big, (a * d - b * c) / big};
}

/// Wilkinson shift: the eigenvalue of the trailing 2x2 block closest to its
/// bottom-right entry.
Complex wilkinson_shift(const Matrix& h, std::size_t hi) {
    const auto [l1, l2] =
        eig_2x2(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
    return std::abs(l1 - h(hi, hi)) <= std::abs(l2 - h(hi, hi)) ? l1 : l2;
}

/// Complex Givens rotation: c real, s complex, such that
/// [[c, s], [-conj(s), c]] [a, b]^T = [r, 0]^T.
std::pair<double, Complex> givens(Complex a, Complex b) {
    const double am = std::abs(a), bm = std::abs(b);
    if (bm == 0.0) return {1.0, Complex(0.0)};
    if (am == 0.0) return {0.0, std::conj(b) / bm};
    const double r = std::hypot(am, bm);
    return {am / r, (a / am) * (std::conj(b) / r)};
}

/// One explicit single-shift QR step on the active block [lo, hi]:
/// H_b <- R Q + mu I with H_b - mu I = Q R, and the coupling blocks carried
/// along so the whole matrix stays unitarily similar to the input.
void qr_step(Matrix& h, std::size_t lo, std::size_t hi, Complex mu) {
    const std::size_t n = h.rows();
    for (std::size_t i = lo; i <= hi; ++i) h(i, i) -= mu;

    std::vector<double> cs(hi - lo);
    std::vector<Complex> sn(hi - lo);
    for (std::size_t k = lo; k < hi; ++k) {
        const auto [c, s] = givens(h(k, k), h(k + 1, k));
        cs[k - lo] = c;
        sn[k - lo] = s;
        for (std::size_t j = k; j < n; ++j) {
            const Complex t1 = h(k, j), t2 = h(k + 1, j);
            h(k, j) = c * t1 + s * t2;
            h(k + 1, j) = -std::conj(s) * t1 + c * t2;
        }
        h(k + 1, k) = 0.0;
    }
    for (std::size_t k = lo; k < hi; ++k) {
        const double c = cs[k - lo];
        const Complex s = sn[k - lo];
        for (std::size_t i = 0; i <= k + 1; ++i) {
            const Complex t1 = h(i, k), t2 = h(i, k + 1);
            h(i, k) = c * t1 + std::conj(s) * t2;
            h(i, k + 1) = -s * t1 + c * t2;
        }
    }
    for (std::size_t i = lo; i <= hi; ++i) h(i, i) += mu;
}

} // namespace

Matrix hessenberg(const Matrix& a) {
    require_square(a, "hessenberg");
    require_finite(a, "hessenberg");
    const std::size_t n = a.rows();
    Matrix h = a;
    if (n < 3) return h;

    std::vector<Complex> v(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double xnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) xnorm2 += std::norm(h(i, k));
        const double xnorm = std::sqrt(xnorm2);
        if (xnorm == 0.0) continue;

        const Complex alpha = h(k + 1, k);
        const Complex phase = alpha != 0.0 ? alpha / std::abs(alpha) : Complex(1.0);
        const Complex beta = -phase * xnorm;

        const std::size_t len = n - k - 1;
        v[0] = alpha - beta;
        for (std::size_t i = 1; i < len; ++i) v[i] = h(k + 1 + i, k);
        double vnorm2 = 0.0;
        for (std::size_t i = 0; i < len; ++i) vnorm2 += std::norm(v[i]);
        if (vnorm2 == 0.0) continue;
        const double tau = 2.0 / vnorm2;

        // left update: rows k+1..n-1
        for (std::size_t j = k; j < n; ++j) {
            Complex dot = 0.0;
            for (std::size_t i = 0; i < len; ++i) dot += std::conj(v[i]) * h(k + 1 + i, j);
            dot *= tau;
            for (std::size_t i = 0; i < len; ++i) h(k + 1 + i, j) -= dot * v[i];
        }
        // right update: columns k+1..n-1
        for (std::size_t i = 0; i < n; ++i) {
            Complex dot = 0.0;
            for (std::size_t j = 0; j < len; ++j) dot += h(i, k + 1 + j) * v[j];
            dot *= tau;
            for (std::size_t j = 0; j < len; ++j) h(i, k + 1 + j) -= dot * std::conj(v[j]);
        }
        h(k + 1, k) = beta;
        for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
    }
    return h;
}

std::vector<Complex> eigenvalues(const Matrix& a, int max_sweeps) {
    require_square(a, "eigenvalues");
    require_finite(a, "eigenvalues");
    const std::size_t n = a.rows();
    if (n == 0) return {};
    if (n == 1) return {a(0, 0)};
    if (max_sweeps <= 0) max_sweeps = 30 * static_cast<int>(n);

    Matrix h = hessenberg(a);
    const double hnorm = norm_fro(h);
    std::vector<Complex> eig;
    eig.reserve(n);

    std::size_t hi = n - 1;
    int iters_this_block = 0;
    int total_iters = 0;
    while (true) {
        // deflate negligible subdiagonal entries in [0, hi]
        for (std::size_t k = 1; k <= hi; ++k) {
            double s = std::abs(h(k - 1, k - 1)) + std::abs(h(k, k));
            if (s == 0.0) s = hnorm;
            if (std::abs(h(k, k - 1)) <= kEps * s) h(k, k - 1) = 0.0;
        }
        std::size_t lo = hi;
        while (lo > 0 && h(lo, lo - 1) != 0.0) --lo;

        if (lo == hi) {
            eig.push_back(h(hi, hi));
            iters_this_block = 0;
            if (hi == 0) break;
            --hi;
            continue;
        }
        if (lo + 1 == hi) {
            const auto [l1, l2] = eig_2x2(h(lo, lo), h(lo, hi), h(hi, lo), h(hi, hi));
            eig.push_back(l1);
            eig.push_back(l2);
            iters_this_block = 0;
            if (lo == 0) break;
            hi = lo - 1;
            continue;
        }

        if (total_iters++ >= max_sweeps) {
            throw ConvergenceError("eigenvalues: QR iteration stuck on block [" +
                                       std::to_string(lo) + ", " + std::to_string(hi) +
                                       "] after " + std::to_string(max_sweeps) + " sweeps",
                                   lo, hi);
        }
        Complex mu;
        if (iters_this_block > 0 && iters_this_block % 10 == 0) {
            // exceptional shift to break potential cycles
            const double kick = std::abs(h(hi, hi - 1)) + std::abs(h(hi - 1, hi - 2));
            mu = h(hi, hi) + Complex(0.736, 0.521) * kick;
        } else {
            mu = wilkinson_shift(h, hi);
        }
        ++iters_this_block;
        qr_step(h, lo, hi, mu);
    }
    return eig;
}

double default_gap(const Matrix& a) { return 1e-6 * std::max(1.0, norm_fro(a)); }

std::vector<Cluster> cluster(const std::vector<Complex>& eigs, double gap) {
    if (!(gap > 0.0)) throw std::invalid_argument("cluster: gap must be positive");
    const std::size_t n = eigs.size();
    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(eigs[i] - eigs[j]) < gap) parent[find(i)] = find(j);
        }
    }

    // clusters in order of first member appearance
    std::vector<std::size_t> roots;
    std::vector<Cluster> out;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find(i);
        std::size_t idx = roots.size();
        for (std::size_t k = 0; k < roots.size(); ++k) {
            if (roots[k] == r) {
                idx = k;
                break;
            }
        }
        if (idx == roots.size()) {
            roots.push_back(r);
            out.emplace_back();
        }
        out[idx].members.push_back(eigs[i]);
    }

    for (auto& c : out) {
        c.multiplicity = c.members.size();
        Complex sum = 0.0;
        for (const auto& m : c.members) sum += m;
        c.center = sum / static_cast<double>(c.multiplicity);
    }
    for (std::size_t k = 0; k < out.size(); ++k) {
        double sep = std::numeric_limits<double>::infinity();
        for (std::size_t l = 0; l < out.size(); ++l) {
            if (l == k) continue;
            for (const auto& m : out[l].members) sep = std::min(sep, std::abs(out[k].center - m));
        }
        out[k].separation = sep;
    }
    return out;
}

SpectrumReport spectrum_report(const Matrix& a, double gap, int max_sweeps) {
    if (gap <= 0.0) gap = default_gap(a);
    SpectrumReport r;
    r.gap = gap;
    r.eigenvalues = eigenvalues(a, max_sweeps);
    std::sort(r.eigenvalues.begin(), r.eigenvalues.end(), [](Complex x, Complex y) {
        if (x.real() != y.real()) return x.real() > y.real();
        return x.imag() > y.imag();
    });
    r.clusters = cluster(r.eigenvalues, gap);
    return r;
}

UnimodularityResult unimodularity_check(const SpectrumReport& report, double tol) {
    UnimodularityResult u;
    for (const auto& l : report.eigenvalues) {
        u.max_deviation = std::max(u.max_deviation, std::abs(std::abs(l) - 1.0));
    }
    u.pass = u.max_deviation <= tol;
    return u;
}

} // namespace rieszdec
