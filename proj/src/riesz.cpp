#include "rieszdec/riesz.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "rieszdec/errors.hpp"

namespace rieszdec {

void validate(const Contour& c) {
    if (!(c.radius > 0.0) || !std::isfinite(c.radius)) {
        throw std::invalid_argument("contour: radius must be positive and finite");
    }
    if (c.nodes < 4) throw std::invalid_argument("contour: at least 4 nodes required");
    if (!std::isfinite(c.center.real()) || !std::isfinite(c.center.imag())) {
        throw std::invalid_argument("contour: center must be finite");
    }
}

Matrix resolvent(const Matrix& t, Complex w, double pivot_tol) {
    require_square(t, "resolvent");
    Matrix shifted = -t;
    for (std::size_t i = 0; i < t.rows(); ++i) shifted(i, i) += w;
    try {
        return solve(lu_factor(shifted, pivot_tol), Matrix::identity(t.rows()));
    } catch (const SingularMatrixError&) {
        throw ContourError("resolvent: contour touches spectrum at w = (" +
                               std::to_string(w.real()) + ", " + std::to_string(w.imag()) + ")",
                           w);
    }
}

Projection riesz_projection(const Matrix& t, const Contour& gamma) {
    require_square(t, "riesz_projection");
    require_finite(t, "riesz_projection");
    validate(gamma);

    const std::size_t n = t.rows();
    const int nn = gamma.nodes;
    Matrix p(n, n);
    for (int k = 0; k < nn; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / nn;
        const Complex unit(std::cos(theta), std::sin(theta));
        const Complex w = gamma.center + gamma.radius * unit;
        const Matrix res = resolvent(t, w);
        const Complex weight = gamma.radius * unit / static_cast<double>(nn);
        p += weight * res;
    }

    Projection out;
    out.value = gamma.center;
    out.matrix = p;
    out.idem_residual = norm_fro(p * p - p);
    out.contour = gamma;
    return out;
}

Contour auto_contour(const SpectrumReport& report, std::size_t j, int nodes) {
    if (j >= report.clusters.size()) {
        throw std::invalid_argument("auto_contour: cluster index out of range");
    }
    const Cluster& c = report.clusters[j];
    double spread = 0.0;
    for (const auto& m : c.members) spread = std::max(spread, std::abs(m - c.center));

    Contour gamma;
    gamma.center = c.center;
    gamma.nodes = nodes;
    if (report.clusters.size() == 1) {
        gamma.radius = spread + 1.0;
    } else {
        if (c.separation <= 10.0 * report.gap) {
            throw ClusterError("auto_contour: clusters too close (separation " +
                               std::to_string(c.separation) + " <= 10 * gap " +
                               std::to_string(report.gap) + ")");
        }
        gamma.radius = std::max(2.0 * spread, 0.4 * c.separation);
    }
    validate(gamma);
    return gamma;
}

Basis eigenspace(const Projection& p, double rank_tol) { return rrqr(p.matrix, rank_tol); }

Basis complement(const Projection& p, double rank_tol) {
    require_square(p.matrix, "complement");
    return rrqr(Matrix::identity(p.matrix.rows()) - p.matrix, rank_tol);
}

KRReport verify_kr(const Matrix& t, Complex lambda, const Projection& p, double tol) {
    require_square(t, "verify_kr");
    require_same_shape(t, p.matrix, "verify_kr");
    const Matrix id = Matrix::identity(t.rows());
    const Matrix& pm = p.matrix;
    const Matrix co = id - pm;

    KRReport r;
    const Basis b = eigenspace(p);
    r.range_dim = b.rank;
    r.eigen_residual = norm_fro(t * b.columns - lambda * b.columns);
    r.range_invariance_residual = norm_fro(co * (t * pm));
    r.kernel_invariance_residual = norm_fro(pm * (t * co));
    r.direct_sum_residual = norm_fro(pm * pm - pm);
    const double bound = tol * std::max(1.0, norm_fro(t));
    r.pass = r.eigen_residual <= bound && r.range_invariance_residual <= bound &&
             r.kernel_invariance_residual <= bound && r.direct_sum_residual <= bound;
    return r;
}

} // namespace rieszdec
