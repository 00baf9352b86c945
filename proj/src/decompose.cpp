#include "rieszdec/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "rieszdec/errors.hpp"

namespace rieszdec {

const char* to_string(Verdict v) {
    return v == Verdict::decomposable ? "decomposable" : "not-decomposable";
}

ProjectionBundle decompose_from_report(const Matrix& t, const SpectrumReport& report,
                                       int nodes, double tol) {
    require_square(t, "spectral_decomposition");
    require_finite(t, "spectral_decomposition");

    const double scale = std::max(1.0, norm_fro(t));
    for (const auto& l : report.eigenvalues) {
        if (std::abs(l) <= tol * scale) {
            throw SingularMatrixError(
                "spectral_decomposition: operator not invertible (eigenvalue within "
                "tolerance of zero)",
                0);
        }
    }

    ProjectionBundle bundle;
    for (std::size_t j = 0; j < report.clusters.size(); ++j) {
        const Contour gamma = auto_contour(report, j, nodes);
        Projection p = riesz_projection(t, gamma);
        p.value = report.clusters[j].center;
        bundle.projections.push_back(std::move(p));
    }

    const std::size_t n = t.rows();
    Matrix sum(n, n);
    Matrix recon(n, n);
    for (const auto& p : bundle.projections) {
        sum += p.matrix;
        recon += p.value * p.matrix;
    }
    bundle.resolution_residual = norm_fro(sum - Matrix::identity(n));
    bundle.reconstruction_residual = norm_fro(t - recon);
    bundle.orthogonality_residual = 0.0;
    for (std::size_t i = 0; i < bundle.projections.size(); ++i) {
        for (std::size_t j = 0; j < bundle.projections.size(); ++j) {
            if (i == j) continue;
            bundle.orthogonality_residual =
                std::max(bundle.orthogonality_residual,
                         norm_fro(bundle.projections[i].matrix * bundle.projections[j].matrix));
        }
    }
    return bundle;
}

ProjectionBundle spectral_decomposition(const Matrix& t, double gap, int nodes, double tol) {
    return decompose_from_report(t, spectrum_report(t, gap), nodes, tol);
}

std::vector<Matrix> lagrange_projections(const Matrix& t, const std::vector<Complex>& values) {
    require_square(t, "lagrange_projections");
    if (values.empty()) throw std::invalid_argument("lagrange_projections: no values");
    for (std::size_t i = 0; i < values.size(); ++i) {
        for (std::size_t j = i + 1; j < values.size(); ++j) {
            if (std::abs(values[i] - values[j]) <= 1e-10) {
                throw ClusterError("lagrange_projections: values " + std::to_string(i) +
                                   " and " + std::to_string(j) + " coincide");
            }
        }
    }

    const std::size_t n = t.rows();
    std::vector<Matrix> out;
    out.reserve(values.size());
    for (std::size_t j = 0; j < values.size(); ++j) {
        Matrix num = Matrix::identity(n);
        Complex den = 1.0;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i == j) continue;
            Matrix factor = t;
            for (std::size_t k = 0; k < n; ++k) factor(k, k) -= values[i];
            num = num * factor;
            den *= values[j] - values[i];
        }
        out.push_back(num * (1.0 / den));
    }
    return out;
}

double algebraic_certificate(const Matrix& t, const std::vector<Complex>& values) {
    require_square(t, "algebraic_certificate");
    if (values.empty()) throw std::invalid_argument("algebraic_certificate: no values");

    // fixed factor order: ascending argument, ties by modulus
    std::vector<Complex> sorted = values;
    std::sort(sorted.begin(), sorted.end(), [](Complex a, Complex b) {
        const double aa = std::arg(a), ab = std::arg(b);
        if (aa != ab) return aa < ab;
        return std::abs(a) < std::abs(b);
    });

    const std::size_t n = t.rows();
    const double tnorm = norm_fro(t);
    Matrix prod = Matrix::identity(n);
    double denom = 1.0;
    for (const auto& l : sorted) {
        Matrix factor = t;
        for (std::size_t k = 0; k < n; ++k) factor(k, k) -= l;
        prod = prod * factor;
        denom *= tnorm + std::abs(l);
    }
    return norm_fro(prod) / denom;
}

GelfandResult gelfand_check(const Matrix& t, double tol, double gap) {
    require_square(t, "gelfand_check");
    const SpectrumReport report = spectrum_report(t, gap);
    if (report.clusters.size() != 1) {
        throw ClusterError("gelfand_check: spectrum has " +
                           std::to_string(report.clusters.size()) +
                           " clusters; use spectral_decomposition");
    }
    GelfandResult g;
    g.lambda = report.clusters[0].center;
    Matrix diff = t;
    for (std::size_t k = 0; k < t.rows(); ++k) diff(k, k) -= g.lambda;
    g.residual = norm_fro(diff);
    g.unimodular_deviation = std::abs(std::abs(g.lambda) - 1.0);
    g.is_scalar = g.residual <= tol * std::max(1.0, norm_fro(t));
    return g;
}

CertifyResult certify_full(const Matrix& t, double gap, int nodes, double tol) {
    CertifyResult res;
    res.report = spectrum_report(t, gap);
    res.bundle = decompose_from_report(t, res.report, nodes, tol);

    std::vector<Complex> values;
    for (const auto& p : res.bundle.projections) values.push_back(p.value);

    Certificate& cert = res.certificate;
    const std::vector<Matrix> lag = lagrange_projections(t, values);
    cert.lagrange_agreement = 0.0;
    for (std::size_t j = 0; j < lag.size(); ++j) {
        cert.lagrange_agreement = std::max(
            cert.lagrange_agreement, norm_fro(lag[j] - res.bundle.projections[j].matrix));
    }
    cert.algebraic_residual = algebraic_certificate(t, values);
    cert.unimodular_deviation = unimodularity_check(res.report, tol).max_deviation;
    if (values.size() == 1) {
        Matrix diff = t;
        for (std::size_t k = 0; k < t.rows(); ++k) diff(k, k) -= values[0];
        cert.gelfand_residual = norm_fro(diff);
    }

    const double bound = tol * std::max(1.0, norm_fro(t));
    bool ok = res.bundle.resolution_residual <= bound &&
              res.bundle.orthogonality_residual <= bound &&
              res.bundle.reconstruction_residual <= bound &&
              cert.lagrange_agreement <= bound && cert.algebraic_residual <= bound &&
              cert.unimodular_deviation <= bound;
    if (cert.gelfand_residual && *cert.gelfand_residual > bound) ok = false;
    cert.verdict = ok ? Verdict::decomposable : Verdict::not_decomposable;
    return res;
}

Certificate certify(const Matrix& t, double gap, int nodes, double tol) {
    return certify_full(t, gap, nodes, tol).certificate;
}

} // namespace rieszdec
