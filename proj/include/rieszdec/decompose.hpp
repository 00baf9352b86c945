#pragma once

#include <optional>
#include <vector>

#include "rieszdec/riesz.hpp"

namespace rieszdec {

/// One Riesz projection per isolated cluster plus the residuals of the
/// decomposition identities.
struct ProjectionBundle {
    std::vector<Projection> projections;
    double resolution_residual = 0.0;     // ||sum_j P_j - I||_F
    double orthogonality_residual = 0.0;  // max_{i != j} ||P_i P_j||_F
    double reconstruction_residual = 0.0; // ||T - sum_j lambda_j P_j||_F
};

/// Full finite-spectrum decomposition T = sum_j lambda_j P_j. T must be
/// invertible: an eigenvalue within tol * max(1, ||T||_F) of zero is rejected.
ProjectionBundle spectral_decomposition(const Matrix& t, double gap = -1.0,
                                        int nodes = defaults::nodes,
                                        double tol = defaults::tol);

/// Same, reusing an already-computed spectrum report.
ProjectionBundle decompose_from_report(const Matrix& t, const SpectrumReport& report,
                                       int nodes = defaults::nodes,
                                       double tol = defaults::tol);

/// P_j = prod_{i != j}(T - lambda_i I) / prod_{i != j}(lambda_j - lambda_i).
/// Values must be pairwise distinct (min distance > 1e-10).
std::vector<Matrix> lagrange_projections(const Matrix& t, const std::vector<Complex>& values);

/// || prod_j (T - lambda_j I) ||_F / prod_j (||T||_F + |lambda_j|).
/// Factors are multiplied left-to-right in ascending order of arg(lambda),
/// ties broken by modulus, so the value is deterministic.
double algebraic_certificate(const Matrix& t, const std::vector<Complex>& values);

/// Single-point spectrum check: a power-bounded operator with spectrum {lambda}
/// must equal lambda I. Errors out on multi-cluster spectra.
struct GelfandResult {
    Complex lambda;                   // cluster center
    double residual = 0.0;            // ||T - lambda I||_F
    double unimodular_deviation = 0.0;
    bool is_scalar = false;           // residual <= tol * max(1, ||T||_F)
};

GelfandResult gelfand_check(const Matrix& t, double tol = defaults::tol, double gap = -1.0);

enum class Verdict { decomposable, not_decomposable };
const char* to_string(Verdict v);

/// Residuals of every decomposition identity checked on one operator.
struct Certificate {
    double algebraic_residual = 0.0;
    double lagrange_agreement = 0.0;       // max_j ||P_j^Lagrange - P_j^Riesz||_F
    std::optional<double> gelfand_residual; // present only for a single cluster
    double unimodular_deviation = 0.0;
    Verdict verdict = Verdict::not_decomposable;
};

struct CertifyResult {
    Certificate certificate;
    ProjectionBundle bundle;
    SpectrumReport report;
};

CertifyResult certify_full(const Matrix& t, double gap = -1.0, int nodes = defaults::nodes,
                           double tol = defaults::tol);
Certificate certify(const Matrix& t, double gap = -1.0, int nodes = defaults::nodes,
                    double tol = defaults::tol);

} // namespace rieszdec
