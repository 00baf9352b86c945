#pragma once

#include <cstddef>

#include "rieszdec/linalg.hpp"
#include "rieszdec/matrix.hpp"
#include "rieszdec/spectrum.hpp"

namespace rieszdec {

namespace defaults {
inline constexpr int nodes = 64;
inline constexpr double tol = 1e-8;
} // namespace defaults

/// Circular Cauchy contour, traversed counterclockwise.
struct Contour {
    Complex center;
    double radius = 1.0;
    int nodes = defaults::nodes;
};

/// radius > 0 and finite, nodes >= 4; throws std::invalid_argument otherwise.
void validate(const Contour& c);

/// Spectral projection obtained from contour quadrature of the resolvent.
struct Projection {
    Complex value;                 // enclosed cluster center (= contour center)
    Matrix matrix;
    double idem_residual = 0.0;    // ||P^2 - P||_F
    Contour contour;
};

/// (wI - T)^{-1}. A singular shift surfaces as a ContourError carrying w.
Matrix resolvent(const Matrix& t, Complex w, double pivot_tol = defaults::pivot_tol);

/// Trapezoid rule on the circle:
///   P = (1/N) sum_k r e^{i theta_k} (w_k I - T)^{-1},
///   theta_k = 2 pi k / N, w_k = c + r e^{i theta_k}.
/// Nodes are summed in fixed index order, so results are bit-reproducible.
/// A contour enclosing nothing yields P ~ 0; that is not an error.
Projection riesz_projection(const Matrix& t, const Contour& gamma);

/// Circle around cluster j: center at the cluster center, radius
/// max(2 * internal spread, 0.4 * separation); a lone cluster gets
/// radius spread + 1. Throws ClusterError when separation <= 10 * gap.
Contour auto_contour(const SpectrumReport& report, std::size_t j, int nodes = defaults::nodes);

/// Orthonormal basis of range(P): the eigenspace for the enclosed eigenvalue.
Basis eigenspace(const Projection& p, double rank_tol = defaults::rank_tol);
/// Orthonormal basis of ker(P), computed as range(I - P): the invariant complement.
Basis complement(const Projection& p, double rank_tol = defaults::rank_tol);

/// Structure checks for an isolated spectral point: the range of P is an
/// eigenspace and both range and kernel are invariant under T.
struct KRReport {
    double eigen_residual = 0.0;             // ||T B - lambda B||_F on the range basis
    double range_invariance_residual = 0.0;  // ||(I-P) T P||_F
    double kernel_invariance_residual = 0.0; // ||P T (I-P)||_F
    double direct_sum_residual = 0.0;        // ||P^2 - P||_F
    std::size_t range_dim = 0;
    bool pass = false;                       // all residuals <= tol * max(1, ||T||_F)
};

KRReport verify_kr(const Matrix& t, Complex lambda, const Projection& p,
                   double tol = defaults::tol);

} // namespace rieszdec
