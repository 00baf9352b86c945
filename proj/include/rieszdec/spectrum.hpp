#pragma once

#include <cstddef>
#include <vector>

#include "rieszdec/matrix.hpp"

namespace rieszdec {

/// Unitary reduction to upper Hessenberg form (Householder reflectors).
Matrix hessenberg(const Matrix& a);

/// All eigenvalues with algebraic multiplicity, via complex single-shift QR
/// iteration with Wilkinson shift and deflation on the Hessenberg form.
/// max_sweeps < 0 selects the default budget of 30 n total QR steps.
std::vector<Complex> eigenvalues(const Matrix& a, int max_sweeps = -1);

/// A group of eigenvalues isolated from the rest of the spectrum.
struct Cluster {
    Complex center;                 // arithmetic mean of the members
    std::vector<Complex> members;
    std::size_t multiplicity = 0;
    double separation = 0.0;        // min distance from center to any non-member;
                                    // +inf when the cluster is alone
};

struct SpectrumReport {
    std::vector<Complex> eigenvalues;
    std::vector<Cluster> clusters;
    double gap = 0.0;               // gap the clusters were formed with
};

/// 1e-6 * max(1, ||A||_F).
double default_gap(const Matrix& a);

/// Single-linkage grouping: two eigenvalues share a cluster iff they are
/// connected by a chain of pairwise distances < gap. Clusters are ordered by
/// first appearance of a member in the input sequence.
std::vector<Cluster> cluster(const std::vector<Complex>& eigs, double gap);

/// Eigenvalues (sorted by descending real, then imaginary part) plus their
/// clustering at the given gap. gap <= 0 selects default_gap(a).
SpectrumReport spectrum_report(const Matrix& a, double gap = -1.0, int max_sweeps = -1);

struct UnimodularityResult {
    bool pass = false;
    double max_deviation = 0.0;     // max_j | |lambda_j| - 1 |
};

UnimodularityResult unimodularity_check(const SpectrumReport& report, double tol);

} // namespace rieszdec
