#pragma once

#include <cstdint>
#include <vector>

#include "rieszdec/decompose.hpp"
#include "rieszdec/rng.hpp"

namespace rieszdec {

namespace defaults {
inline constexpr int horizon = 256;
inline constexpr double growth_tol = 2.0;
inline constexpr double norm_escape = 1e100;
} // namespace defaults

/// 2-norm estimates of T^n over n = -N..N.
struct PowerProfile {
    int horizon = 0;             // effective N; norms has length 2N+1
    std::vector<double> norms;   // norms[N + n] = ||T^n||; norms[N] = 1 exactly
    double sup_observed = 0.0;
    bool escaped = false;        // some ||T^n|| exceeded 1e100; profile truncated

    double at(int n) const;
};

PowerProfile power_profile(const Matrix& t, int horizon = defaults::horizon);

enum class GrowthClass { bounded, polynomial, exponential };
const char* to_string(GrowthClass g);

/// Dual-regression diagnostics over the window n in [N/4, N] of the symmetric
/// envelope max(||T^n||, ||T^-n||). Slopes are base-10.
struct GrowthFit {
    double loglog_slope = 0.0;
    double semilog_slope = 0.0;
    double sup_ratio = 0.0;      // sup_observed / max over |n| <= N/4
};

struct PowerVerdict {
    bool bounded = false;
    GrowthClass growth_class = GrowthClass::exponential;
    double degree_estimate = 0.0;  // log-log slope
    double rate_estimate = 0.0;    // d/dn ln ||T^n||
    GrowthFit evidence;
};

/// bounded   iff sup_observed <= growth_tol * first-quartile max and both
///           fitted slopes <= 0.01;
/// polynomial iff the log-log slope >= 0.5 and the semilog slope <= 0.01;
/// exponential otherwise (escaped profiles classify as exponential outright).
PowerVerdict diagnose(const PowerProfile& profile, double growth_tol = defaults::growth_tol);

/// T = V D V^{-1} with D diagonal unimodular: V's columns are the
/// concatenated eigenspace bases, D carries the cluster values.
struct SimilarityPair {
    Matrix v;
    Matrix d;
    double residual = 0.0;       // ||V^{-1} T V - D||_F
    double cond_estimate = 0.0;  // ||V||_2 ||V^{-1}||_2 estimate
};

/// Requires a decomposable certificate; throws ClusterError otherwise.
SimilarityPair sznagy_similarity(const Matrix& t, double gap = -1.0,
                                 int nodes = defaults::nodes, double tol = defaults::tol);

/// What the generator planted: the similarity, the diagonal, and the exact
/// projections V E_j V^{-1} (E_j = coordinate projections per cluster block).
struct GroundTruth {
    Matrix v;
    Matrix d;
    std::vector<Complex> values;
    std::vector<std::size_t> multiplicities;
    std::vector<Matrix> projections;
    double cond_estimate = 0.0;
};

struct GeneratedOperator {
    Matrix t;
    GroundTruth truth;
};

Matrix jordan_block(std::size_t n, Complex value);

/// ||V||_2 ||V^{-1}||_2 estimate.
double cond_estimate(const Matrix& v);

/// Deterministic assembly T = V D V^{-1} from an explicit similarity. Values
/// are normalized to unit modulus; multiplicities must sum to V's order.
GeneratedOperator assemble_power_bounded(const Matrix& v, const std::vector<Complex>& values,
                                         const std::vector<std::size_t>& multiplicities);

/// Random power-bounded operator with the given planted spectrum. V is
/// resampled (at most 100 draws) until cond_estimate(V) <= cond_cap.
GeneratedOperator gen_power_bounded(std::size_t n, const std::vector<Complex>& values,
                                    const std::vector<std::size_t>& multiplicities,
                                    double cond_cap, std::uint64_t seed);

/// Conjugated single Jordan block at a unimodular value: spectrum on the
/// circle, yet never power-bounded.
Matrix gen_defective(std::size_t n, Complex value, std::uint64_t seed);

} // namespace rieszdec
