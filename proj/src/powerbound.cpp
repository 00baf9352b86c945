#include "rieszdec/powerbound.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "rieszdec/errors.hpp"

namespace rieszdec {

namespace {

/// Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2) return 0.0;
    double xm = 0.0, ym = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        xm += x[i];
        ym += y[i];
    }
    xm /= static_cast<double>(n);
    ym /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - xm) * (x[i] - xm);
        sxy += (x[i] - xm) * (y[i] - ym);
    }
    return sxx > 0.0 ? sxy / sxx : 0.0;
}

GrowthFit fit_envelope(const PowerProfile& p) {
    GrowthFit fit;
    const int nn = p.horizon;
    const int k0 = std::max(1, (nn + 3) / 4);
    // running maximum of the two-sided envelope: quasi-periodic fluctuation of
    // a bounded profile must not register as a growth trend
    double run = 1.0;
    for (int k = 1; k < k0; ++k) run = std::max({run, p.at(k), p.at(-k)});
    std::vector<double> xs_log, xs_lin, ys;
    for (int k = k0; k <= nn; ++k) {
        run = std::max({run, p.at(k), p.at(-k)});
        xs_log.push_back(std::log10(static_cast<double>(k)));
        xs_lin.push_back(static_cast<double>(k));
        ys.push_back(std::log10(run));
    }
    fit.loglog_slope = ls_slope(xs_log, ys);
    fit.semilog_slope = ls_slope(xs_lin, ys);

    double q1 = 0.0;
    for (int k = -(nn / 4); k <= nn / 4; ++k) q1 = std::max(q1, p.at(k));
    fit.sup_ratio = q1 > 0.0 ? p.sup_observed / q1 : 0.0;
    return fit;
}

} // namespace

double PowerProfile::at(int n) const {
    const int idx = horizon + n;
    if (idx < 0 || idx >= static_cast<int>(norms.size())) {
        throw std::out_of_range("PowerProfile::at: power outside horizon");
    }
    return norms[static_cast<std::size_t>(idx)];
}

PowerProfile power_profile(const Matrix& t, int horizon) {
    require_square(t, "power_profile");
    require_finite(t, "power_profile");
    if (horizon < 1) throw std::invalid_argument("power_profile: horizon must be >= 1");

    const Matrix tinv = inverse(t);  // SingularMatrixError for non-invertible input
    const std::size_t n = t.rows();

    std::vector<double> pos, neg;
    pos.reserve(horizon + 1);
    neg.reserve(horizon + 1);
    pos.push_back(1.0);
    neg.push_back(1.0);

    Matrix fwd = Matrix::identity(n);
    Matrix bwd = Matrix::identity(n);
    bool escaped = false;
    for (int k = 1; k <= horizon; ++k) {
        fwd = t * fwd;
        bwd = tinv * bwd;
        const double a = norm_op2_est(fwd);
        const double b = norm_op2_est(bwd);
        if (!(a <= defaults::norm_escape) || !(b <= defaults::norm_escape)) {
            escaped = true;
            break;
        }
        pos.push_back(a);
        neg.push_back(b);
    }

    PowerProfile profile;
    profile.horizon = static_cast<int>(pos.size()) - 1;
    profile.escaped = escaped;
    profile.norms.resize(2 * profile.horizon + 1);
    profile.norms[profile.horizon] = 1.0;
    for (int k = 1; k <= profile.horizon; ++k) {
        profile.norms[profile.horizon + k] = pos[k];
        profile.norms[profile.horizon - k] = neg[k];
    }
    profile.sup_observed = *std::max_element(profile.norms.begin(), profile.norms.end());
    return profile;
}

const char* to_string(GrowthClass g) {
    switch (g) {
        case GrowthClass::bounded: return "bounded";
        case GrowthClass::polynomial: return "polynomial";
        case GrowthClass::exponential: return "exponential";
    }
    return "unknown";
}

PowerVerdict diagnose(const PowerProfile& profile, double growth_tol) {
    PowerVerdict v;
    if (profile.escaped) {
        // growth already left the representable range
        if (profile.horizon >= 4) v.evidence = fit_envelope(profile);
        v.bounded = false;
        v.growth_class = GrowthClass::exponential;
        v.degree_estimate = v.evidence.loglog_slope;
        v.rate_estimate = v.evidence.semilog_slope * std::log(10.0);
        return v;
    }
    if (profile.horizon < 16) {
        throw std::invalid_argument("diagnose: profile horizon must be >= 16");
    }

    v.evidence = fit_envelope(profile);
    const GrowthFit& fit = v.evidence;
    v.degree_estimate = fit.loglog_slope;
    v.rate_estimate = fit.semilog_slope * std::log(10.0);

    if (fit.sup_ratio <= growth_tol && fit.loglog_slope <= 0.01 && fit.semilog_slope <= 0.01) {
        v.bounded = true;
        v.growth_class = GrowthClass::bounded;
    } else if (fit.loglog_slope >= 0.5 && fit.semilog_slope <= 0.01) {
        v.growth_class = GrowthClass::polynomial;
    } else {
        v.growth_class = GrowthClass::exponential;
    }
    return v;
}

Matrix jordan_block(std::size_t n, Complex value) {
    Matrix j(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        j(i, i) = value;
        if (i + 1 < n) j(i, i + 1) = 1.0;
    }
    return j;
}

double cond_estimate(const Matrix& v) {
    return norm_op2_est(v) * norm_op2_est(inverse(v));
}

namespace {

std::vector<Complex> normalized_unimodular(const std::vector<Complex>& values) {
    std::vector<Complex> out;
    out.reserve(values.size());
    for (const auto& v : values) {
        const double m = std::abs(v);
        if (m == 0.0) {
            throw std::invalid_argument("generator: cannot normalize a zero value");
        }
        out.push_back(v / m);
    }
    return out;
}

} // namespace

GeneratedOperator assemble_power_bounded(const Matrix& v, const std::vector<Complex>& values,
                                         const std::vector<std::size_t>& multiplicities) {
    require_square(v, "assemble_power_bounded");
    if (values.size() != multiplicities.size() || values.empty()) {
        throw std::invalid_argument("assemble_power_bounded: values/multiplicities mismatch");
    }
    const std::size_t n = v.rows();
    const std::size_t total = std::accumulate(multiplicities.begin(), multiplicities.end(),
                                              std::size_t{0});
    if (total != n) {
        throw DimensionError("assemble_power_bounded: multiplicities must sum to the order");
    }
    for (const auto m : multiplicities) {
        if (m == 0) throw std::invalid_argument("assemble_power_bounded: zero multiplicity");
    }

    GeneratedOperator gen;
    GroundTruth& truth = gen.truth;
    truth.values = normalized_unimodular(values);
    truth.multiplicities = multiplicities;

    std::vector<Complex> diag;
    diag.reserve(n);
    for (std::size_t j = 0; j < truth.values.size(); ++j) {
        diag.insert(diag.end(), multiplicities[j], truth.values[j]);
    }
    truth.v = v;
    truth.d = Matrix::diagonal(diag);

    const Matrix vinv = inverse(v);
    gen.t = (v * truth.d) * vinv;

    std::size_t offset = 0;
    for (std::size_t j = 0; j < truth.values.size(); ++j) {
        // V E_j: keep only the columns of this cluster block
        Matrix vej(n, n);
        for (std::size_t c = offset; c < offset + multiplicities[j]; ++c) {
            for (std::size_t r = 0; r < n; ++r) vej(r, c) = v(r, c);
        }
        truth.projections.push_back(vej * vinv);
        offset += multiplicities[j];
    }
    truth.cond_estimate = norm_op2_est(v) * norm_op2_est(vinv);
    return gen;
}

GeneratedOperator gen_power_bounded(std::size_t n, const std::vector<Complex>& values,
                                    const std::vector<std::size_t>& multiplicities,
                                    double cond_cap, std::uint64_t seed) {
    if (cond_cap < 1.0) throw std::invalid_argument("gen_power_bounded: cond_cap must be >= 1");
    Rng rng = Rng(seed).split(0x5be1);
    for (int attempt = 0; attempt < 100; ++attempt) {
        Matrix v = random_gaussian(rng, n, n);
        try {
            GeneratedOperator gen = assemble_power_bounded(v, values, multiplicities);
            if (gen.truth.cond_estimate <= cond_cap) return gen;
        } catch (const SingularMatrixError&) {
            // essentially impossible for a Gaussian draw; resample
        }
    }
    throw GeneratorError("gen_power_bounded: no similarity with condition <= " +
                         std::to_string(cond_cap) + " in 100 draws");
}

Matrix gen_defective(std::size_t n, Complex value, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("gen_defective: order must be >= 2");
    const double m = std::abs(value);
    if (m == 0.0) throw std::invalid_argument("gen_defective: value must be nonzero");
    const Matrix j = jordan_block(n, value / m);

    Rng rng = Rng(seed).split(0xdefec7);
    for (int attempt = 0; attempt < 100; ++attempt) {
        Matrix v = random_gaussian(rng, n, n);
        try {
            if (cond_estimate(v) <= 100.0) return (v * j) * inverse(v);
        } catch (const SingularMatrixError&) {
        }
    }
    throw GeneratorError("gen_defective: no well-conditioned similarity in 100 draws");
}

SimilarityPair sznagy_similarity(const Matrix& t, double gap, int nodes, double tol) {
    const CertifyResult res = certify_full(t, gap, nodes, tol);
    if (res.certificate.verdict != Verdict::decomposable) {
        throw ClusterError("sznagy_similarity: operator is not decomposable");
    }

    const std::size_t n = t.rows();
    std::vector<Complex> diag;
    std::vector<Basis> bases;
    std::size_t total = 0;
    for (const auto& p : res.bundle.projections) {
        Basis b = eigenspace(p);
        total += b.rank;
        diag.insert(diag.end(), b.rank, p.value);
        bases.push_back(std::move(b));
    }
    if (total != n) {
        throw ClusterError("sznagy_similarity: eigenspace dimensions sum to " +
                           std::to_string(total) + ", expected " + std::to_string(n));
    }

    SimilarityPair pair;
    pair.v = Matrix(n, n);
    std::size_t col = 0;
    for (const auto& b : bases) {
        for (std::size_t k = 0; k < b.rank; ++k, ++col) {
            for (std::size_t i = 0; i < n; ++i) pair.v(i, col) = b.columns(i, k);
        }
    }
    pair.d = Matrix::diagonal(diag);
    const Matrix vinv = inverse(pair.v);
    pair.residual = norm_fro((vinv * t) * pair.v - pair.d);
    pair.cond_estimate = norm_op2_est(pair.v) * norm_op2_est(vinv);
    return pair;
}

} // namespace rieszdec
