#include "rieszdec/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rieszdec/decompose.hpp"
#include "rieszdec/io.hpp"
#include "rieszdec/powerbound.hpp"

namespace rieszdec {

namespace {

/// sin of the angle between an n x 1 basis column and a target direction,
/// computed from the component orthogonal to the target (stable near zero,
/// unlike sqrt(1 - cos^2)).
double angular_distance(const Basis& basis, const std::vector<Complex>& target) {
    if (basis.rank != 1 || basis.columns.rows() != target.size()) return 1.0;
    double tn2 = 0.0, bn2 = 0.0;
    Complex dot = 0.0;
    for (std::size_t i = 0; i < target.size(); ++i) {
        tn2 += std::norm(target[i]);
        dot += std::conj(target[i]) * basis.columns(i, 0);
        bn2 += std::norm(basis.columns(i, 0));
    }
    if (tn2 == 0.0 || bn2 == 0.0) return 1.0;
    double resid2 = 0.0;
    for (std::size_t i = 0; i < target.size(); ++i) {
        resid2 += std::norm(basis.columns(i, 0) - target[i] * (dot / tn2));
    }
    return std::sqrt(resid2 / bn2);
}

double pair_match(const std::vector<Complex>& got, Complex a, Complex b) {
    if (got.size() != 2) return 1.0;
    const double d1 = std::max(std::abs(got[0] - a), std::abs(got[1] - b));
    const double d2 = std::max(std::abs(got[0] - b), std::abs(got[1] - a));
    return std::min(d1, d2);
}

} // namespace

SelftestResult run_selftest(const std::filesystem::path& dir,
                            std::optional<double> tol_override) {
    std::filesystem::create_directories(dir);
    const auto involution_path = dir / "involution.json";
    const auto jordan_path = dir / "jordan.json";
    if (!std::filesystem::exists(involution_path)) {
        io::write_matrix_file(involution_path, Matrix(2, 2, {5.0, -2.0, 12.0, -5.0}));
    }
    if (!std::filesystem::exists(jordan_path)) {
        io::write_matrix_file(jordan_path, Matrix(2, 2, {1.0, 1.0, 0.0, 1.0}));
    }

    const io::LoadedMatrix involution = io::read_matrix_file(involution_path);
    const io::LoadedMatrix jordan = io::read_matrix_file(jordan_path);

    SelftestResult result;
    result.digest = io::fnv1a64_hex(involution.digest + jordan.digest);
    auto add = [&](const std::string& name, double value, double tolerance) {
        const double tol = tol_override.value_or(tolerance);
        result.checks.push_back({name, value, tol, value <= tol});
    };

    // golden decomposition of the involution example
    {
        const Matrix& a = involution.matrix;
        const CertifyResult cert = certify_full(a);
        const ProjectionBundle& bundle = cert.bundle;

        add("eigenvalues_pm1", pair_match(cert.report.eigenvalues, 1.0, -1.0), 1e-8);

        const Matrix p_plus(2, 2, {3.0, -1.0, 6.0, -2.0});
        const Matrix p_minus(2, 2, {-2.0, 1.0, -6.0, 3.0});
        double dev_plus = 1.0, dev_minus = 1.0, ang_plus = 1.0, ang_minus = 1.0;
        if (bundle.projections.size() == 2) {
            dev_plus = norm_max(bundle.projections[0].matrix - p_plus);
            dev_minus = norm_max(bundle.projections[1].matrix - p_minus);
            ang_plus = angular_distance(eigenspace(bundle.projections[0]), {1.0, 2.0});
            ang_minus = angular_distance(eigenspace(bundle.projections[1]), {1.0, 3.0});
        }
        add("projection_plus", dev_plus, 1e-8);
        add("projection_minus", dev_minus, 1e-8);
        add("eigenspace_plus_angle", ang_plus, 1e-8);
        add("eigenspace_minus_angle", ang_minus, 1e-8);
        add("lagrange_agreement", cert.certificate.lagrange_agreement, 1e-10);
        add("algebraic_residual", cert.certificate.algebraic_residual, 1e-12);
        add("certify_decomposable",
            cert.certificate.verdict == Verdict::decomposable ? 0.0 : 1.0, 0.5);

        const PowerVerdict pv = diagnose(power_profile(a));
        add("power_bounded", pv.bounded ? 0.0 : 1.0, 0.5);
    }

    // golden defective example
    {
        const Matrix& a = jordan.matrix;
        const PowerVerdict pv = diagnose(power_profile(a, 1024));
        add("defective_degree",
            pv.growth_class == GrowthClass::polynomial ? std::abs(pv.degree_estimate - 1.0)
                                                       : 1.0,
            0.1);
        const Certificate cert = certify(a);
        add("defective_not_decomposable",
            cert.verdict == Verdict::not_decomposable ? 0.0 : 1.0, 0.5);

        const GelfandResult g = gelfand_check(a);
        add("scalar_check_residual", std::abs(g.residual - 1.0), 0.0);
    }

    result.pass = std::all_of(result.checks.begin(), result.checks.end(),
                              [](const SelftestCheck& c) { return c.pass; });
    return result;
}

} // namespace rieszdec
