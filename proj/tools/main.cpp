#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rieszdec/decompose.hpp"
#include "rieszdec/errors.hpp"
#include "rieszdec/io.hpp"
#include "rieszdec/powerbound.hpp"
#include "rieszdec/report.hpp"
#include "rieszdec/selftest.hpp"

namespace {

using rieszdec::Complex;
using rieszdec::Matrix;
using json = nlohmann::json;

/// Accepts "1.5", "-2", "1+2i", "0.5-0.25i", "i", "-i", "2i".
Complex parse_complex(const std::string& raw) {
    std::string s;
    for (const char c : raw) {
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    }
    if (s.empty()) throw rieszdec::ParseError("empty complex literal");

    auto parse_real = [&](const std::string& part) -> double {
        if (part.empty() || part == "+") return 1.0;
        if (part == "-") return -1.0;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(part, &used);
        } catch (const std::exception&) {
            throw rieszdec::ParseError("invalid complex literal: \"" + raw + "\"");
        }
        if (used != part.size()) {
            throw rieszdec::ParseError("invalid complex literal: \"" + raw + "\"");
        }
        return v;
    };

    if (s.back() == 'i' || s.back() == 'I') {
        const std::string body = s.substr(0, s.size() - 1);
        // split at the last +/- that is not an exponent sign and not leading
        std::size_t split = std::string::npos;
        for (std::size_t k = body.size(); k-- > 1;) {
            const char c = body[k];
            if ((c == '+' || c == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
                split = k;
                break;
            }
        }
        if (split == std::string::npos) return Complex(0.0, parse_real(body));
        return Complex(parse_real(body.substr(0, split)), parse_real(body.substr(split)));
    }
    return Complex(parse_real(s), 0.0);
}

std::vector<Complex> parse_complex_list(const std::string& raw) {
    std::vector<Complex> out;
    std::size_t start = 0;
    while (start <= raw.size()) {
        const std::size_t comma = raw.find(',', start);
        const std::string piece =
            raw.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        out.push_back(parse_complex(piece));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.empty()) throw rieszdec::ParseError("empty value list");
    return out;
}

void print_report(const json& r) { std::cout << rieszdec::report::dump(r) << "\n"; }

void print_error(const std::string& type, const std::string& message, json extra = json::object()) {
    extra["type"] = type;
    extra["message"] = message;
    std::cerr << rieszdec::report::dump(json{{"error", extra}}) << "\n";
}

struct CommonOpts {
    std::string file;
    double gap = -1.0;
    int nodes = rieszdec::defaults::nodes;
    double tol = rieszdec::defaults::tol;
};

int cmd_spectrum(const CommonOpts& opt) {
    const auto loaded = rieszdec::io::read_matrix_file(opt.file);
    const auto report = rieszdec::spectrum_report(loaded.matrix, opt.gap);
    const auto uni = rieszdec::unimodularity_check(report, opt.tol);

    json results = rieszdec::report::to_json(report);
    results.erase("gap");
    results["unimodularity"] = rieszdec::report::to_json(uni);
    print_report(rieszdec::report::make_report(
        "spectrum", loaded.digest, json{{"gap", report.gap}, {"tol", opt.tol}},
        std::move(results), json{{"unimodular_deviation", uni.max_deviation}}));
    return 0;
}

int cmd_decompose(const CommonOpts& opt) {
    const auto loaded = rieszdec::io::read_matrix_file(opt.file);
    const double gap = opt.gap > 0.0 ? opt.gap : rieszdec::default_gap(loaded.matrix);
    const auto bundle = rieszdec::spectral_decomposition(loaded.matrix, gap, opt.nodes, opt.tol);

    json results = rieszdec::report::to_json(bundle);
    print_report(rieszdec::report::make_report(
        "decompose", loaded.digest,
        json{{"gap", gap}, {"nodes", opt.nodes}, {"tol", opt.tol}}, std::move(results),
        json{{"resolution", bundle.resolution_residual},
             {"orthogonality", bundle.orthogonality_residual},
             {"reconstruction", bundle.reconstruction_residual}}));
    return 0;
}

int cmd_certify(const CommonOpts& opt) {
    const auto loaded = rieszdec::io::read_matrix_file(opt.file);
    const double gap = opt.gap > 0.0 ? opt.gap : rieszdec::default_gap(loaded.matrix);
    const auto res = rieszdec::certify_full(loaded.matrix, gap, opt.nodes, opt.tol);

    json values = json::array();
    for (const auto& p : res.bundle.projections) {
        values.push_back(rieszdec::report::to_json(p.value));
    }
    json results{{"certificate", rieszdec::report::to_json(res.certificate)},
                 {"bundle", rieszdec::report::to_json(res.bundle)},
                 {"values", std::move(values)}};
    json residuals{{"algebraic_residual", res.certificate.algebraic_residual},
                   {"lagrange_agreement", res.certificate.lagrange_agreement},
                   {"unimodular_deviation", res.certificate.unimodular_deviation},
                   {"resolution", res.bundle.resolution_residual},
                   {"orthogonality", res.bundle.orthogonality_residual},
                   {"reconstruction", res.bundle.reconstruction_residual}};
    if (res.certificate.gelfand_residual) {
        residuals["gelfand_residual"] = *res.certificate.gelfand_residual;
    }
    const std::string verdict = rieszdec::to_string(res.certificate.verdict);
    print_report(rieszdec::report::make_report(
        "certify", loaded.digest, json{{"gap", gap}, {"nodes", opt.nodes}, {"tol", opt.tol}},
        std::move(results), std::move(residuals), verdict));
    return res.certificate.verdict == rieszdec::Verdict::decomposable ? 0 : 1;
}

int cmd_powerbound(const std::string& file, int horizon) {
    const auto loaded = rieszdec::io::read_matrix_file(file);
    const auto profile = rieszdec::power_profile(loaded.matrix, horizon);
    const auto verdict = rieszdec::diagnose(profile);

    json results = rieszdec::report::to_json(profile);
    results.update(rieszdec::report::to_json(verdict));
    print_report(rieszdec::report::make_report(
        "powerbound", loaded.digest,
        json{{"horizon", horizon}, {"growth_tol", rieszdec::defaults::growth_tol}},
        std::move(results), json::object(), rieszdec::to_string(verdict.growth_class)));
    return 0;
}

int cmd_project(const std::string& file, const std::string& center, double radius, int nodes) {
    const auto loaded = rieszdec::io::read_matrix_file(file);
    rieszdec::Contour gamma{parse_complex(center), radius, nodes};
    const auto p = rieszdec::riesz_projection(loaded.matrix, gamma);
    const auto basis = rieszdec::eigenspace(p);
    const auto kr = rieszdec::verify_kr(loaded.matrix, p.value, p);

    json results{{"projection", rieszdec::report::to_json(p)},
                 {"trace", rieszdec::report::to_json(p.matrix.trace())},
                 {"rank", basis.rank},
                 {"rank_ambiguous", basis.ambiguous},
                 {"kr", rieszdec::report::to_json(kr)}};
    print_report(rieszdec::report::make_report(
        "project", loaded.digest,
        json{{"center", rieszdec::report::to_json(gamma.center)},
             {"radius", radius},
             {"nodes", nodes},
             {"tol", rieszdec::defaults::tol}},
        std::move(results),
        json{{"idem_residual", p.idem_residual},
             {"eigen_residual", kr.eigen_residual},
             {"range_invariance_residual", kr.range_invariance_residual},
             {"kernel_invariance_residual", kr.kernel_invariance_residual},
             {"direct_sum_residual", kr.direct_sum_residual}}));
    return 0;
}

struct GenerateOpts {
    std::string kind;
    std::size_t n = 0;
    std::string values;
    double cond_cap = 100.0;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_generate(const GenerateOpts& opt) {
    const std::vector<Complex> raw = parse_complex_list(opt.values);
    json results{{"kind", opt.kind}, {"out", opt.out}};
    Matrix generated;
    std::optional<rieszdec::GroundTruth> truth;

    if (opt.kind == "power-bounded") {
        // duplicates in --values express multiplicity
        std::vector<Complex> values;
        std::vector<std::size_t> mults;
        for (const auto& v : raw) {
            if (!values.empty() && v == values.back()) {
                ++mults.back();
            } else {
                values.push_back(v);
                mults.push_back(1);
            }
        }
        const std::size_t n = opt.n > 0 ? opt.n : raw.size();
        if (n != raw.size()) {
            throw rieszdec::ParseError("generate: --n disagrees with the number of values");
        }
        auto gen = rieszdec::gen_power_bounded(n, values, mults, opt.cond_cap, opt.seed);
        generated = std::move(gen.t);
        truth = std::move(gen.truth);
    } else if (opt.kind == "defective") {
        if (raw.size() != 1) {
            throw rieszdec::ParseError("generate: kind defective takes exactly one value");
        }
        const std::size_t n = opt.n > 0 ? opt.n : 2;
        generated = rieszdec::gen_defective(n, raw[0], opt.seed);
    } else {
        throw rieszdec::ParseError("generate: unknown kind \"" + opt.kind +
                                   "\" (power-bounded or defective)");
    }

    rieszdec::io::write_matrix_file(opt.out, generated);
    const std::string digest = rieszdec::io::fnv1a64_hex(rieszdec::io::read_file(opt.out));
    results["n"] = generated.rows();
    if (truth) {
        const std::string truth_path = opt.out + ".truth.json";
        rieszdec::io::write_file(truth_path,
                                 rieszdec::report::dump(rieszdec::report::to_json(*truth)) + "\n");
        results["truth"] = truth_path;
        results["cond_estimate"] = truth->cond_estimate;
    }

    json values_json = json::array();
    for (const auto& v : raw) values_json.push_back(rieszdec::report::to_json(v));
    print_report(rieszdec::report::make_report(
        "generate", digest,
        json{{"kind", opt.kind},
             {"n", generated.rows()},
             {"values", std::move(values_json)},
             {"cond_cap", opt.cond_cap},
             {"seed", opt.seed},
             {"out", opt.out}},
        std::move(results), json::object()));
    return 0;
}

int cmd_selftest(const std::string& dir, std::optional<double> tol) {
    const std::filesystem::path where =
        dir.empty() ? std::filesystem::temp_directory_path() / "rieszdec-selftest"
                    : std::filesystem::path(dir);
    const auto result = rieszdec::run_selftest(where, tol);

    json checks = json::array();
    for (const auto& c : result.checks) {
        checks.push_back(json{{"name", c.name},
                              {"value", c.value},
                              {"tolerance", c.tolerance},
                              {"pass", c.pass}});
    }
    json params{{"dir", where.string()}};
    if (tol) params["tol"] = *tol;
    json residuals = json::object();
    for (const auto& c : result.checks) residuals[c.name] = c.value;
    print_report(rieszdec::report::make_report("selftest", result.digest, std::move(params),
                                               json{{"checks", std::move(checks)}},
                                               std::move(residuals),
                                               result.pass ? "pass" : "fail"));
    if (!result.pass) {
        for (const auto& c : result.checks) {
            if (!c.pass) {
                print_error("selftest", "check failed: " + c.name,
                            json{{"value", c.value}, {"tolerance", c.tolerance}});
                break;
            }
        }
    }
    return result.pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral projections of dense complex operators by contour quadrature"};
    app.require_subcommand(1);

    CommonOpts spectrum_opt;
    auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues, clusters, unimodularity");
    spectrum->add_option("file", spectrum_opt.file, "matrix file (JSON or Matrix Market)")
        ->required();
    spectrum->add_option("--gap", spectrum_opt.gap, "cluster isolation gap")
        ->check(CLI::PositiveNumber);
    spectrum->add_option("--tol", spectrum_opt.tol, "residual tolerance")
        ->check(CLI::PositiveNumber);

    CommonOpts decompose_opt;
    auto* decompose = app.add_subcommand("decompose", "Riesz projections per cluster");
    decompose->add_option("file", decompose_opt.file)->required();
    decompose->add_option("--gap", decompose_opt.gap)->check(CLI::PositiveNumber);
    decompose->add_option("--nodes", decompose_opt.nodes)->check(CLI::Range(4, 1 << 20));
    decompose->add_option("--tol", decompose_opt.tol)->check(CLI::PositiveNumber);

    CommonOpts certify_opt;
    auto* certify = app.add_subcommand("certify", "Full decomposition certificate");
    certify->add_option("file", certify_opt.file)->required();
    certify->add_option("--gap", certify_opt.gap)->check(CLI::PositiveNumber);
    certify->add_option("--nodes", certify_opt.nodes)->check(CLI::Range(4, 1 << 20));
    certify->add_option("--tol", certify_opt.tol)->check(CLI::PositiveNumber);

    std::string powerbound_file;
    int horizon = rieszdec::defaults::horizon;
    auto* powerbound = app.add_subcommand("powerbound", "Power norm profile and growth class");
    powerbound->add_option("file", powerbound_file)->required();
    powerbound->add_option("--horizon", horizon)->check(CLI::Range(1, 1 << 20));

    std::string project_file, project_center;
    double project_radius = 0.0;
    int project_nodes = rieszdec::defaults::nodes;
    auto* project = app.add_subcommand("project", "Riesz projection for one contour");
    project->add_option("file", project_file)->required();
    project->add_option("--center", project_center, "contour center, e.g. 1 or 0.5+0.5i")
        ->required();
    project->add_option("--radius", project_radius)->required()->check(CLI::PositiveNumber);
    project->add_option("--nodes", project_nodes)->check(CLI::Range(4, 1 << 20));

    GenerateOpts generate_opt;
    auto* generate = app.add_subcommand("generate", "Labeled test operators");
    generate->add_option("--kind", generate_opt.kind, "power-bounded or defective")->required();
    generate->add_option("--n", generate_opt.n)->check(CLI::Range(1, 4096));
    generate->add_option("--values", generate_opt.values, "comma-separated complex values")
        ->required();
    generate->add_option("--cond-cap", generate_opt.cond_cap)->check(CLI::Range(1.0, 1e12));
    generate->add_option("--seed", generate_opt.seed);
    generate->add_option("--out", generate_opt.out)->required();

    std::string selftest_dir;
    double selftest_tol = -1.0;
    auto* selftest = app.add_subcommand("selftest", "Golden end-to-end checks");
    selftest->add_option("--dir", selftest_dir, "directory for the golden files");
    selftest->add_option("--tol", selftest_tol, "override every check tolerance")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        print_error("usage", e.what());
        return 2;
    }

    try {
        if (spectrum->parsed()) return cmd_spectrum(spectrum_opt);
        if (decompose->parsed()) return cmd_decompose(decompose_opt);
        if (certify->parsed()) return cmd_certify(certify_opt);
        if (powerbound->parsed()) return cmd_powerbound(powerbound_file, horizon);
        if (project->parsed()) {
            return cmd_project(project_file, project_center, project_radius, project_nodes);
        }
        if (generate->parsed()) return cmd_generate(generate_opt);
        if (selftest->parsed()) {
            std::optional<double> tol;
            if (selftest->count("--tol") > 0) tol = selftest_tol;
            return cmd_selftest(selftest_dir, tol);
        }
    } catch (const rieszdec::ParseError& e) {
        json extra;
        if (e.line > 0) extra["line"] = e.line;
        if (e.column > 0) extra["column"] = e.column;
        print_error("parse", e.what(), std::move(extra));
        return 2;
    } catch (const std::invalid_argument& e) {
        print_error("parameter", e.what());
        return 2;
    } catch (const rieszdec::ContourError& e) {
        print_error("numerical", e.what(),
                    json{{"node", rieszdec::report::to_json(e.node)}});
        return 3;
    } catch (const rieszdec::Error& e) {
        print_error("numerical", e.what());
        return 3;
    } catch (const std::exception& e) {
        print_error("internal", e.what());
        return 3;
    }
    return 0;
}
