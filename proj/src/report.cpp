#include "rieszdec/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace rieszdec::report {

json to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json to_json(const Matrix& m) {
    json entries = json::array();
    for (const auto& e : m.entries()) entries.push_back(to_json(e));
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

json to_json(const Cluster& c) {
    json members = json::array();
    for (const auto& m : c.members) members.push_back(to_json(m));
    return json{{"center", to_json(c.center)},
                {"members", std::move(members)},
                {"multiplicity", c.multiplicity},
                {"separation", c.separation}};
}

json to_json(const SpectrumReport& r) {
    json eigs = json::array();
    for (const auto& e : r.eigenvalues) eigs.push_back(to_json(e));
    json clusters = json::array();
    for (const auto& c : r.clusters) clusters.push_back(to_json(c));
    return json{{"eigenvalues", std::move(eigs)},
                {"clusters", std::move(clusters)},
                {"gap", r.gap}};
}

json to_json(const UnimodularityResult& u) {
    return json{{"pass", u.pass}, {"max_deviation", u.max_deviation}};
}

json to_json(const Contour& c) {
    return json{{"center", to_json(c.center)}, {"radius", c.radius}, {"nodes", c.nodes}};
}

json to_json(const Projection& p) {
    return json{{"value", to_json(p.value)},
                {"matrix", to_json(p.matrix)},
                {"idem_residual", p.idem_residual},
                {"contour", to_json(p.contour)}};
}

json to_json(const KRReport& k) {
    return json{{"eigen_residual", k.eigen_residual},
                {"range_invariance_residual", k.range_invariance_residual},
                {"kernel_invariance_residual", k.kernel_invariance_residual},
                {"direct_sum_residual", k.direct_sum_residual},
                {"range_dim", k.range_dim},
                {"pass", k.pass}};
}

json to_json(const ProjectionBundle& b) {
    json projections = json::array();
    for (const auto& p : b.projections) projections.push_back(to_json(p));
    return json{{"projections", std::move(projections)},
                {"resolution_residual", b.resolution_residual},
                {"orthogonality_residual", b.orthogonality_residual},
                {"reconstruction_residual", b.reconstruction_residual}};
}

json to_json(const Certificate& c) {
    json out{{"algebraic_residual", c.algebraic_residual},
             {"lagrange_agreement", c.lagrange_agreement},
             {"unimodular_deviation", c.unimodular_deviation},
             {"verdict", to_string(c.verdict)}};
    if (c.gelfand_residual) out["gelfand_residual"] = *c.gelfand_residual;
    return out;
}

json to_json(const GelfandResult& g) {
    return json{{"lambda", to_json(g.lambda)},
                {"residual", g.residual},
                {"unimodular_deviation", g.unimodular_deviation},
                {"is_scalar", g.is_scalar}};
}

json to_json(const PowerProfile& p) {
    return json{{"horizon", p.horizon},
                {"norms", p.norms},
                {"sup_observed", p.sup_observed},
                {"escaped", p.escaped}};
}

json to_json(const PowerVerdict& v) {
    return json{{"bounded", v.bounded},
                {"growth_class", to_string(v.growth_class)},
                {"degree_estimate", v.degree_estimate},
                {"rate_estimate", v.rate_estimate},
                {"evidence",
                 json{{"loglog_slope", v.evidence.loglog_slope},
                      {"semilog_slope", v.evidence.semilog_slope},
                      {"sup_ratio", v.evidence.sup_ratio}}}};
}

json to_json(const SimilarityPair& s) {
    return json{{"V", to_json(s.v)},
                {"D", to_json(s.d)},
                {"residual", s.residual},
                {"cond_estimate", s.cond_estimate}};
}

json to_json(const GroundTruth& t) {
    json values = json::array();
    for (const auto& v : t.values) values.push_back(to_json(v));
    json projections = json::array();
    for (const auto& p : t.projections) projections.push_back(to_json(p));
    return json{{"V", to_json(t.v)},
                {"D", to_json(t.d)},
                {"values", std::move(values)},
                {"multiplicities", t.multiplicities},
                {"projections", std::move(projections)},
                {"cond_estimate", t.cond_estimate}};
}

namespace {

void append_number(std::string& out, double x) {
    if (!std::isfinite(x)) {
        out += "null";
        return;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    out += buf;
}

void dump_rec(const json& j, std::string& out, int depth) {
    const std::string pad(2 * static_cast<std::size_t>(depth), ' ');
    const std::string padIn(2 * static_cast<std::size_t>(depth + 1), ' ');
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (const auto& [key, value] : j.items()) {  // std::map order: sorted keys
                if (!first) out += ",\n";
                first = false;
                out += padIn;
                out += json(key).dump();
                out += ": ";
                dump_rec(value, out, depth + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto& value : j) {
                if (!first) out += ",\n";
                first = false;
                out += padIn;
                dump_rec(value, out, depth + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case json::value_t::number_float:
            append_number(out, j.get<double>());
            return;
        default:
            out += j.dump();  // integers, booleans, strings, null
            return;
    }
}

} // namespace

std::string dump(const json& j) {
    std::string out;
    dump_rec(j, out, 0);
    return out;
}

json make_report(const std::string& command, const std::string& input_digest, json parameters,
                 json results, json residuals, const std::optional<std::string>& verdict) {
    json r{{"command", command},
           {"input_digest", input_digest},
           {"parameters", std::move(parameters)},
           {"results", std::move(results)},
           {"residuals", std::move(residuals)}};
    if (verdict) r["verdict"] = *verdict;
    return r;
}

} // namespace rieszdec::report
