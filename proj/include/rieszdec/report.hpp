#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "rieszdec/decompose.hpp"
#include "rieszdec/powerbound.hpp"

namespace rieszdec::report {

using json = nlohmann::json;

json to_json(const Complex& z);  // [re, im]
json to_json(const Matrix& m);   // matrix file schema
json to_json(const Cluster& c);
json to_json(const SpectrumReport& r);
json to_json(const UnimodularityResult& u);
json to_json(const Contour& c);
json to_json(const Projection& p);
json to_json(const KRReport& k);
json to_json(const ProjectionBundle& b);
json to_json(const Certificate& c);
json to_json(const GelfandResult& g);
json to_json(const PowerProfile& p);
json to_json(const PowerVerdict& v);
json to_json(const SimilarityPair& s);
json to_json(const GroundTruth& t);

/// Deterministic serialization: keys sorted, doubles at 17 significant
/// digits, non-finite numbers emitted as null, 2-space indent.
std::string dump(const json& j);

json make_report(const std::string& command, const std::string& input_digest,
                 json parameters, json results, json residuals,
                 const std::optional<std::string>& verdict = std::nullopt);

} // namespace rieszdec::report
