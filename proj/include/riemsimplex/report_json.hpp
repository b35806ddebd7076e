#pragma once

#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "riemsimplex/certificates.hpp"
#include "riemsimplex/karcher.hpp"
#include "riemsimplex/triangulation.hpp"

namespace riemsimplex {

nlohmann::json to_json(const Hypothesis& h);
nlohmann::json to_json(const CertificateReport& r);
nlohmann::json to_json(const OracleResult& r);
nlohmann::json to_json(const KarcherResult& r);
nlohmann::json to_json(const FullStarReport& r);
nlohmann::json to_json(const VertexCheck& v);
// Per-vertex entries are listed only for failing vertices.
nlohmann::json to_json(const TriangulationReport& r);
nlohmann::json to_json(const PwfReport& r);
// Pair samples are left to the CSV form.
nlohmann::json to_json(const DistortionReport& r);
nlohmann::json to_json(const EmbeddingSuiteReport& r);

std::string triangulation_csv(const TriangulationReport& r);
std::string distortion_csv(const DistortionReport& r);

// Documented key paths of every report, each with the hypothesis or quantity it carries.
// Array elements are written as "[]".
const nlohmann::json& report_schema();
std::set<std::string> key_paths(const nlohmann::json& j);

}  // namespace riemsimplex
