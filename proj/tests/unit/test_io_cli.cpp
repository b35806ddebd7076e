#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "riemsimplex/cli.hpp"
#include "riemsimplex/error.hpp"
#include "riemsimplex/generators.hpp"
#include "riemsimplex/mesh_io.hpp"
#include "riemsimplex/report_json.hpp"

using namespace riemsimplex;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const char* kMinimalSphere = R"({
  "manifold": {"kind": "sphere", "dim": 2, "radius": 1.0},
  "vertices": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
  "simplices": [[0, 1, 2]]
})";

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "riemsimplex");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path write_temp(const std::string& name, const std::string& text) {
  const fs::path p = fs::temp_directory_path() / ("riemsimplex_test_" + name);
  std::ofstream(p) << text;
  return p;
}

ErrorCode code_of(const std::string& text) {
  try {
    parse_mesh_string(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::BadParams;
}

}  // namespace

TEST(MeshIo, MinimalSphere) {
  const auto d = parse_mesh_string(kMinimalSphere);
  EXPECT_EQ(d.manifold.kind, "sphere");
  EXPECT_EQ(d.vertices.size(), 3u);
  EXPECT_EQ(d.simplices.size(), 1u);
}

TEST(MeshIo, NonUnitVertexNamed) {
  std::string text = kMinimalSphere;
  text.replace(text.find("[0, 1, 0]"), 9, "[0, 2, 0]");
  try {
    parse_mesh_string(text);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ValidationError);
    EXPECT_NE(std::string(e.what()).find("vertex 1"), std::string::npos);
  }
}

TEST(MeshIo, ProblemsAreCollected) {
  const std::string text = R"({"manifold": {"kind": "sphere", "dim": 2},
    "vertices": [[1, 0, 0], [0, 3, 0]], "simplices": [[0, 1, 7], [0, 0]], "extra": 1})";
  try {
    parse_mesh_string(text);
    FAIL();
  } catch (const Error& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("vertex 1"), std::string::npos);
    EXPECT_NE(msg.find("index 7"), std::string::npos);
    EXPECT_NE(msg.find("repeated vertex"), std::string::npos);
    EXPECT_NE(msg.find("extra"), std::string::npos);
  }
}

TEST(MeshIo, ParseErrors) {
  EXPECT_EQ(code_of("{not json"), ErrorCode::ParseError);
  EXPECT_EQ(code_of("[1, 2]"), ErrorCode::ValidationError);
  EXPECT_THROW(parse_mesh_file("/nonexistent/mesh.json"), Error);
}

TEST(MeshIo, RoundTrip) {
  const std::string text = serialize_mesh(mesh_document(icosahedron_sphere(2, 1.5)));
  const MeshDocument d = parse_mesh_string(text);
  EXPECT_EQ(serialize_mesh(d), text);
  EXPECT_EQ(parse_mesh_string(serialize_mesh(d)), d);
  const std::string torus = serialize_mesh(mesh_document(perturbed(grid_torus(5, {1.0, 2.0}), 0.01, 3)));
  EXPECT_EQ(serialize_mesh(parse_mesh_string(torus)), torus);
}

TEST(MeshIo, ModelPointsAreNormalised) {
  const auto g = icosahedron_sphere(1, 2.0);
  const auto d = mesh_document(g);
  EXPECT_NEAR(Eigen::Map<const Vec>(d.vertices[0].data(), 3).norm(), 2.0, 1e-14);
  const auto pts = model_points(d);
  for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_LT((pts[i] - g.points[i]).norm(), 1e-15);
}

TEST(Cli, UnknownFlagExitsTwo) {
  const CliRun r = run({"certify", "--bogus"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
}

TEST(Cli, BadMeshExitsTwo) {
  const auto p = write_temp("bad.json", "{");
  EXPECT_EQ(run({"certify", "--mesh", p.string()}).code, 2);
}

TEST(Cli, CertifySmallSphereTriangle) {
  // edge 0.01 triangle near the north pole
  const double e = 0.01;
  std::ostringstream doc;
  doc.precision(17);
  doc << R"({"manifold": {"kind": "sphere", "dim": 2, "radius": 1.0}, "vertices": [)";
  for (int i = 0; i < 3; ++i) {
    const double a = 2 * 3.141592653589793 * i / 3, r = e / std::sqrt(3.0);
    const double x = r * std::cos(a), y = r * std::sin(a);
    doc << (i ? "," : "") << "[" << x << "," << y << "," << std::sqrt(1 - x * x - y * y) << "]";
  }
  doc << R"(], "simplices": [[0, 1, 2]]})";
  const auto p = write_temp("small.json", doc.str());
  const CliRun r = run({"certify", "--mesh", p.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find(R"("verdict": "Certified")"), std::string::npos);
}

TEST(Cli, TriangulateIcosahedronLevelZero) {
  const auto p = write_temp("ico0.json", serialize_mesh(mesh_document(icosahedron_sphere(0))));
  const CliRun r = run({"triangulate-check", "--mesh", p.string(), "--t0", "0.4", "--samples", "2000"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("condition 1"), std::string::npos);
}

TEST(Cli, CsvFormats) {
  const auto p = write_temp("torus.json", serialize_mesh(mesh_document(grid_torus(6, {1.0, 1.0}))));
  const CliRun r = run({"distort-report", "--mesh", p.string(), "--t0", "0.25", "--samples", "50", "--format", "csv"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')).find(','), r.out.find(','));
  EXPECT_EQ(run({"certify", "--mesh", p.string(), "--format", "csv"}).code, 2);
}

TEST(Cli, SeedFromEnvironment) {
  const auto p = write_temp("ico1.json", serialize_mesh(mesh_document(icosahedron_sphere(1))));
  setenv("RIEMSIMPLEX_SEED", "42", 1);
  const CliRun a = run({"karcher", "--mesh", p.string(), "--samples", "2"});
  unsetenv("RIEMSIMPLEX_SEED");
  const CliRun b = run({"karcher", "--mesh", p.string(), "--samples", "2", "--seed", "42"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find(R"("seed": 42)"), std::string::npos);
}

TEST(Schema, NoOrphanFields) {
  const json& schema = report_schema();
  const auto ico = write_temp("schema_ico.json", serialize_mesh(mesh_document(perturbed(icosahedron_sphere(1), 0.02, 1))));
  const auto torus = write_temp("schema_torus.json", serialize_mesh(mesh_document(grid_torus(5, {1.0, 1.0}))));
  const std::vector<std::pair<std::string, std::vector<std::string>>> runs = {
      {"certify", {"certify", "--mesh", ico.string(), "--samples", "20"}},
      {"triangulate-check", {"triangulate-check", "--mesh", ico.string(), "--t0", "0.3", "--samples", "500"}},
      {"triangulate-check", {"triangulate-check", "--mesh", torus.string(), "--t0", "0.2", "--samples", "500"}},
      {"distort-report", {"distort-report", "--mesh", ico.string(), "--t0", "0.3", "--samples", "100"}},
      {"karcher", {"karcher", "--mesh", ico.string(), "--samples", "1"}},
      {"generate", {"generate", "--kind", "torus", "--n", "3", "--perturb", "0.01"}},
      {"property-suite", {"property-suite", "--samples", "12", "--oracle-samples", "20"}},
  };
  for (const auto& [cmd, args] : runs) {
    const CliRun r = run(args);
    ASSERT_NE(r.code, 2) << cmd << ": " << r.err;
    ASSERT_TRUE(schema.contains(cmd)) << cmd;
    for (const auto& path : key_paths(json::parse(r.out)))
      EXPECT_TRUE(schema[cmd].contains(path)) << cmd << " emits undocumented field " << path;
  }
}

TEST(Determinism, SameSeedSameBytes) {
  const auto p = write_temp("det.json", serialize_mesh(mesh_document(perturbed(icosahedron_sphere(1), 0.02, 1))));
  const std::vector<std::vector<std::string>> cmds = {
      {"certify", "--mesh", p.string(), "--samples", "30", "--seed", "5"},
      {"triangulate-check", "--mesh", p.string(), "--t0", "0.3", "--samples", "500", "--seed", "5"},
      {"distort-report", "--mesh", p.string(), "--t0", "0.3", "--samples", "100", "--seed", "5"},
      {"karcher", "--mesh", p.string(), "--samples", "2", "--seed", "5"},
      {"generate", "--kind", "icosahedron", "--level", "1", "--perturb", "0.01", "--seed", "5"},
      {"property-suite", "--samples", "10", "--oracle-samples", "20", "--seed", "5"},
  };
  for (const auto& c : cmds) EXPECT_EQ(run(c).out, run(c).out) << c.front();
}
