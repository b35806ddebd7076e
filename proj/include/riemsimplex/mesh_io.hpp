#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "riemsimplex/complex.hpp"
#include "riemsimplex/generators.hpp"
#include "riemsimplex/model_manifold.hpp"

namespace riemsimplex {

struct ManifoldDescriptor {
  std::string kind = "euclidean";  // euclidean, sphere, hyperbolic, torus
  int dim = 2;
  double radius = 1.0;  // sphere radius
  double scale = 1.0;   // hyperbolic scale
  std::vector<double> periods;
  bool operator==(const ManifoldDescriptor&) const = default;
};

ModelManifold make_manifold(const ManifoldDescriptor& d);
ManifoldDescriptor describe(const ModelManifold& m);

struct MeshMetadata {
  std::optional<std::string> name;
  std::optional<std::uint64_t> seed;
  bool operator==(const MeshMetadata&) const = default;
};

// Vertices are physical coordinates: sphere points have norm `radius`, hyperboloid
// points satisfy <x,x> = -scale^2, torus points lie in the fundamental domain.
struct MeshDocument {
  ManifoldDescriptor manifold;
  std::vector<std::vector<double>> vertices;
  std::vector<Simplex> simplices;
  MeshMetadata metadata;
  bool operator==(const MeshDocument&) const = default;
};

MeshDocument parse_mesh(std::istream& in);
MeshDocument parse_mesh_string(const std::string& text);
MeshDocument parse_mesh_file(const std::string& path);
std::string serialize_mesh(const MeshDocument& doc);

MeshDocument mesh_document(const GeneratedMesh& mesh);
// Factor between model coordinates and document coordinates.
double physical_scale(const ManifoldDescriptor& d);
// Points in the manifold's model coordinates.
std::vector<Vec> model_points(const MeshDocument& doc);
AbstractComplex complex_of(const MeshDocument& doc);

// Canonical text form: sorted keys, scalar arrays on one line, shortest round-trip numbers.
std::string canonical_json(const nlohmann::json& j);

}  // namespace riemsimplex
