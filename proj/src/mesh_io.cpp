#include "riemsimplex/mesh_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "riemsimplex/error.hpp"

namespace riemsimplex {

namespace {

using nlohmann::json;

void write(std::ostringstream& os, const json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  const std::string inner(static_cast<std::size_t>(indent + 2), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) os << ",\n";
      first = false;
      os << inner << json(it.key()).dump() << ": ";
      write(os, it.value(), indent + 2);
    }
    os << "\n" << pad << "}";
  } else if (j.is_array()) {
    bool all_scalar = true;
    for (const auto& e : j)
      if (e.is_structured()) all_scalar = false;
    if (j.empty() || all_scalar) {
      os << j.dump();
      return;
    }
    os << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) os << ",\n";
      os << inner;
      write(os, j[i], indent + 2);
    }
    os << "\n" << pad << "]";
  } else {
    os << j.dump();
  }
}

}  // namespace

std::string canonical_json(const nlohmann::json& j) {
  std::ostringstream os;
  write(os, j, 0);
  os << "\n";
  return os.str();
}

double physical_scale(const ManifoldDescriptor& d) {
  if (d.kind == "sphere") return d.radius;
  if (d.kind == "hyperbolic") return d.scale;
  return 1.0;
}

ModelManifold make_manifold(const ManifoldDescriptor& d) {
  if (d.kind == "euclidean") return ModelManifold::euclidean(d.dim);
  if (d.kind == "sphere") return ModelManifold::sphere(d.dim, d.radius);
  if (d.kind == "hyperbolic") return ModelManifold::hyperbolic(d.dim, d.scale);
  if (d.kind == "torus") return ModelManifold::flat_torus(d.periods);
  throw Error(ErrorCode::ValidationError, "unknown manifold kind '" + d.kind + "'");
}

ManifoldDescriptor describe(const ModelManifold& m) {
  ManifoldDescriptor d;
  d.kind = to_string(m.kind());
  d.dim = m.dimension();
  if (m.kind() == ManifoldKind::Sphere) d.radius = m.radius();
  if (m.kind() == ManifoldKind::Hyperbolic) d.scale = m.radius();
  if (m.kind() == ManifoldKind::FlatTorus) d.periods = m.periods();
  return d;
}

MeshDocument parse_mesh_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  std::vector<std::string> problems;
  MeshDocument doc;
  if (!j.is_object()) throw Error(ErrorCode::ValidationError, "document must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "manifold" && it.key() != "vertices" && it.key() != "simplices" && it.key() != "metadata")
      problems.push_back("unknown top-level key '" + it.key() + "'");

  std::optional<ModelManifold> manifold;
  if (!j.contains("manifold") || !j["manifold"].is_object()) {
    problems.push_back("manifold: missing or not an object");
  } else {
    const json& mj = j["manifold"];
    auto& d = doc.manifold;
    if (mj.contains("kind") && mj["kind"].is_string()) d.kind = mj["kind"].get<std::string>();
    else problems.push_back("manifold.kind: missing or not a string");
    if (mj.contains("dim") && mj["dim"].is_number_integer()) d.dim = mj["dim"].get<int>();
    else problems.push_back("manifold.dim: missing or not an integer");
    for (auto it = mj.begin(); it != mj.end(); ++it) {
      const std::string& k = it.key();
      if (k == "kind" || k == "dim") continue;
      if (k == "radius" && d.kind == "sphere" && it->is_number()) d.radius = it->get<double>();
      else if (k == "scale" && d.kind == "hyperbolic" && it->is_number()) d.scale = it->get<double>();
      else if (k == "periods" && d.kind == "torus" && it->is_array()) {
        for (const auto& p : *it) {
          if (p.is_number()) d.periods.push_back(p.get<double>());
          else problems.push_back("manifold.periods: non-numeric entry");
        }
      } else {
        problems.push_back("manifold." + k + ": not valid for kind '" + d.kind + "'");
      }
    }
    if (d.kind == "torus" && static_cast<int>(d.periods.size()) != d.dim)
      problems.push_back("manifold.periods: expected " + std::to_string(d.dim) + " entries");
    try {
      manifold = make_manifold(d);
    } catch (const Error& e) {
      problems.push_back(std::string("manifold: ") + e.what());
    }
  }

  if (!j.contains("vertices") || !j["vertices"].is_array()) {
    problems.push_back("vertices: missing or not an array");
  } else {
    const json& vj = j["vertices"];
    for (std::size_t i = 0; i < vj.size(); ++i) {
      const std::string where = "vertex " + std::to_string(i);
      std::vector<double> coords;
      bool numeric = vj[i].is_array();
      if (numeric)
        for (const auto& c : vj[i]) {
          if (!c.is_number()) numeric = false;
          else coords.push_back(c.get<double>());
        }
      if (!numeric) {
        problems.push_back(where + ": not an array of numbers");
        doc.vertices.emplace_back();
        continue;
      }
      if (manifold) {
        if (static_cast<int>(coords.size()) != manifold->ambient_dimension()) {
          problems.push_back(where + ": expected " + std::to_string(manifold->ambient_dimension()) + " coordinates");
        } else {
          Vec x = Eigen::Map<const Vec>(coords.data(), static_cast<Eigen::Index>(coords.size())) /
                  physical_scale(doc.manifold);
          if (auto bad = manifold->check_point(x, 1e-9)) problems.push_back(where + ": " + *bad);
        }
      }
      doc.vertices.push_back(std::move(coords));
    }
  }

  if (!j.contains("simplices") || !j["simplices"].is_array()) {
    problems.push_back("simplices: missing or not an array");
  } else {
    const json& sj = j["simplices"];
    const int count = static_cast<int>(doc.vertices.size());
    for (std::size_t i = 0; i < sj.size(); ++i) {
      const std::string where = "simplex " + std::to_string(i);
      Simplex s;
      bool ok = sj[i].is_array() && !sj[i].empty();
      if (ok)
        for (const auto& v : sj[i]) {
          if (!v.is_number_integer()) ok = false;
          else s.push_back(v.get<int>());
        }
      if (!ok) {
        problems.push_back(where + ": not a nonempty array of integers");
        continue;
      }
      for (int v : s)
        if (v < 0 || v >= count) problems.push_back(where + ": index " + std::to_string(v) + " out of range");
      Simplex sorted = s;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        problems.push_back(where + ": repeated vertex");
      if (static_cast<int>(s.size()) > doc.manifold.dim + 1) problems.push_back(where + ": dimension exceeds manifold dimension");
      doc.simplices.push_back(std::move(s));
    }
  }

  if (j.contains("metadata")) {
    const json& md = j["metadata"];
    if (!md.is_object()) problems.push_back("metadata: not an object");
    else
      for (auto it = md.begin(); it != md.end(); ++it) {
        if (it.key() == "name" && it->is_string()) doc.metadata.name = it->get<std::string>();
        else if (it.key() == "seed" && it->is_number_unsigned()) doc.metadata.seed = it->get<std::uint64_t>();
        else problems.push_back("metadata." + it.key() + ": unsupported key or type");
      }
  }

  if (!problems.empty()) {
    std::string msg = std::to_string(problems.size()) + " problem(s):";
    for (const auto& p : problems) msg += "\n  " + p;
    throw Error(ErrorCode::ValidationError, msg);
  }
  return doc;
}

MeshDocument parse_mesh(std::istream& in) {
  std::ostringstream os;
  os << in.rdbuf();
  return parse_mesh_string(os.str());
}

MeshDocument parse_mesh_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  return parse_mesh(in);
}

std::string serialize_mesh(const MeshDocument& doc) {
  json j;
  json m{{"kind", doc.manifold.kind}, {"dim", doc.manifold.dim}};
  if (doc.manifold.kind == "sphere") m["radius"] = doc.manifold.radius;
  if (doc.manifold.kind == "hyperbolic") m["scale"] = doc.manifold.scale;
  if (doc.manifold.kind == "torus") m["periods"] = doc.manifold.periods;
  j["manifold"] = m;
  j["vertices"] = doc.vertices;
  j["simplices"] = doc.simplices;
  if (doc.metadata.name || doc.metadata.seed) {
    json md = json::object();
    if (doc.metadata.name) md["name"] = *doc.metadata.name;
    if (doc.metadata.seed) md["seed"] = *doc.metadata.seed;
    j["metadata"] = md;
  }
  return canonical_json(j);
}

MeshDocument mesh_document(const GeneratedMesh& mesh) {
  MeshDocument doc;
  doc.manifold = describe(mesh.manifold);
  const double s = physical_scale(doc.manifold);
  for (const auto& p : mesh.points) {
    const Vec x = p * s;
    doc.vertices.emplace_back(x.data(), x.data() + x.size());
  }
  for (const auto& t : mesh.complex.maximal_simplices()) doc.simplices.push_back(t);
  doc.metadata.name = mesh.name;
  return doc;
}

std::vector<Vec> model_points(const MeshDocument& doc) {
  const ModelManifold m = make_manifold(doc.manifold);
  const double s = physical_scale(doc.manifold);
  std::vector<Vec> out;
  for (const auto& v : doc.vertices) {
    Vec x = Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size())) / s;
    out.push_back(m.normalize_point(x));
  }
  return out;
}

AbstractComplex complex_of(const MeshDocument& doc) {
  return AbstractComplex(static_cast<int>(doc.vertices.size()), doc.simplices);
}

}  // namespace riemsimplex
