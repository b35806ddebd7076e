#include "riemsimplex/generators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "riemsimplex/error.hpp"

namespace riemsimplex {

namespace {

// Triangles of a convex polytope whose edges all have the given length.
std::vector<Simplex> equilateral_triangles(const std::vector<Vec>& pts, double edge) {
  const int n = static_cast<int>(pts.size());
  auto adjacent = [&](int i, int j) { return std::abs((pts[static_cast<std::size_t>(i)] - pts[static_cast<std::size_t>(j)]).norm() - edge) < 1e-9; };
  std::vector<Simplex> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (adjacent(i, j) && adjacent(j, k) && adjacent(i, k)) out.push_back({i, j, k});
  return out;
}

GeneratedMesh subdivide_sphere(std::vector<Vec> pts, std::vector<Simplex> tris, int level, double radius,
                               std::string name) {
  if (level < 0 || level > 8) throw Error(ErrorCode::BadParams, "subdivision level must be in [0, 8]");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw Error(ErrorCode::BadParams, "radius must be positive");
  for (auto& p : pts) p.normalize();
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      pts.push_back((pts[static_cast<std::size_t>(a)] + pts[static_cast<std::size_t>(b)]).normalized());
      const int id = static_cast<int>(pts.size()) - 1;
      midpoint.emplace(key, id);
      return id;
    };
    std::vector<Simplex> next;
    for (const auto& t : tris) {
      const int a = t[0], b = t[1], c = t[2];
      const int ab = mid(a, b), bc = mid(b, c), ca = mid(c, a);
      next.push_back({a, ab, ca});
      next.push_back({b, bc, ab});
      next.push_back({c, ca, bc});
      next.push_back({ab, bc, ca});
    }
    tris = std::move(next);
  }
  GeneratedMesh mesh;
  mesh.manifold = ModelManifold::sphere(2, radius);
  mesh.points = std::move(pts);
  mesh.complex = AbstractComplex(static_cast<int>(mesh.points.size()), tris);
  mesh.name = std::move(name);
  return mesh;
}

}  // namespace

GeneratedMesh icosahedron_sphere(int level, double radius) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec> pts;
  for (double s : {-1.0, 1.0})
    for (double t : {-1.0, 1.0}) {
      pts.push_back(Eigen::Vector3d(0.0, s, t * phi));
      pts.push_back(Eigen::Vector3d(s, t * phi, 0.0));
      pts.push_back(Eigen::Vector3d(t * phi, 0.0, s));
    }
  auto tris = equilateral_triangles(pts, 2.0);
  return subdivide_sphere(std::move(pts), std::move(tris), level, radius,
                          "icosahedron_sphere_level" + std::to_string(level));
}

GeneratedMesh octahedron_sphere(int level, double radius) {
  std::vector<Vec> pts;
  for (int axis = 0; axis < 3; ++axis)
    for (double s : {1.0, -1.0}) {
      Vec p = Vec::Zero(3);
      p(axis) = s;
      pts.push_back(p);
    }
  auto tris = equilateral_triangles(pts, std::sqrt(2.0));
  return subdivide_sphere(std::move(pts), std::move(tris), level, radius,
                          "octahedron_sphere_level" + std::to_string(level));
}

GeneratedMesh grid_torus(int n_per_axis, std::vector<double> periods) {
  const int d = static_cast<int>(periods.size());
  if (d < 1 || d > 4) throw Error(ErrorCode::BadParams, "torus dimension must be in [1, 4]");
  if (n_per_axis < 3) throw Error(ErrorCode::BadParams, "grid torus needs at least 3 points per axis");
  for (double p : periods)
    if (!(p > 0.0) || !std::isfinite(p)) throw Error(ErrorCode::BadParams, "periods must be positive");
  long total = 1;
  for (int i = 0; i < d; ++i) total *= n_per_axis;
  if (total > 2000000) throw Error(ErrorCode::BadParams, "grid too large");
  const int count = static_cast<int>(total);

  auto index = [&](std::vector<int> c) {
    int id = 0;
    for (int i = 0; i < d; ++i) id = id * n_per_axis + ((c[static_cast<std::size_t>(i)] % n_per_axis) + n_per_axis) % n_per_axis;
    return id;
  };
  GeneratedMesh mesh;
  mesh.manifold = ModelManifold::flat_torus(periods);
  std::vector<Simplex> simplices;
  std::vector<int> perm(static_cast<std::size_t>(d));
  for (int id = 0; id < count; ++id) {
    std::vector<int> c(static_cast<std::size_t>(d));
    int rest = id;
    for (int i = d - 1; i >= 0; --i) {
      c[static_cast<std::size_t>(i)] = rest % n_per_axis;
      rest /= n_per_axis;
    }
    Vec p(d);
    for (int i = 0; i < d; ++i) p(i) = periods[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(i)] / n_per_axis;
    mesh.points.push_back(p);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<int> walk = c;
      Simplex s{index(walk)};
      for (int axis : perm) {
        ++walk[static_cast<std::size_t>(axis)];
        s.push_back(index(walk));
      }
      simplices.push_back(std::move(s));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  mesh.complex = AbstractComplex(count, simplices);
  mesh.name = "grid_torus_n" + std::to_string(n_per_axis);
  return mesh;
}

GeneratedMesh perturbed(const GeneratedMesh& mesh, double magnitude, std::uint64_t seed) {
  if (!(magnitude >= 0.0) || !std::isfinite(magnitude)) throw Error(ErrorCode::BadParams, "magnitude must be nonnegative");
  if (magnitude >= mesh.manifold.injectivity_radius())
    throw Error(ErrorCode::BadParams, "magnitude must be below the injectivity radius");
  GeneratedMesh out = mesh;
  Rng rng(seed);
  for (auto& p : out.points) p = mesh.manifold.random_point_in_ball(p, magnitude, rng);
  out.name = mesh.name + "_perturbed";
  return out;
}

}  // namespace riemsimplex
