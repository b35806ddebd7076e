#pragma once

#include <optional>
#include <string>
#include <vector>

#include "riemsimplex/numerics.hpp"

namespace riemsimplex {

enum class ManifoldKind { Euclidean, Sphere, Hyperbolic, FlatTorus };

std::string to_string(ManifoldKind kind);

// Constant-curvature model space with closed-form geodesic operations.
//
// Sphere points are unit vectors in R^{n+1}; the physical sphere has radius r.
// Hyperbolic points lie on the unit hyperboloid <x,x> = -1 (time coordinate last);
// the physical space has scale k.  Tangent vectors are ambient vectors whose
// Euclidean (sphere) or Minkowski (hyperboloid) length equals their metric length.
// Torus points are fundamental-domain coordinates in [0, L_i).
class ModelManifold {
 public:
  static ModelManifold euclidean(int n);
  static ModelManifold sphere(int n, double radius = 1.0);
  static ModelManifold hyperbolic(int n, double scale = 1.0);
  static ModelManifold flat_torus(std::vector<double> periods);

  ManifoldKind kind() const { return kind_; }
  int dimension() const { return n_; }
  int ambient_dimension() const;
  double radius() const { return shape_; }  // sphere radius or hyperbolic scale
  const std::vector<double>& periods() const { return periods_; }

  double curvature_lower() const;
  double curvature_upper() const;
  double curvature_bound() const;  // Lambda = max(kappa_up, -kappa_low)
  double injectivity_radius() const;
  // Sphere radius or hyperbolic scale; infinite for flat spaces.
  double curvature_radius() const;

  Vec exp(const Vec& x, const Vec& v) const;
  Vec log(const Vec& x, const Vec& y) const;
  double dist(const Vec& x, const Vec& y) const;
  Vec transport(const Vec& x, const Vec& y, const Vec& v) const;

  double inner(const Vec& u, const Vec& v) const;
  double norm(const Vec& v) const;
  Vec project_tangent(const Vec& x, const Vec& v) const;
  Vec normalize_point(const Vec& x) const;
  // Returns a description of the violated point constraint, if any.
  std::optional<std::string> check_point(const Vec& x, double tol = 1e-12) const;

  // Columns form an orthonormal basis of T_x M in ambient coordinates.
  Mat frame(const Vec& x) const;
  // Transport of frame(from) to the tangent space at x.
  Mat transported_frame(const Vec& from, const Vec& x) const;
  Vec to_coords(const Mat& frame, const Vec& v) const;
  Vec from_coords(const Mat& frame, const Vec& c) const;

  Vec base_point() const;
  Vec random_point(Rng& rng) const;
  // exp_center of a tangent vector uniform in the ball of the given radius.
  Vec random_point_in_ball(const Vec& center, double radius, Rng& rng) const;
  Vec random_tangent(const Vec& x, Rng& rng) const;

 private:
  ModelManifold(ManifoldKind kind, int n, double shape, std::vector<double> periods);
  Vec torus_delta(const Vec& x, const Vec& y) const;

  ManifoldKind kind_ = ManifoldKind::Euclidean;
  int n_ = 1;
  double shape_ = 1.0;
  std::vector<double> periods_;
};

double rho0(const ModelManifold& m);
double convexity_radius(const ModelManifold& m);

}  // namespace riemsimplex
