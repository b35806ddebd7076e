#pragma once

#include <cstdint>
#include <vector>

#include "riemsimplex/euclid_simplex.hpp"
#include "riemsimplex/model_manifold.hpp"

namespace riemsimplex {

struct KarcherOptions {
  double tolerance_factor = 1e-12;  // stop when |residual| < factor * rho
  int max_iterations = 200;
};

struct KarcherResult {
  Vec point;
  int iterations = 0;
  double residual = 0.0;
};

// Checks that weights are a point of the standard simplex of the right size.
void validate_weights(const Vec& weights, std::size_t vertex_count);

double energy(const ModelManifold& m, const std::vector<Vec>& vertices, const Vec& weights, const Vec& x);
// -sum_i w_i log_x(p_i); equals the gradient of the energy at x.
Vec grad_residual(const ModelManifold& m, const std::vector<Vec>& vertices, const Vec& weights, const Vec& x);

struct Ball {
  Vec center;
  double radius = 0.0;
};
// Smallest of the candidate balls centred at a vertex or at the uniform mean.
Ball containing_ball(const ModelManifold& m, const std::vector<Vec>& vertices);

KarcherResult karcher_mean(const ModelManifold& m, const std::vector<Vec>& vertices, const Vec& weights,
                           const KarcherOptions& options = {});
// Same, with a caller-supplied ball of radius below rho0 that contains the vertices.
KarcherResult karcher_mean(const ModelManifold& m, const std::vector<Vec>& vertices, const Vec& weights,
                           const Ball& ball, const KarcherOptions& options = {});

class RiemannianSimplex {
 public:
  RiemannianSimplex(ModelManifold m, std::vector<Vec> vertices, KarcherOptions options = {});

  const ModelManifold& manifold() const { return manifold_; }
  const std::vector<Vec>& vertices() const { return vertices_; }
  const Vec& vertex(int i) const { return vertices_[static_cast<std::size_t>(i)]; }
  int dimension() const { return static_cast<int>(vertices_.size()) - 1; }
  const Ball& ball() const { return ball_; }
  // Max distance from the reference vertex to the other vertices.
  double spread(int reference) const;
  Mat edge_lengths() const;
  double longest_edge() const;

  RiemannianSimplex face(const std::vector<int>& indices) const;

  KarcherResult solve(const Vec& weights) const;
  Vec bary_map(const Vec& weights) const;

  // Frame at x obtained by transporting the frame of vertex 0.
  Mat frame_at(const Vec& x) const;
  EuclideanSimplex lift(const Vec& x) const;
  EuclideanSimplex lift_in_frame(const Vec& x, const Mat& frame) const;

 private:
  ModelManifold manifold_;
  std::vector<Vec> vertices_;
  KarcherOptions options_;
  Ball ball_;
};

struct OracleOptions {
  int samples = 500;
  std::uint64_t seed = 20240601;
  double degenerate_thickness = 1e-9;
  bool check_injectivity = false;
};

struct OracleResult {
  double min_thickness = 1.0;
  bool orientation_consistent = true;
  bool orientation_checked = false;
  bool nondegenerate = true;
  int evaluated = 0;
  double min_pairwise_distance = -1.0;  // only when check_injectivity is set
  std::vector<Vec> sample_weights;
  std::vector<Vec> sample_points;
};

// Weight vectors used by the oracle: vertices, edge midpoints, barycentre, then random.
std::vector<Vec> oracle_weights(int vertex_count, int samples, std::uint64_t seed);
OracleResult nondegeneracy_oracle(const RiemannianSimplex& s, const OracleOptions& options = {});

struct BaryDifferential {
  Mat d_weights;          // derivative along e_i - e_0, coordinates at x
  Mat db;                 // d_weights * P^{-1}; empty when unavailable
  bool chart_valid = false;
  double deviation = kInf;  // |db - T_{x p0}|
  double bound = kInf;      // 14 Lambda h^2 / t0
  double composite_deviation = kInf;  // |d(log_{p0} o b) - I|
  double composite_bound = kInf;      // 17 Lambda h^2 / t0
  double scale_h = 0.0;
  double chart_thickness = 0.0;
  bool scale_ok = false;         // h < rho0 / 2
  double rank_indicator = 0.0;   // smallest singular value of d_weights over L
  bool degenerate = false;
};
BaryDifferential bary_map_differential(const RiemannianSimplex& s, const Vec& weights);

}  // namespace riemsimplex
