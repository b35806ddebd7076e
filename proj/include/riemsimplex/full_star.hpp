#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "riemsimplex/complex.hpp"
#include "riemsimplex/model_manifold.hpp"

namespace riemsimplex {

// Star of a vertex mapped into R^n; local index 0 is the centre.
struct LiftedStar {
  int center = -1;                // global vertex id
  std::vector<int> vertex_ids;    // global id of each local index
  Mat points;                     // n x m, column i is local vertex i
  std::vector<Simplex> simplices; // maximal simplices of the star, local indices
};

// Lifts str(p) by log_p, in the frame returned by m.frame(points[p]).
LiftedStar lift_star(const ModelManifold& m, const std::vector<Vec>& points, const AbstractComplex& a, int p);
// Builds a lifted star from chart points directly; column 0 must be the centre.
LiftedStar make_lifted_star(Mat points, std::vector<Simplex> simplices);

enum class EmbeddingMode { Auto, Exact, Sampled };

struct FullStarOptions {
  EmbeddingMode mode = EmbeddingMode::Auto;
  int samples = 100000;  // sampled mode, total over the star
  std::uint64_t seed = 1;
  double relative_tolerance = 1e-12;  // on thickness >= t0
};

struct FullStarReport {
  bool thickness_ok = false;
  double min_thickness = 0.0;
  bool embedded = false;
  bool sampled = false;  // embedding verdict came from sampling
  bool center_interior = false;
  bool orientation_consistent = false;
  int simplex_count = 0;
  bool ok() const { return thickness_ok && embedded && center_interior && orientation_consistent; }
};

FullStarReport full_star_check(const LiftedStar& ls, double t0, const FullStarOptions& options = {});

// Largest total weight that a common point of conv(a) and conv(b) can put on the
// columns of a flagged in `exclusive`; nullopt when the hulls are disjoint.
std::optional<double> max_exclusive_weight(const Mat& a, const Mat& b, const std::vector<bool>& exclusive);

}  // namespace riemsimplex
