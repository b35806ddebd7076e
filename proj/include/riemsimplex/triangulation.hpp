#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "riemsimplex/complex.hpp"
#include "riemsimplex/euclid_simplex.hpp"
#include "riemsimplex/full_star.hpp"
#include "riemsimplex/model_manifold.hpp"

namespace riemsimplex {

enum class ScaleVariant { Main, PiecewiseFlat, Intrinsic };
std::string to_string(ScaleVariant v);
ScaleVariant parse_variant(const std::string& s);

// Sampling scale; the curvature term is infinite when Lambda = 0.
double scale_h(const ModelManifold& m, double t0, ScaleVariant variant);

struct VertexCheck {
  int vertex = -1;
  double star_radius = 0.0;  // max distance to star vertices
  bool star_in_ball = false;
  bool star_full = false;
  double min_lift_thickness = 0.0;
  FullStarReport full_star;
};

struct CoverCheck {
  int samples = 0;
  double sampled_max_gap = 0.0;
  bool covered = false;
  bool applicable = false;  // false on non-compact spaces
};

struct ChecklistItem {
  std::string name;
  std::string relation;
  double measured = 0.0;
  double required = 0.0;
  bool pass = false;
};

struct TriangulationOptions {
  ScaleVariant variant = ScaleVariant::Main;
  double t0 = 0.0;
  int cover_samples = 100000;
  std::uint64_t seed = 1;
  EmbeddingMode mode = EmbeddingMode::Auto;
  int differential_samples = 20;  // simplices probed for the composite differential
};

struct TriangulationReport {
  ScaleVariant variant = ScaleVariant::Main;
  double t0 = 0.0;
  double h = 0.0;
  int dimension = 0;
  bool complex_is_manifold = false;
  std::vector<VertexCheck> vertices;
  bool condition1_stars = false;
  CoverCheck cover;
  bool condition1 = false;
  bool condition2 = false;
  std::vector<ChecklistItem> checklist;
  bool verdict = false;
  std::vector<std::string> failures;
};

TriangulationReport check_triangulation(const ModelManifold& m, const std::vector<Vec>& points,
                                        const AbstractComplex& a, const TriangulationOptions& options);

struct PwfReport {
  bool all_realizable = false;
  double min_thickness = 0.0;
  double threshold = 0.0;       // 3 t0 / (4 sqrt n)
  double max_star_radius = 0.0;
  double h = 0.0;               // piecewise-flat scale
  bool hypothesis_met = false;  // max star radius < h
  bool bound_ok = false;        // min thickness > threshold
  int simplex_count = 0;
  std::vector<Simplex> offenders;
  std::vector<EuclideanSimplex> realized;  // one per maximal simplex, in complex order
  std::vector<Simplex> simplices;
};

// Realizes every maximal simplex from its geodesic edge lengths; throws when some are not realizable.
PwfReport pwf_metric(const ModelManifold& m, const std::vector<Vec>& points, const AbstractComplex& a, double t0);

struct DistortionPair {
  int simplex = -1;
  double d_flat = 0.0;
  double d_manifold = 0.0;
  double ratio = 0.0;
};

struct DistortionReport {
  double h = 0.0;
  double bound = 0.0;  // 50 Lambda h^2 / t0^2
  double measured_max = 0.0;
  double measured_abs_max = 0.0;
  int pairs = 0;
  int skipped = 0;
  bool hypothesis_met = false;
  bool holds = false;
  std::vector<DistortionPair> samples;
};

DistortionReport distortion_report(const ModelManifold& m, const std::vector<Vec>& points, const AbstractComplex& a,
                                   double t0, int pairs, std::uint64_t seed);

struct EmbeddingSuiteReport {
  int samples = 0;
  double rho = 0.0;
  double transition_bound = 0.0;  // 6 Lambda rho^2
  double max_differential_deviation = 0.0;
  int transition_violations = 0;
  double bilipschitz_worst_margin = kInf;   // (a)
  int bilipschitz_violations = 0;
  double displacement_worst_margin = kInf;  // (b)
  int displacement_violations = 0;
  double inverse_worst_margin = kInf;       // (c)
  int inverse_violations = 0;
  bool ok() const {
    return transition_violations == 0 && bilipschitz_violations == 0 && displacement_violations == 0 &&
           inverse_violations == 0;
  }
};

// Random transition maps log_x o exp_p over balls of radius rho.
EmbeddingSuiteReport embedding_bound_suite(const ModelManifold& m, int samples, double rho, std::uint64_t seed);

}  // namespace riemsimplex
