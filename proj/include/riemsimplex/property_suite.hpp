#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "riemsimplex/numerics.hpp"

namespace riemsimplex {

struct PropertyResult {
  PropertyResult() = default;
  PropertyResult(std::string id_, std::string name_) : id(std::move(id_)), name(std::move(name_)) {}

  std::string id;
  std::string name;
  int trials = 0;
  int violations = 0;
  double worst_margin = kInf;
  std::vector<std::pair<std::string, double>> details;

  // Counts a trial; a negative margin is a violation.
  void record(double margin);
  void detail(const std::string& key, double value) { details.emplace_back(key, value); }
  bool pass() const { return trials > 0 && violations == 0; }
};

// Karcher means on flat spaces against the affine combination, tolerance 1e-12.
PropertyResult flat_barycenter_property(int trials, std::uint64_t seed);
// Residual below 1e-12 rho within 50 iterations, on S^2(1) and H^2(1) (trials each).
PropertyResult karcher_residual_property(int trials, std::uint64_t seed);
// Singular value and thickness lower bounds under edge-length perturbations of size eta t^2 L / 4.
PropertyResult thickness_distortion_property(int trials, std::uint64_t seed);
// No certificate fires on a simplex the sampling oracle flags degenerate; great-circle family never certified.
PropertyResult certificate_soundness_property(int trials, std::uint64_t seed, int oracle_samples = 500);
// Rauch, transition, edge, holonomy, Friedland, hinge and angle budgets.
std::vector<PropertyResult> comparison_properties(int trials, std::uint64_t seed);
// t^k <= fatness <= t / (k-1)! for k = 1..4, and fatness = t for triangles.
PropertyResult fatness_sandwich_property(int trials, std::uint64_t seed);
// Transition maps, displacement and inverse perturbation on S^2, H^2 and R^2.
PropertyResult embedding_bounds_property(int trials, std::uint64_t seed);

struct PropertySuiteOptions {
  std::uint64_t seed = 1;
  int samples = 0;  // per-property trial count; 0 selects the defaults
  int oracle_samples = 500;
};
std::vector<PropertyResult> run_property_suite(const PropertySuiteOptions& options);

}  // namespace riemsimplex
