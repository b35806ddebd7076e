#pragma once

#include <optional>
#include <vector>

#include "riemsimplex/numerics.hpp"

namespace riemsimplex {

// k+1 labelled points in R^n, stored as the columns of an n x (k+1) matrix.
class EuclideanSimplex {
 public:
  EuclideanSimplex() = default;
  explicit EuclideanSimplex(Mat vertices);
  static EuclideanSimplex from_rows(const std::vector<std::vector<double>>& points);

  int dimension() const { return static_cast<int>(vertices_.cols()) - 1; }
  int ambient_dimension() const { return static_cast<int>(vertices_.rows()); }
  const Mat& vertices() const { return vertices_; }
  Vec vertex(int i) const { return vertices_.col(i); }

  EuclideanSimplex face(const std::vector<int>& indices) const;
  EuclideanSimplex opposite_facet(int i) const;

 private:
  Mat vertices_;
};

// Column i is vertex_i - vertex_base, skipping the base.
Mat edge_matrix(const EuclideanSimplex& s, int base = 0);
Mat edge_length_matrix(const EuclideanSimplex& s);
double longest_edge(const EuclideanSimplex& s);

// Distance from vertex i to the affine hull of the opposite facet.
double altitude(const EuclideanSimplex& s, int i);
Vec altitudes(const EuclideanSimplex& s);
double thickness(const EuclideanSimplex& s);

// k-volume from the singular values of the edge matrix.
double volume(const EuclideanSimplex& s);
// k-volume from the recursion vol_k = a_i vol_{k-1}(facet) / k.
double volume_by_altitudes(const EuclideanSimplex& s);
double fatness(const EuclideanSimplex& s);

double min_singular_value(const Mat& p);

struct SingularValueCheck {
  double sigma_min = 0.0;
  double required = 0.0;   // sqrt(k) t L
  double max_row_error = 0.0;  // max_i | |row_i(P^+)| - 1/a_i | relative to 1/a_i
  bool holds = false;
};
SingularValueCheck check_bound_skP(const EuclideanSimplex& s);

struct GramRealization {
  Mat lengths;
  Mat gram;
  double min_eigenvalue = 0.0;
  bool realizable = false;
  std::optional<EuclideanSimplex> simplex;  // k-dimensional realization when realizable
};
GramRealization gram_from_lengths(const Mat& lengths);

struct DistortionBounds {
  double c0 = 0.0;
  double sigma_lower = 0.0;      // (1 - eta) sigma_k(P)
  double thickness_lower = 0.0;  // 4 (1 - eta) t / (5 sqrt k)
};
DistortionBounds thickness_distortion(const EuclideanSimplex& s, const Mat& perturbed_lengths, double eta);

struct DistortionCheck {
  DistortionBounds bounds;
  double sigma_actual = 0.0;
  double thickness_actual = 0.0;
  bool sigma_ok = false;
  bool thickness_ok = false;
};
DistortionCheck verify_thickness_distortion(const EuclideanSimplex& s, const Mat& perturbed_lengths,
                                            double eta);

enum class MatrixNorm { One, Two, Infinity };
double matrix_norm(const Mat& m, MatrixNorm p);

struct FriedlandGap {
  double actual = 0.0;
  double bound = 0.0;
};
FriedlandGap friedland_gap(const Mat& a, const Mat& e, MatrixNorm p = MatrixNorm::Infinity);

struct LinearDistortion {
  double c0 = 0.0;
  double eta = 0.0;       // 4 C0 / t^2
  double measured = 0.0;  // max_i |s_i(A) - 1| over singular values of the linear part
  double sampled = 0.0;   // max over sampled pairs of | |Ax - Ay| - |x - y| | / |x - y|
  Mat linear_part;
  Vec translation;
};
LinearDistortion linear_distortion(const EuclideanSimplex& src, const EuclideanSimplex& dst,
                                   int pair_samples = 1000, std::uint64_t seed = 7);

}  // namespace riemsimplex
