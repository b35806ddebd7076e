#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <limits>
#include <random>

namespace riemsimplex {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Rng = std::mt19937_64;

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kPi = 3.14159265358979323846;

double factorial(int n);

// Largest singular value; 0 for an empty matrix.
double operator_norm(const Mat& m);
// k-th (smallest of min(rows, cols)) singular value; 0 for an empty matrix.
double smallest_singular_value(const Mat& m);

Vec gaussian_vector(int n, Rng& rng);
Vec random_unit_vector(int n, Rng& rng);
// Uniform sample of the standard simplex with `count` barycentric weights.
Vec random_weights(int count, Rng& rng);
double uniform(double lo, double hi, Rng& rng);
Mat random_orthogonal(int n, Rng& rng);

// Fourth-order central difference Jacobian of f at x.  f maps R^d to R^m.
template <class F>
Mat central_jacobian(F&& f, const Vec& x, double step) {
  const int d = static_cast<int>(x.size());
  Mat jac;
  for (int j = 0; j < d; ++j) {
    Vec e = Vec::Zero(d);
    e(j) = step;
    const Vec f_p2 = f(Vec(x + 2.0 * e));
    const Vec f_p1 = f(Vec(x + e));
    const Vec f_m1 = f(Vec(x - e));
    const Vec f_m2 = f(Vec(x - 2.0 * e));
    if (j == 0) jac.resize(f_p1.size(), d);
    jac.col(j) = (-f_p2 + 8.0 * f_p1 - 8.0 * f_m1 + f_m2) / (12.0 * step);
  }
  return jac;
}

}  // namespace riemsimplex
