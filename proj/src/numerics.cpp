#include "riemsimplex/numerics.hpp"

#include <cmath>

namespace riemsimplex {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double operator_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

double smallest_singular_value(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  return s(s.size() - 1);
}

Vec gaussian_vector(int n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = normal(rng);
  return v;
}

Vec random_unit_vector(int n, Rng& rng) {
  for (;;) {
    Vec v = gaussian_vector(n, rng);
    const double len = v.norm();
    if (len > 1e-12) return v / len;
  }
}

Vec random_weights(int count, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  Vec w(count);
  for (int i = 0; i < count; ++i) w(i) = expo(rng);
  return w / w.sum();
}

double uniform(double lo, double hi, Rng& rng) {
  std::uniform_real_distribution<double> u(lo, hi);
  return u(rng);
}

Mat random_orthogonal(int n, Rng& rng) {
  Mat g(n, n);
  for (int j = 0; j < n; ++j) g.col(j) = gaussian_vector(n, rng);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ() * Mat::Identity(n, n);
  // Fix signs so the distribution is Haar.
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

}  // namespace riemsimplex
