#include "riemsimplex/euclid_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "riemsimplex/error.hpp"

namespace riemsimplex {

namespace {

constexpr double kRankThreshold = 1e-13;

int numeric_rank(const Mat& m) {
  if (m.size() == 0) return 0;
  Eigen::ColPivHouseholderQR<Mat> qr(m);
  qr.setThreshold(kRankThreshold);
  return static_cast<int>(qr.rank());
}

bool is_degenerate(const EuclideanSimplex& s) {
  const int k = s.dimension();
  if (k <= 0) return false;
  if (k > s.ambient_dimension()) return true;
  return numeric_rank(edge_matrix(s)) < k;
}

}  // namespace

EuclideanSimplex::EuclideanSimplex(Mat vertices) : vertices_(std::move(vertices)) {
  if (vertices_.cols() < 1) throw Error(ErrorCode::DimensionMismatch, "simplex needs at least one vertex");
}

EuclideanSimplex EuclideanSimplex::from_rows(const std::vector<std::vector<double>>& points) {
  if (points.empty()) throw Error(ErrorCode::DimensionMismatch, "simplex needs at least one vertex");
  const auto n = static_cast<Eigen::Index>(points.front().size());
  Mat v(n, static_cast<Eigen::Index>(points.size()));
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (static_cast<Eigen::Index>(points[j].size()) != n)
      throw Error(ErrorCode::DimensionMismatch, "vertices have different lengths");
    for (Eigen::Index i = 0; i < n; ++i) v(i, static_cast<Eigen::Index>(j)) = points[j][i];
  }
  return EuclideanSimplex(std::move(v));
}

EuclideanSimplex EuclideanSimplex::face(const std::vector<int>& indices) const {
  Mat v(vertices_.rows(), static_cast<Eigen::Index>(indices.size()));
  for (std::size_t j = 0; j < indices.size(); ++j) {
    if (indices[j] < 0 || indices[j] > dimension())
      throw Error(ErrorCode::UnknownVertex, "face index out of range");
    v.col(static_cast<Eigen::Index>(j)) = vertices_.col(indices[j]);
  }
  return EuclideanSimplex(std::move(v));
}

EuclideanSimplex EuclideanSimplex::opposite_facet(int i) const {
  std::vector<int> idx;
  for (int j = 0; j <= dimension(); ++j)
    if (j != i) idx.push_back(j);
  return face(idx);
}

Mat edge_matrix(const EuclideanSimplex& s, int base) {
  const int k = s.dimension();
  Mat p(s.ambient_dimension(), k);
  int c = 0;
  for (int i = 0; i <= k; ++i) {
    if (i == base) continue;
    p.col(c++) = s.vertices().col(i) - s.vertices().col(base);
  }
  return p;
}

Mat edge_length_matrix(const EuclideanSimplex& s) {
  const int m = s.dimension() + 1;
  Mat l = Mat::Zero(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) l(i, j) = l(j, i) = (s.vertices().col(i) - s.vertices().col(j)).norm();
  return l;
}

double longest_edge(const EuclideanSimplex& s) {
  return s.dimension() == 0 ? 0.0 : edge_length_matrix(s).maxCoeff();
}

double altitude(const EuclideanSimplex& s, int i) {
  const int k = s.dimension();
  if (k == 0) return 0.0;
  const int base = (i == 0) ? 1 : 0;
  const Vec w = s.vertices().col(i) - s.vertices().col(base);
  if (k == 1) return w.norm();
  Mat f(s.ambient_dimension(), k - 1);
  int c = 0;
  for (int j = 0; j <= k; ++j) {
    if (j == i || j == base) continue;
    f.col(c++) = s.vertices().col(j) - s.vertices().col(base);
  }
  Eigen::ColPivHouseholderQR<Mat> qr(f);
  qr.setThreshold(kRankThreshold);
  const Vec r = w - f * qr.solve(w);
  return r.norm();
}

Vec altitudes(const EuclideanSimplex& s) {
  Vec a(s.dimension() + 1);
  for (int i = 0; i <= s.dimension(); ++i) a(i) = altitude(s, i);
  return a;
}

double thickness(const EuclideanSimplex& s) {
  const int k = s.dimension();
  if (k == 0) return 1.0;
  const double l = longest_edge(s);
  if (l == 0.0 || is_degenerate(s)) return 0.0;
  return altitudes(s).minCoeff() / (k * l);
}

double volume(const EuclideanSimplex& s) {
  const int k = s.dimension();
  if (k == 0) return 1.0;
  if (k > s.ambient_dimension()) return 0.0;
  Eigen::JacobiSVD<Mat> svd(edge_matrix(s));
  return svd.singularValues().prod() / factorial(k);
}

double volume_by_altitudes(const EuclideanSimplex& s) {
  const int k = s.dimension();
  if (k == 0) return 1.0;
  return altitude(s, 0) * volume_by_altitudes(s.opposite_facet(0)) / k;
}

double fatness(const EuclideanSimplex& s) {
  const int k = s.dimension();
  if (k == 0) return 1.0;
  const double l = longest_edge(s);
  if (l == 0.0 || is_degenerate(s)) return 0.0;
  const double v_sv = volume(s);
  const double v_alt = volume_by_altitudes(s);
  const double scale = std::pow(l, k);
  if (std::abs(v_sv - v_alt) > 1e-8 * std::max(v_sv, v_alt) + 1e-13 * scale)
    throw std::logic_error("volume cross-check failed");
  return v_sv / scale;
}

double min_singular_value(const Mat& p) { return smallest_singular_value(p); }

SingularValueCheck check_bound_skP(const EuclideanSimplex& s) {
  SingularValueCheck out;
  const int k = s.dimension();
  if (k == 0) {
    out.holds = true;
    return out;
  }
  const Mat p = edge_matrix(s);
  const double t = thickness(s);
  const double l = longest_edge(s);
  out.sigma_min = k > s.ambient_dimension() ? 0.0 : min_singular_value(p);
  out.required = std::sqrt(static_cast<double>(k)) * t * l;
  bool rows_ok = true;
  if (t > 0.0) {
    const Mat pinv = (p.transpose() * p).inverse() * p.transpose();
    for (int i = 1; i <= k; ++i) {
      const double expect = 1.0 / altitude(s, i);
      const double err = std::abs(pinv.row(i - 1).norm() - expect) / expect;
      out.max_row_error = std::max(out.max_row_error, err);
    }
    rows_ok = out.max_row_error < 1e-8;
  }
  out.holds = rows_ok && out.sigma_min >= out.required * (1.0 - 1e-12) - 1e-15 * l;
  return out;
}

GramRealization gram_from_lengths(const Mat& lengths) {
  if (lengths.rows() != lengths.cols() || lengths.rows() < 1)
    throw Error(ErrorCode::DimensionMismatch, "length matrix must be square and nonempty");
  const int m = static_cast<int>(lengths.rows());
  const int k = m - 1;
  const double scale = lengths.cwiseAbs().maxCoeff();
  for (int i = 0; i < m; ++i) {
    if (lengths(i, i) != 0.0) throw Error(ErrorCode::NonMetric, "length matrix diagonal must be zero");
    for (int j = i + 1; j < m; ++j) {
      if (!(lengths(i, j) > 0.0))
        throw Error(ErrorCode::NonMetric,
                    "edge (" + std::to_string(i) + "," + std::to_string(j) + ") is not positive");
      if (std::abs(lengths(i, j) - lengths(j, i)) > 1e-12 * scale)
        throw Error(ErrorCode::NonMetric, "length matrix is not symmetric");
    }
  }
  GramRealization g;
  g.lengths = lengths;
  g.gram = Mat(k, k);
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j) {
      const double lij = (i == j) ? 0.0 : 0.5 * (lengths(i, j) + lengths(j, i));
      g.gram(i - 1, j - 1) = 0.5 * (lengths(0, i) * lengths(0, i) + lengths(0, j) * lengths(0, j) - lij * lij);
    }
  if (k == 0) {
    g.realizable = true;
    g.simplex = EuclideanSimplex(Mat::Zero(0, 1));
    return g;
  }
  Eigen::SelfAdjointEigenSolver<Mat> eig(g.gram);
  const Vec& mu = eig.eigenvalues();
  g.min_eigenvalue = mu(0);
  g.realizable = mu(0) >= -1e-10 * g.gram.trace();
  if (g.realizable) {
    const Vec root = mu.cwiseMax(0.0).cwiseSqrt();
    const Mat p = root.asDiagonal() * eig.eigenvectors().transpose();
    Mat v = Mat::Zero(k, m);
    v.rightCols(k) = p;
    g.simplex = EuclideanSimplex(std::move(v));
  }
  return g;
}

DistortionBounds thickness_distortion(const EuclideanSimplex& s, const Mat& perturbed_lengths, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw Error(ErrorCode::BadParams, "eta must lie in [0,1]");
  const int m = s.dimension() + 1;
  if (perturbed_lengths.rows() != m || perturbed_lengths.cols() != m)
    throw Error(ErrorCode::DimensionMismatch, "perturbed length matrix has the wrong size");
  const int k = s.dimension();
  const double t = thickness(s);
  const double l = longest_edge(s);
  DistortionBounds b;
  b.c0 = eta * t * t / 4.0;
  const Mat ell = edge_length_matrix(s);
  const double allowed = b.c0 * l + 1e-12 * l;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (std::abs(perturbed_lengths(i, j) - ell(i, j)) > allowed)
        throw Error(ErrorCode::PerturbationTooLarge,
                    "edge (" + std::to_string(i) + "," + std::to_string(j) + ") moved more than C0*L");
  if (k == 0) return b;
  b.sigma_lower = (1.0 - eta) * (k > s.ambient_dimension() ? 0.0 : min_singular_value(edge_matrix(s)));
  b.thickness_lower = 4.0 * (1.0 - eta) * t / (5.0 * std::sqrt(static_cast<double>(k)));
  return b;
}

DistortionCheck verify_thickness_distortion(const EuclideanSimplex& s, const Mat& perturbed_lengths,
                                            double eta) {
  DistortionCheck c;
  c.bounds = thickness_distortion(s, perturbed_lengths, eta);
  if (s.dimension() == 0) {
    c.sigma_ok = c.thickness_ok = true;
    c.thickness_actual = 1.0;
    return c;
  }
  const GramRealization g = gram_from_lengths(perturbed_lengths);
  if (g.realizable) {
    c.sigma_actual = min_singular_value(edge_matrix(*g.simplex));
    c.thickness_actual = thickness(*g.simplex);
  }
  const double slack = 1e-12;
  c.sigma_ok = g.realizable && c.sigma_actual >= c.bounds.sigma_lower * (1.0 - slack) - slack * longest_edge(s);
  c.thickness_ok = g.realizable && c.thickness_actual >= c.bounds.thickness_lower * (1.0 - slack) - slack;
  return c;
}

double matrix_norm(const Mat& m, MatrixNorm p) {
  if (m.size() == 0) return 0.0;
  switch (p) {
    case MatrixNorm::One: return m.cwiseAbs().colwise().sum().maxCoeff();
    case MatrixNorm::Infinity: return m.cwiseAbs().rowwise().sum().maxCoeff();
    case MatrixNorm::Two: return operator_norm(m);
  }
  return 0.0;
}

FriedlandGap friedland_gap(const Mat& a, const Mat& e, MatrixNorm p) {
  if (a.rows() != a.cols() || e.rows() != e.cols() || a.rows() != e.rows())
    throw Error(ErrorCode::DimensionMismatch, "Friedland gap needs square matrices of equal size");
  const auto n = static_cast<int>(a.rows());
  const Mat ae = a + e;
  FriedlandGap g;
  g.actual = std::abs(ae.determinant() - a.determinant());
  const double base = std::max(matrix_norm(a, p), matrix_norm(ae, p));
  g.bound = n * std::pow(base, n - 1) * matrix_norm(e, p);
  return g;
}

LinearDistortion linear_distortion(const EuclideanSimplex& src, const EuclideanSimplex& dst, int pair_samples,
                                   std::uint64_t seed) {
  const int k = src.dimension();
  if (dst.dimension() != k || dst.ambient_dimension() != src.ambient_dimension() || src.ambient_dimension() != k)
    throw Error(ErrorCode::DimensionMismatch, "linear distortion needs two full-dimensional simplices");
  const double t = thickness(src);
  if (t == 0.0) throw Error(ErrorCode::DegenerateSource, "source simplex is degenerate");
  LinearDistortion out;
  const double l = longest_edge(src);
  out.c0 = (edge_length_matrix(dst) - edge_length_matrix(src)).cwiseAbs().maxCoeff() / l;
  if (out.c0 > 2.0 / 3.0) throw Error(ErrorCode::PerturbationTooLarge, "C0 exceeds 2/3");
  out.eta = 4.0 * out.c0 / (t * t);
  const Mat p = edge_matrix(src);
  const Mat pt = edge_matrix(dst);
  out.linear_part = pt * p.inverse();
  out.translation = dst.vertex(0) - out.linear_part * src.vertex(0);
  Eigen::JacobiSVD<Mat> svd(out.linear_part);
  for (int i = 0; i < svd.singularValues().size(); ++i)
    out.measured = std::max(out.measured, std::abs(svd.singularValues()(i) - 1.0));
  Rng rng(seed);
  for (int s = 0; s < pair_samples; ++s) {
    const Vec x = src.vertices() * random_weights(k + 1, rng) + 0.1 * l * gaussian_vector(k, rng);
    const Vec y = src.vertices() * random_weights(k + 1, rng) + 0.1 * l * gaussian_vector(k, rng);
    const double d = (x - y).norm();
    if (d == 0.0) continue;
    const Vec ax = out.linear_part * x + out.translation;
    const Vec ay = out.linear_part * y + out.translation;
    out.sampled = std::max(out.sampled, std::abs((ax - ay).norm() - d) / d);
  }
  return out;
}

}  // namespace riemsimplex
