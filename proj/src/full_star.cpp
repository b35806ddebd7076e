#include "riemsimplex/full_star.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "riemsimplex/error.hpp"
#include "riemsimplex/euclid_simplex.hpp"

namespace riemsimplex {

namespace {

constexpr double kPivotEps = 1e-12;

// Dense tableau simplex method with Bland's rule.
class Tableau {
 public:
  Tableau(const Mat& a, const Vec& b) : m_(static_cast<int>(a.rows())), n_(static_cast<int>(a.cols())) {
    t_ = Mat::Zero(m_ + 1, n_ + m_ + 1);
    for (int i = 0; i < m_; ++i) {
      const double s = b(i) < 0.0 ? -1.0 : 1.0;
      t_.row(i).head(n_) = s * a.row(i);
      t_(i, n_ + i) = 1.0;
      t_(i, n_ + m_) = s * b(i);
      basis_.push_back(n_ + i);
    }
  }

  // Phase one; false when the system has no nonnegative solution.
  bool feasible() {
    t_.row(m_).setZero();
    for (int i = 0; i < m_; ++i) t_.row(m_) -= t_.row(i);
    for (int i = 0; i < m_; ++i) t_(m_, n_ + i) = 0.0;
    run(n_ + m_);
    const double scale = 1.0 + t_.col(n_ + m_).head(m_).cwiseAbs().maxCoeff();
    if (t_(m_, n_ + m_) < -1e-10 * scale) return false;
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      for (int j = 0; j < n_; ++j)
        if (std::abs(t_(i, j)) > kPivotEps) {
          pivot(i, j);
          break;
        }
    }
    return true;
  }

  // Phase two: maximum of c.z; artificial columns never re-enter.
  double maximize(const Vec& c) {
    t_.row(m_).setZero();
    for (int j = 0; j < n_; ++j) t_(m_, j) = -c(j);
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < n_ && c(basis_[i]) != 0.0) t_.row(m_) += c(basis_[i]) * t_.row(i);
    if (!run(n_)) return kInf;
    return t_(m_, n_ + m_);
  }

 private:
  // Pivots until optimal; false when unbounded.
  bool run(int columns) {
    for (int guard = 0; guard < 10000; ++guard) {
      int enter = -1;
      for (int j = 0; j < columns; ++j)
        if (t_(m_, j) < -kPivotEps) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      int leave = -1;
      double best = kInf;
      for (int i = 0; i < m_; ++i) {
        if (t_(i, enter) <= kPivotEps) continue;
        const double ratio = t_(i, n_ + m_) / t_(i, enter);
        if (ratio < best - 1e-15 || (ratio <= best + 1e-15 && leave >= 0 && basis_[i] < basis_[leave])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
    throw Error(ErrorCode::NoConvergence, "linear program did not terminate");
  }

  void pivot(int r, int c) {
    t_.row(r) /= t_(r, c);
    for (int i = 0; i <= m_; ++i)
      if (i != r && t_(i, c) != 0.0) t_.row(i) -= t_(i, c) * t_.row(r);
    basis_[r] = c;
  }

  int m_, n_;
  Mat t_;
  std::vector<int> basis_;
};

Mat columns_of(const LiftedStar& ls, const Simplex& s) {
  Mat out(ls.points.rows(), static_cast<Eigen::Index>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = ls.points.col(s[i]);
  return out;
}

int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

// Sign of det[f_1 - f_0, ..., f_{n-1} - f_0, apex - f_0].
int side(const LiftedStar& ls, const Simplex& facet, int apex) {
  const int n = static_cast<int>(ls.points.rows());
  Mat e(n, n);
  const Vec f0 = ls.points.col(facet[0]);
  for (int i = 1; i < n; ++i) e.col(i - 1) = ls.points.col(facet[static_cast<std::size_t>(i)]) - f0;
  e.col(n - 1) = ls.points.col(apex) - f0;
  return sign_of(e.determinant());
}

bool orientation_check(const LiftedStar& ls) {
  std::map<Simplex, std::vector<std::size_t>> by_facet;
  for (std::size_t s = 0; s < ls.simplices.size(); ++s)
    for (std::size_t i = 0; i < ls.simplices[s].size(); ++i) {
      Simplex f = ls.simplices[s];
      f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
      by_facet[f].push_back(s);
    }
  for (const auto& [facet, owners] : by_facet) {
    if (owners.size() > 2) return false;
    if (owners.size() < 2) continue;
    int apex[2] = {-1, -1};
    for (int k = 0; k < 2; ++k)
      for (int v : ls.simplices[owners[static_cast<std::size_t>(k)]])
        if (!std::binary_search(facet.begin(), facet.end(), v)) apex[k] = v;
    const int s0 = side(ls, facet, apex[0]);
    const int s1 = side(ls, facet, apex[1]);
    if (s0 == 0 || s1 == 0 || s0 == s1) return false;
  }
  return true;
}

bool exact_embedding(const LiftedStar& ls) {
  for (std::size_t i = 0; i < ls.simplices.size(); ++i)
    for (std::size_t j = i + 1; j < ls.simplices.size(); ++j) {
      const Simplex& a = ls.simplices[i];
      const Simplex& b = ls.simplices[j];
      std::vector<bool> exclusive(a.size());
      for (std::size_t k = 0; k < a.size(); ++k) exclusive[k] = !std::binary_search(b.begin(), b.end(), a[k]);
      const auto w = max_exclusive_weight(columns_of(ls, a), columns_of(ls, b), exclusive);
      if (w && *w > 1e-9) return false;
    }
  return true;
}

// Barycentric coordinates of x with respect to the n-simplex with columns s.
std::optional<Vec> barycentric(const Mat& s, const Vec& x) {
  const auto n = s.rows();
  Mat a(n + 1, s.cols());
  a.topRows(n) = s;
  a.row(n).setOnes();
  Vec rhs(n + 1);
  rhs << x, 1.0;
  Eigen::FullPivLU<Mat> lu(a);
  if (!lu.isInvertible()) return std::nullopt;
  return Vec(lu.solve(rhs));
}

bool sampled_embedding(const LiftedStar& ls, const FullStarOptions& options) {
  const int count = static_cast<int>(ls.simplices.size());
  if (count < 2) return true;
  const int per = std::max(1, options.samples / count);
  Rng rng(options.seed);
  std::vector<Mat> cols;
  for (const auto& s : ls.simplices) cols.push_back(columns_of(ls, s));
  for (int i = 0; i < count; ++i)
    for (int k = 0; k < per; ++k) {
      const Vec x = cols[static_cast<std::size_t>(i)] * random_weights(static_cast<int>(cols[static_cast<std::size_t>(i)].cols()), rng);
      for (int j = 0; j < count; ++j) {
        if (j == i) continue;
        const auto mu = barycentric(cols[static_cast<std::size_t>(j)], x);
        if (mu && mu->minCoeff() > 1e-9) return false;
      }
    }
  return true;
}

bool center_interior_check(const LiftedStar& ls) {
  const int n = static_cast<int>(ls.points.rows());
  const Vec c = ls.points.col(0);
  if (n == 1) {
    if (ls.simplices.size() != 2) return false;
    const double a = ls.points(0, ls.simplices[0][1]) - c(0);
    const double b = ls.points(0, ls.simplices[1][1]) - c(0);
    return a * b < 0.0;
  }
  std::vector<Simplex> link;
  for (const auto& s : ls.simplices) {
    if (s.empty() || s[0] != 0) return false;
    link.emplace_back(s.begin() + 1, s.end());
  }
  const AbstractComplex lc(static_cast<int>(ls.points.cols()), link);
  if (lc.dimension() != n - 1 || !is_closed_pseudomanifold(lc)) return false;
  for (const auto& f : link) {
    Vec d = Vec::Zero(n);
    for (int v : f) d += ls.points.col(v) - c;
    d /= static_cast<double>(f.size());
    int hits = 0;
    for (const auto& g : link) {
      Mat a(n + 1, n + 1);
      for (int i = 0; i < n; ++i) {
        a.col(i).head(n) = ls.points.col(g[static_cast<std::size_t>(i)]) - c;
        a(n, i) = 1.0;
      }
      a.col(n).head(n) = -d;
      a(n, n) = 0.0;
      Vec rhs = Vec::Zero(n + 1);
      rhs(n) = 1.0;
      Eigen::FullPivLU<Mat> lu(a);
      if (!lu.isInvertible()) continue;
      const Vec sol = lu.solve(rhs);
      if (sol(n) > 0.0 && sol.head(n).minCoeff() >= -1e-10) ++hits;
    }
    if (hits != 1) return false;
  }
  return true;
}

}  // namespace

std::optional<double> max_exclusive_weight(const Mat& a, const Mat& b, const std::vector<bool>& exclusive) {
  const auto n = a.rows();
  const auto p = a.cols(), q = b.cols();
  const double scale = std::max({a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff(), 1e-300});
  Mat lp = Mat::Zero(n + 2, p + q);
  lp.block(0, 0, n, p) = a / scale;
  lp.block(0, p, n, q) = -b / scale;
  lp.block(n, 0, 1, p).setOnes();
  lp.block(n + 1, p, 1, q).setOnes();
  Vec rhs = Vec::Zero(n + 2);
  rhs(n) = rhs(n + 1) = 1.0;
  Vec cost = Vec::Zero(p + q);
  for (Eigen::Index i = 0; i < p; ++i) cost(i) = exclusive[static_cast<std::size_t>(i)] ? 1.0 : 0.0;
  Tableau t(lp, rhs);
  if (!t.feasible()) return std::nullopt;
  return t.maximize(cost);
}

LiftedStar lift_star(const ModelManifold& m, const std::vector<Vec>& points, const AbstractComplex& a, int p) {
  if (static_cast<int>(points.size()) != a.vertex_count())
    throw Error(ErrorCode::DimensionMismatch, "point count does not match the complex");
  const AbstractComplex st = a.star(p);
  std::vector<int> ids{p};
  for (const auto& v : st.simplices_of_dimension(0))
    if (v[0] != p) ids.push_back(v[0]);
  std::map<int, int> local;
  for (std::size_t i = 0; i < ids.size(); ++i) local[ids[i]] = static_cast<int>(i);
  LiftedStar ls;
  ls.center = p;
  ls.vertex_ids = ids;
  const Vec& x = points[static_cast<std::size_t>(p)];
  const Mat frame = m.frame(x);
  ls.points = Mat::Zero(m.dimension(), static_cast<Eigen::Index>(ids.size()));
  for (std::size_t i = 1; i < ids.size(); ++i)
    ls.points.col(static_cast<Eigen::Index>(i)) = m.to_coords(frame, m.log(x, points[static_cast<std::size_t>(ids[i])]));
  for (const auto& s : st.maximal_simplices()) {
    Simplex t;
    for (int v : s) t.push_back(local[v]);
    std::sort(t.begin(), t.end());
    ls.simplices.push_back(std::move(t));
  }
  return ls;
}

LiftedStar make_lifted_star(Mat points, std::vector<Simplex> simplices) {
  LiftedStar ls;
  ls.center = 0;
  for (Eigen::Index i = 0; i < points.cols(); ++i) ls.vertex_ids.push_back(static_cast<int>(i));
  for (auto& s : simplices) {
    std::sort(s.begin(), s.end());
    if (s.empty() || s.front() < 0 || s.back() >= points.cols())
      throw Error(ErrorCode::UnknownVertex, "star simplex index out of range");
  }
  ls.points = std::move(points);
  ls.simplices = std::move(simplices);
  return ls;
}

FullStarReport full_star_check(const LiftedStar& ls, double t0, const FullStarOptions& options) {
  const int n = static_cast<int>(ls.points.rows());
  FullStarReport r;
  r.simplex_count = static_cast<int>(ls.simplices.size());
  const bool exact = options.mode == EmbeddingMode::Exact || (options.mode == EmbeddingMode::Auto && n <= 3);
  if (exact && n > 3) throw Error(ErrorCode::DimensionUnsupported, "exact embedding test supports n <= 3");
  bool shape_ok = !ls.simplices.empty();
  for (const auto& s : ls.simplices)
    if (static_cast<int>(s.size()) != n + 1 || s.front() != 0) shape_ok = false;
  if (!shape_ok) return r;

  r.min_thickness = 1.0;
  for (const auto& s : ls.simplices)
    r.min_thickness = std::min(r.min_thickness, thickness(EuclideanSimplex(columns_of(ls, s))));
  r.thickness_ok = r.min_thickness >= t0 * (1.0 - options.relative_tolerance);
  r.orientation_consistent = orientation_check(ls);
  r.sampled = !exact;
  r.embedded = exact ? exact_embedding(ls) : sampled_embedding(ls, options);
  r.center_interior = center_interior_check(ls);
  return r;
}

}  // namespace riemsimplex
