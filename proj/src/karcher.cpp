#include "riemsimplex/karcher.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "riemsimplex/error.hpp"

namespace riemsimplex {

namespace {

constexpr double kBallInflation = 1e-9;

// Second derivative of d^2/2 across the geodesic, relative to the radial one.
double transverse_factor(const ModelManifold& m, double d) {
  const double k = m.curvature_radius();
  if (!std::isfinite(k) || d == 0.0) return 1.0;
  const double th = d / k;
  if (m.kind() == ManifoldKind::Sphere) return th * std::cos(th) / std::sin(th);
  return th * std::cosh(th) / std::sinh(th);
}

// Newton step in frame coordinates; the Hessian of the energy is exact on model spaces.
Vec newton_direction(const ModelManifold& m, const std::vector<Vec>& vertices, const Vec& weights, const Vec& x,
                     const Vec& u) {
  const Mat frame = m.frame(x);
  const int n = m.dimension();
  Mat h = Mat::Zero(n, n);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const double w = weights(static_cast<Eigen::Index>(i));
    if (w == 0.0) continue;
    const Vec v = m.to_coords(frame, m.log(x, vertices[i]));
    const double d = v.norm();
    if (d == 0.0) {
      h += w * Mat::Identity(n, n);
      continue;
    }
    const Vec dir = v / d;
    const double c = transverse_factor(m, d);
    h += w * (c * Mat::Identity(n, n) + (1.0 - c) * dir * dir.transpose());
  }
  const Eigen::LDLT<Mat> ldlt(h);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) return u;
  const Vec step = ldlt.solve(m.to_coords(frame, u));
  if (!step.allFinite()) return u;
  return m.from_coords(frame, step);
}

// Newton iteration with a fixed-point fallback and no ball check; false when the cap is hit.
bool iterate_mean(const ModelManifold& m, const std::vector<Vec>& vertices, const Vec& weights, double rho,
                  const KarcherOptions& options, KarcherResult& out) {
  Eigen::Index start = 0;
  weights.maxCoeff(&start);
  Vec x = vertices[static_cast<std::size_t>(start)];
  // Once the residual is within a few ulps of the coordinates, a step that fails to reduce it is roundoff.
  double coord_scale = 1.0;
  for (const auto& v : vertices) coord_scale = std::max(coord_scale, v.lpNorm<Eigen::Infinity>());
  const double floor = 8.0 * std::numeric_limits<double>::epsilon() * coord_scale;
  const double tol = options.tolerance_factor * rho;
  Vec u = -grad_residual(m, vertices, weights, x);
  double res = m.norm(u);
  for (int it = 0;; ++it) {
    if (res < tol || rho == 0.0) {
      out.point = x;
      out.iterations = it;
      out.residual = res;
      return true;
    }
    if (it >= options.max_iterations) {
      out.point = x;
      out.iterations = it;
      out.residual = res;
      return false;
    }
    Vec next = m.exp(x, newton_direction(m, vertices, weights, x, u));
    Vec next_u = -grad_residual(m, vertices, weights, next);
    double next_res = m.norm(next_u);
    if (!(next_res < res)) {
      next = m.exp(x, u);
      next_u = -grad_residual(m, vertices, weights, next);
      next_res = m.norm(next_u);
    }
    if (!(next_res < res) && res < floor) {
      out.point = x;
      out.iterations = it;
      out.residual = res;
      return true;
    }
    x = std::move(next);
    u = std::move(next_u);
    res = next_res;
  }
}

double max_distance(const ModelManifold& m, const Vec& c, const std::vector<Vec>& vertices) {
  double r = 0.0;
  for (const auto& v : vertices) r = std::max(r, m.dist(c, v));
  return r;
}

}  // namespace

void validate_weights(const Vec& weights, std::size_t vertex_count) {
  if (static_cast<std::size_t>(weights.size()) != vertex_count)
    throw Error(ErrorCode::DimensionMismatch, "weight count does not match vertex count");
  if (weights.minCoeff() < -1e-12) throw Error(ErrorCode::BadParams, "weights must be nonnegative");
  if (std::abs(weights.sum() - 1.0) > 1e-12) throw Error(ErrorCode::BadParams, "weights must sum to 1");
}

double energy(const ModelManifold& m, const std::vector<Vec>& vertices, const Vec& weights, const Vec& x) {
  double e = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const double d = m.norm(m.log(x, vertices[i]));
    e += weights(static_cast<Eigen::Index>(i)) * d * d;
  }
  return 0.5 * e;
}

Vec grad_residual(const ModelManifold& m, const std::vector<Vec>& vertices, const Vec& weights, const Vec& x) {
  Vec g = Vec::Zero(x.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const double w = weights(static_cast<Eigen::Index>(i));
    if (w != 0.0) g -= w * m.log(x, vertices[i]);
  }
  return g;
}

Ball containing_ball(const ModelManifold& m, const std::vector<Vec>& vertices) {
  if (vertices.empty()) throw Error(ErrorCode::BadParams, "no vertices");
  Ball best{vertices.front(), kInf};
  for (const auto& v : vertices) {
    const double r = max_distance(m, v, vertices);
    if (r < best.radius) best = {v, r};
  }
  const double r0 = rho0(m);
  if (best.radius > 0.0 && vertices.size() > 2) {
    const Vec uniform = Vec::Constant(static_cast<Eigen::Index>(vertices.size()), 1.0 / vertices.size());
    KarcherResult mean;
    try {
      const double rho = std::min(best.radius, r0);
      if (iterate_mean(m, vertices, uniform, rho, {}, mean)) {
        const double r = max_distance(m, mean.point, vertices);
        if (r < best.radius) best = {mean.point, r};
      }
    } catch (const Error&) {
      // the vertex-centred candidate stands
    }
  }
  best.radius = best.radius * (1.0 + kBallInflation) + std::numeric_limits<double>::min();
  return best;
}

KarcherResult karcher_mean(const ModelManifold& m, const std::vector<Vec>& vertices, const Vec& weights,
                           const KarcherOptions& options) {
  validate_weights(weights, vertices.size());
  return karcher_mean(m, vertices, weights, containing_ball(m, vertices), options);
}

KarcherResult karcher_mean(const ModelManifold& m, const std::vector<Vec>& vertices, const Vec& weights,
                           const Ball& ball, const KarcherOptions& options) {
  validate_weights(weights, vertices.size());
  if (!(ball.radius < rho0(m))) throw Error(ErrorCode::BallTooLarge, "vertices do not fit in a ball of radius rho0");
  for (const auto& v : vertices)
    if (!(m.dist(ball.center, v) <= ball.radius)) throw Error(ErrorCode::BadParams, "ball does not contain the vertices");
  KarcherResult out;
  if (!iterate_mean(m, vertices, weights, ball.radius, options, out))
    throw Error(ErrorCode::NoConvergence, "Karcher iteration hit the cap of " + std::to_string(options.max_iterations));
  return out;
}

RiemannianSimplex::RiemannianSimplex(ModelManifold m, std::vector<Vec> vertices, KarcherOptions options)
    : manifold_(std::move(m)), vertices_(std::move(vertices)), options_(options) {
  if (vertices_.empty()) throw Error(ErrorCode::BadParams, "simplex needs at least one vertex");
  if (dimension() > manifold_.dimension())
    throw Error(ErrorCode::DimensionMismatch, "simplex dimension exceeds manifold dimension");
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (auto bad = manifold_.check_point(vertices_[i], 1e-9))
      throw Error(ErrorCode::BadParams, "vertex " + std::to_string(i) + ": " + *bad);
  ball_ = containing_ball(manifold_, vertices_);
  if (!(ball_.radius < rho0(manifold_)))
    throw Error(ErrorCode::BallTooLarge, "vertices do not fit in a ball of radius rho0");
}

double RiemannianSimplex::spread(int reference) const {
  return max_distance(manifold_, vertex(reference), vertices_);
}

Mat RiemannianSimplex::edge_lengths() const {
  const int m = dimension() + 1;
  Mat l = Mat::Zero(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) l(i, j) = l(j, i) = manifold_.dist(vertex(i), vertex(j));
  return l;
}

double RiemannianSimplex::longest_edge() const { return dimension() == 0 ? 0.0 : edge_lengths().maxCoeff(); }

RiemannianSimplex RiemannianSimplex::face(const std::vector<int>& indices) const {
  std::vector<Vec> v;
  for (int i : indices) {
    if (i < 0 || i > dimension()) throw Error(ErrorCode::UnknownVertex, "face index out of range");
    v.push_back(vertex(i));
  }
  return RiemannianSimplex(manifold_, std::move(v), options_);
}

KarcherResult RiemannianSimplex::solve(const Vec& weights) const {
  validate_weights(weights, vertices_.size());
  KarcherResult out;
  if (!iterate_mean(manifold_, vertices_, weights, ball_.radius, options_, out))
    throw Error(ErrorCode::NoConvergence, "Karcher iteration hit the cap of " + std::to_string(options_.max_iterations));
  return out;
}

Vec RiemannianSimplex::bary_map(const Vec& weights) const { return solve(weights).point; }

Mat RiemannianSimplex::frame_at(const Vec& x) const { return manifold_.transported_frame(vertex(0), x); }

EuclideanSimplex RiemannianSimplex::lift(const Vec& x) const { return lift_in_frame(x, frame_at(x)); }

EuclideanSimplex RiemannianSimplex::lift_in_frame(const Vec& x, const Mat& frame) const {
  Mat pts(manifold_.dimension(), dimension() + 1);
  for (int i = 0; i <= dimension(); ++i) pts.col(i) = manifold_.to_coords(frame, manifold_.log(x, vertex(i)));
  return EuclideanSimplex(std::move(pts));
}

std::vector<Vec> oracle_weights(int vertex_count, int samples, std::uint64_t seed) {
  std::vector<Vec> out;
  for (int i = 0; i < vertex_count; ++i) out.push_back(Vec::Unit(vertex_count, i));
  for (int i = 0; i < vertex_count; ++i)
    for (int j = i + 1; j < vertex_count; ++j) {
      Vec w = Vec::Zero(vertex_count);
      w(i) = w(j) = 0.5;
      out.push_back(w);
    }
  if (vertex_count > 2) out.push_back(Vec::Constant(vertex_count, 1.0 / vertex_count));
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) out.push_back(random_weights(vertex_count, rng));
  return out;
}

OracleResult nondegeneracy_oracle(const RiemannianSimplex& s, const OracleOptions& options) {
  OracleResult r;
  const int k = s.dimension();
  const bool square = k == s.manifold().dimension();
  r.orientation_checked = square && k > 0;
  int sign = 0;
  const auto weights = oracle_weights(k + 1, options.samples, options.seed);
  for (const auto& w : weights) {
    const Vec x = s.bary_map(w);
    const EuclideanSimplex lifted = s.lift(x);
    const double t = thickness(lifted);
    r.min_thickness = std::min(r.min_thickness, t);
    if (r.orientation_checked && t > 0.0) {
      const double det = edge_matrix(lifted).determinant();
      const int sg = det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
      if (sign == 0) sign = sg;
      else if (sg != 0 && sg != sign) r.orientation_consistent = false;
    }
    r.sample_weights.push_back(w);
    r.sample_points.push_back(x);
    ++r.evaluated;
  }
  if (options.check_injectivity) {
    double best = kInf;
    for (std::size_t i = 0; i < r.sample_points.size(); ++i)
      for (std::size_t j = i + 1; j < r.sample_points.size(); ++j)
        best = std::min(best, s.manifold().dist(r.sample_points[i], r.sample_points[j]));
    r.min_pairwise_distance = best;
  }
  r.nondegenerate = r.min_thickness >= options.degenerate_thickness && r.orientation_consistent;
  return r;
}

BaryDifferential bary_map_differential(const RiemannianSimplex& s, const Vec& weights) {
  validate_weights(weights, s.vertices().size());
  const double wmin = weights.minCoeff();
  if (!(wmin > 0.0)) throw Error(ErrorCode::BadParams, "differential needs interior weights");
  const ModelManifold& m = s.manifold();
  const int k = s.dimension();
  const Vec& p0 = s.vertex(0);
  const Vec x = s.bary_map(weights);
  const Mat f0 = m.frame(p0);
  const Mat fx = s.frame_at(x);
  const double step = std::min(1e-4, wmin / 3.0);

  auto weights_at = [&](const Vec& c) {
    Vec w = weights;
    for (int i = 0; i < k; ++i) {
      w(i + 1) += c(i);
      w(0) -= c(i);
    }
    return w;
  };
  auto read_at = [&](const Vec& base, const Mat& frame) {
    return [&, base, frame](const Vec& c) {
      return Vec(m.to_coords(frame, m.log(base, s.bary_map(weights_at(c)))));
    };
  };

  BaryDifferential d;
  d.d_weights = central_jacobian(read_at(x, fx), Vec::Zero(k), step);
  const double l = s.longest_edge();
  d.rank_indicator = l > 0.0 ? smallest_singular_value(d.d_weights) / l : 0.0;
  d.degenerate = d.rank_indicator < 1e-9;

  const EuclideanSimplex chart = s.lift_in_frame(p0, f0);
  d.chart_thickness = thickness(chart);
  d.scale_h = s.spread(0) * (1.0 + 1e-9);
  d.scale_ok = d.scale_h < rho0(m) / 2.0;
  const double lam = m.curvature_bound();
  if (k == m.dimension() && d.chart_thickness > 0.0) {
    const Mat p = edge_matrix(chart);
    const Mat pinv = p.inverse();
    const Mat id = Mat::Identity(k, k);
    d.chart_valid = true;
    d.db = d.d_weights * pinv;
    d.deviation = operator_norm(d.db - id);
    d.bound = 14.0 * lam * d.scale_h * d.scale_h / d.chart_thickness;
    const Mat d_chart = central_jacobian(read_at(p0, f0), Vec::Zero(k), step);
    d.composite_deviation = operator_norm(d_chart * pinv - id);
    d.composite_bound = 17.0 * lam * d.scale_h * d.scale_h / d.chart_thickness;
  }
  return d;
}

}  // namespace riemsimplex
