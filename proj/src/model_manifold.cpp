#include "riemsimplex/model_manifold.hpp"

#include <algorithm>
#include <cmath>

#include "riemsimplex/error.hpp"

namespace riemsimplex {

namespace {

constexpr double kTieTolerance = 1e-9;

double minkowski(const Vec& u, const Vec& v) {
  const Eigen::Index last = u.size() - 1;
  return u.head(last).dot(v.head(last)) - u(last) * v(last);
}

void require_size(const Vec& v, int size, const char* what) {
  if (v.size() != size)
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + " has " + std::to_string(v.size()) + " coordinates, expected " +
                    std::to_string(size));
}

}  // namespace

std::string to_string(ManifoldKind kind) {
  switch (kind) {
    case ManifoldKind::Euclidean: return "euclidean";
    case ManifoldKind::Sphere: return "sphere";
    case ManifoldKind::Hyperbolic: return "hyperbolic";
    case ManifoldKind::FlatTorus: return "torus";
  }
  return "unknown";
}

ModelManifold::ModelManifold(ManifoldKind kind, int n, double shape, std::vector<double> periods)
    : kind_(kind), n_(n), shape_(shape), periods_(std::move(periods)) {
  if (n < 1) throw Error(ErrorCode::BadParams, "manifold dimension must be at least 1");
  if (!(shape > 0.0) || !std::isfinite(shape)) throw Error(ErrorCode::BadParams, "shape parameter must be positive");
}

ModelManifold ModelManifold::euclidean(int n) { return ModelManifold(ManifoldKind::Euclidean, n, 1.0, {}); }
ModelManifold ModelManifold::sphere(int n, double radius) {
  return ModelManifold(ManifoldKind::Sphere, n, radius, {});
}
ModelManifold ModelManifold::hyperbolic(int n, double scale) {
  return ModelManifold(ManifoldKind::Hyperbolic, n, scale, {});
}
ModelManifold ModelManifold::flat_torus(std::vector<double> periods) {
  if (periods.empty()) throw Error(ErrorCode::BadParams, "torus needs at least one period");
  for (double p : periods)
    if (!(p > 0.0) || !std::isfinite(p)) throw Error(ErrorCode::BadParams, "torus periods must be positive");
  const int n = static_cast<int>(periods.size());
  return ModelManifold(ManifoldKind::FlatTorus, n, 1.0, std::move(periods));
}

int ModelManifold::ambient_dimension() const {
  return (kind_ == ManifoldKind::Sphere || kind_ == ManifoldKind::Hyperbolic) ? n_ + 1 : n_;
}

double ModelManifold::curvature_lower() const {
  switch (kind_) {
    case ManifoldKind::Sphere: return 1.0 / (shape_ * shape_);
    case ManifoldKind::Hyperbolic: return -1.0 / (shape_ * shape_);
    default: return 0.0;
  }
}

double ModelManifold::curvature_upper() const { return curvature_lower(); }

double ModelManifold::curvature_bound() const { return std::max(curvature_upper(), -curvature_lower()); }

double ModelManifold::injectivity_radius() const {
  switch (kind_) {
    case ManifoldKind::Sphere: return kPi * shape_;
    case ManifoldKind::FlatTorus: return *std::min_element(periods_.begin(), periods_.end()) / 2.0;
    default: return kInf;
  }
}

double ModelManifold::curvature_radius() const {
  return (kind_ == ManifoldKind::Sphere || kind_ == ManifoldKind::Hyperbolic) ? shape_ : kInf;
}

double ModelManifold::inner(const Vec& u, const Vec& v) const {
  return kind_ == ManifoldKind::Hyperbolic ? minkowski(u, v) : u.dot(v);
}

double ModelManifold::norm(const Vec& v) const { return std::sqrt(std::max(inner(v, v), 0.0)); }

Vec ModelManifold::project_tangent(const Vec& x, const Vec& v) const {
  switch (kind_) {
    case ManifoldKind::Sphere: return v - x.dot(v) * x;
    case ManifoldKind::Hyperbolic: return v + minkowski(x, v) * x;
    default: return v;
  }
}

Vec ModelManifold::normalize_point(const Vec& x) const {
  switch (kind_) {
    case ManifoldKind::Sphere: return x / x.norm();
    case ManifoldKind::Hyperbolic: {
      Vec y = x;
      y(n_) = std::sqrt(1.0 + x.head(n_).squaredNorm());
      return y;
    }
    case ManifoldKind::FlatTorus: {
      Vec y = x;
      for (int i = 0; i < n_; ++i) {
        const double l = periods_[static_cast<std::size_t>(i)];
        y(i) = std::fmod(y(i), l);
        if (y(i) < 0.0) y(i) += l;
        if (y(i) >= l) y(i) = 0.0;
      }
      return y;
    }
    case ManifoldKind::Euclidean: return x;
  }
  return x;
}

std::optional<std::string> ModelManifold::check_point(const Vec& x, double tol) const {
  if (x.size() != ambient_dimension())
    return "expected " + std::to_string(ambient_dimension()) + " coordinates, got " + std::to_string(x.size());
  if (!x.allFinite()) return std::string("non-finite coordinate");
  switch (kind_) {
    case ManifoldKind::Sphere:
      if (std::abs(x.norm() - 1.0) > tol) return "not a unit vector (norm " + std::to_string(x.norm()) + ")";
      break;
    case ManifoldKind::Hyperbolic:
      if (x(n_) <= 0.0) return std::string("not on the upper sheet of the hyperboloid");
      if (std::abs(minkowski(x, x) + 1.0) > tol * std::max(1.0, x(n_) * x(n_)))
        return std::string("Minkowski norm is not -1");
      break;
    case ManifoldKind::FlatTorus:
      for (int i = 0; i < n_; ++i)
        if (x(i) < 0.0 || x(i) >= periods_[static_cast<std::size_t>(i)])
          return "coordinate " + std::to_string(i) + " outside the fundamental domain";
      break;
    case ManifoldKind::Euclidean: break;
  }
  return std::nullopt;
}

Vec ModelManifold::torus_delta(const Vec& x, const Vec& y) const {
  Vec d = y - x;
  for (int i = 0; i < n_; ++i) {
    const double l = periods_[static_cast<std::size_t>(i)];
    d(i) -= l * std::round(d(i) / l);
  }
  return d;
}

Vec ModelManifold::exp(const Vec& x, const Vec& v) const {
  require_size(x, ambient_dimension(), "point");
  require_size(v, ambient_dimension(), "tangent vector");
  switch (kind_) {
    case ManifoldKind::Euclidean: return x + v;
    case ManifoldKind::FlatTorus: return normalize_point(x + v);
    case ManifoldKind::Sphere: {
      const Vec w = project_tangent(x, v);
      const double len = w.norm();
      if (len == 0.0) return x;
      const double t = len / shape_;
      return normalize_point(std::cos(t) * x + std::sin(t) * (w / len));
    }
    case ManifoldKind::Hyperbolic: {
      const Vec w = project_tangent(x, v);
      const double len = norm(w);
      if (len == 0.0) return x;
      const double t = len / shape_;
      return normalize_point(std::cosh(t) * x + std::sinh(t) * (w / len));
    }
  }
  return x;
}

Vec ModelManifold::log(const Vec& x, const Vec& y) const {
  require_size(x, ambient_dimension(), "point");
  require_size(y, ambient_dimension(), "point");
  switch (kind_) {
    case ManifoldKind::Euclidean: return y - x;
    case ManifoldKind::FlatTorus: {
      const Vec d = torus_delta(x, y);
      for (int i = 0; i < n_; ++i)
        if (std::abs(std::abs(d(i)) - periods_[static_cast<std::size_t>(i)] / 2.0) < kTieTolerance)
          throw Error(ErrorCode::BeyondInjectivityRadius, "torus representatives tie (cut locus)");
      if (d.norm() >= injectivity_radius())
        throw Error(ErrorCode::BeyondInjectivityRadius, "distance reaches the torus injectivity radius");
      return d;
    }
    case ManifoldKind::Sphere: {
      const double c = x.dot(y);
      const Vec w = y - c * x;
      const double s = w.norm();
      const double theta = std::atan2(s, c);
      if (kPi - theta < kTieTolerance) throw Error(ErrorCode::BeyondInjectivityRadius, "antipodal points");
      if (s == 0.0) return Vec::Zero(x.size());
      return (shape_ * theta / s) * w;
    }
    case ManifoldKind::Hyperbolic: {
      const double c = minkowski(x, y);
      const Vec w = y + c * x;
      const double s = std::sqrt(std::max(minkowski(w, w), 0.0));
      if (s == 0.0) return Vec::Zero(x.size());
      return (shape_ * std::asinh(s) / s) * w;
    }
  }
  return y - x;
}

double ModelManifold::dist(const Vec& x, const Vec& y) const {
  require_size(x, ambient_dimension(), "point");
  require_size(y, ambient_dimension(), "point");
  switch (kind_) {
    case ManifoldKind::Euclidean: return (y - x).norm();
    case ManifoldKind::FlatTorus: return torus_delta(x, y).norm();
    case ManifoldKind::Sphere: {
      const double c = x.dot(y);
      return shape_ * std::atan2((y - c * x).norm(), c);
    }
    case ManifoldKind::Hyperbolic: {
      const double c = minkowski(x, y);
      const Vec w = y + c * x;
      return shape_ * std::asinh(std::sqrt(std::max(minkowski(w, w), 0.0)));
    }
  }
  return 0.0;
}

Vec ModelManifold::transport(const Vec& x, const Vec& y, const Vec& v) const {
  switch (kind_) {
    case ManifoldKind::Euclidean: return v;
    case ManifoldKind::FlatTorus:
      log(x, y);  // uniqueness check only
      return v;
    case ManifoldKind::Sphere: {
      const double c = x.dot(y);
      if (kPi - std::atan2((y - c * x).norm(), c) < kTieTolerance)
        throw Error(ErrorCode::BeyondInjectivityRadius, "antipodal points");
      return v - (y.dot(v) / (1.0 + c)) * (x + y);
    }
    case ManifoldKind::Hyperbolic: {
      const double c = minkowski(x, y);
      return v + (minkowski(y, v) / (1.0 - c)) * (x + y);
    }
  }
  return v;
}

Mat ModelManifold::frame(const Vec& x) const {
  switch (kind_) {
    case ManifoldKind::Euclidean:
    case ManifoldKind::FlatTorus: return Mat::Identity(n_, n_);
    case ManifoldKind::Sphere: {
      Eigen::HouseholderQR<Mat> qr{Mat(x)};
      const Mat q = qr.householderQ() * Mat::Identity(n_ + 1, n_ + 1);
      return q.rightCols(n_);
    }
    case ManifoldKind::Hyperbolic: {
      Mat f(n_ + 1, n_);
      for (int i = 0; i < n_; ++i) {
        Vec e = Vec::Zero(n_ + 1);
        e(i) = 1.0;
        Vec u = project_tangent(x, e);
        for (int j = 0; j < i; ++j) u -= minkowski(f.col(j), u) * f.col(j);
        u /= norm(u);
        f.col(i) = u;
      }
      return f;
    }
  }
  return Mat::Identity(n_, n_);
}

Mat ModelManifold::transported_frame(const Vec& from, const Vec& x) const {
  const Mat f = frame(from);
  Mat g(f.rows(), f.cols());
  for (Eigen::Index j = 0; j < f.cols(); ++j) g.col(j) = transport(from, x, f.col(j));
  return g;
}

Vec ModelManifold::to_coords(const Mat& frame, const Vec& v) const {
  Vec c(frame.cols());
  for (Eigen::Index j = 0; j < frame.cols(); ++j) c(j) = inner(frame.col(j), v);
  return c;
}

Vec ModelManifold::from_coords(const Mat& frame, const Vec& c) const { return frame * c; }

Vec ModelManifold::base_point() const {
  Vec x = Vec::Zero(ambient_dimension());
  if (kind_ == ManifoldKind::Sphere || kind_ == ManifoldKind::Hyperbolic) x(n_) = 1.0;
  return x;
}

Vec ModelManifold::random_point(Rng& rng) const {
  switch (kind_) {
    case ManifoldKind::Euclidean: return gaussian_vector(n_, rng);
    case ManifoldKind::Sphere: return random_unit_vector(n_ + 1, rng);
    case ManifoldKind::Hyperbolic: {
      const Vec b = base_point();
      return exp(b, shape_ * from_coords(frame(b), gaussian_vector(n_, rng)));
    }
    case ManifoldKind::FlatTorus: {
      Vec x(n_);
      for (int i = 0; i < n_; ++i) x(i) = uniform(0.0, periods_[static_cast<std::size_t>(i)], rng);
      return normalize_point(x);
    }
  }
  return base_point();
}

Vec ModelManifold::random_point_in_ball(const Vec& center, double radius, Rng& rng) const {
  const double r = radius * std::pow(uniform(0.0, 1.0, rng), 1.0 / n_);
  return exp(center, from_coords(frame(center), r * random_unit_vector(n_, rng)));
}

Vec ModelManifold::random_tangent(const Vec& x, Rng& rng) const {
  return from_coords(frame(x), gaussian_vector(n_, rng));
}

double rho0(const ModelManifold& m) {
  const double k = m.curvature_upper();
  const double curv = k > 0.0 ? kPi / (4.0 * std::sqrt(k)) : kInf;
  return std::min(m.injectivity_radius() / 2.0, curv);
}

double convexity_radius(const ModelManifold& m) {
  const double k = m.curvature_upper();
  const double curv = k > 0.0 ? kPi / (2.0 * std::sqrt(k)) : kInf;
  return std::min(m.injectivity_radius() / 2.0, curv);
}

}  // namespace riemsimplex
