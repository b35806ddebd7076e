#include "riemsimplex/comparison.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "riemsimplex/error.hpp"

namespace riemsimplex {

namespace {

double fd_step(const ModelManifold& m, double domain_scale) {
  const double s = std::max(domain_scale, 1e-3 * std::min(m.curvature_radius(), 1.0));
  return 1e-4 * s;
}

double kahan_heron(double a, double b, double c) {
  std::array<double, 3> s{a, b, c};
  std::sort(s.begin(), s.end(), std::greater<>());
  const double x = s[0], y = s[1], z = s[2];
  const double q = (x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z));
  return 0.25 * std::sqrt(std::max(q, 0.0));
}

}  // namespace

double comparison_S(double kappa, double r) {
  if (kappa > 0.0) {
    const double s = std::sqrt(kappa);
    return std::sin(s * r) / s;
  }
  if (kappa < 0.0) {
    const double s = std::sqrt(-kappa);
    return std::sinh(s * r) / s;
  }
  return r;
}

RauchBounds rauch_bounds(const ModelManifold& m, double r) {
  if (r < 0.0) throw Error(ErrorCode::BadParams, "radius must be nonnegative");
  const double lam = m.curvature_bound();
  if (lam > 0.0 && r >= kPi / (2.0 * std::sqrt(lam)))
    throw Error(ErrorCode::RadiusTooLarge, "Rauch bounds need r < pi / (2 sqrt(Lambda))");
  return {1.0 - lam * r * r / 6.0, 1.0 + lam * r * r / 2.0};
}

double triangle_area_from_sides(const ModelManifold& m, double a, double b, double c) {
  const double k = m.curvature_radius();
  switch (m.kind()) {
    case ManifoldKind::Sphere: {
      const double s = (a + b + c) / (2.0 * k);
      const double t = std::tan(s / 2.0) * std::tan((s - a / k) / 2.0) * std::tan((s - b / k) / 2.0) *
                       std::tan((s - c / k) / 2.0);
      return k * k * 4.0 * std::atan(std::sqrt(std::max(t, 0.0)));
    }
    case ManifoldKind::Hyperbolic: {
      const double s = (a + b + c) / (2.0 * k);
      const double t = std::tanh(s / 2.0) * std::tanh((s - a / k) / 2.0) * std::tanh((s - b / k) / 2.0) *
                       std::tanh((s - c / k) / 2.0);
      return k * k * 4.0 * std::atan(std::sqrt(std::max(t, 0.0)));
    }
    default: return kahan_heron(a, b, c);
  }
}

double triangle_area(const ModelManifold& m, const Vec& p, const Vec& x, const Vec& y) {
  return triangle_area_from_sides(m, m.dist(x, y), m.dist(p, y), m.dist(p, x));
}

HolonomyDefect holonomy_defect(const ModelManifold& m, const Vec& p, const Vec& x, const Vec& y) {
  const double lpx = m.dist(p, x), lpy = m.dist(p, y), lxy = m.dist(x, y);
  const double rho = std::max(lpx, lpy);
  if (!(rho < rho0(m) / 2.0)) throw Error(ErrorCode::TriangleTooLarge, "triangle leaves the ball of radius rho0/2");
  const double ku = m.curvature_upper();
  const double perimeter_cap = std::min(m.injectivity_radius(), ku > 0.0 ? 2.0 * kPi / std::sqrt(ku) : kInf);
  if (lpx + lpy + lxy > perimeter_cap) throw Error(ErrorCode::TriangleTooLarge, "perimeter exceeds the holonomy cap");
  HolonomyDefect h;
  h.area = triangle_area_from_sides(m, lxy, lpy, lpx);
  h.bound = 4.0 / 3.0 * m.curvature_bound() * h.area;
  const Mat fp = m.frame(p);
  const Mat fx = m.frame(x);
  Mat diff(m.dimension(), m.dimension());
  for (int j = 0; j < m.dimension(); ++j) {
    const Vec direct = m.transport(p, x, fp.col(j));
    const Vec around = m.transport(y, x, m.transport(p, y, fp.col(j)));
    diff.col(j) = m.to_coords(fx, direct - around);
  }
  h.actual = operator_norm(diff);
  return h;
}

Mat chart_differential(const ModelManifold& m, const std::function<Vec(const Vec&)>& g, const Vec& w0,
                       const Vec& x, const Mat& frame_x, double step) {
  auto read = [&](const Vec& w) { return Vec(m.to_coords(frame_x, m.log(x, g(w)))); };
  return central_jacobian(read, w0, step);
}

InequalitySample strong_rauch_sample(const ModelManifold& m, const Vec& p, const Vec& v) {
  const double r = m.norm(v);
  const double lam = m.curvature_bound();
  if (lam > 0.0 && r > kPi / (2.0 * std::sqrt(lam)))
    throw Error(ErrorCode::RadiusTooLarge, "strong Rauch needs r <= pi / (2 sqrt(Lambda))");
  if (r >= m.injectivity_radius()) throw Error(ErrorCode::BeyondInjectivityRadius, "tangent vector too long");
  const Vec x = m.exp(p, v);
  const Mat fp = m.frame(p);
  const Mat fx = m.transported_frame(p, x);
  auto g = [&](const Vec& c) { return m.exp(p, m.from_coords(fp, c)); };
  const Mat d = chart_differential(m, g, m.to_coords(fp, v), x, fx, fd_step(m, r));
  InequalitySample s;
  s.measured = operator_norm(d - Mat::Identity(d.rows(), d.cols()));
  s.bound = lam * r * r / 2.0;
  return s;
}

InequalitySample strong_transition_sample(const ModelManifold& m, const Vec& p, const Vec& x, const Vec& v) {
  const Vec y = m.exp(p, v);
  const double rho = std::max(m.dist(p, x), m.dist(p, y)) * (1.0 + 1e-9) + 1e-300;
  if (!(rho < rho0(m) / 2.0)) throw Error(ErrorCode::RadiusTooLarge, "transition bound needs rho < rho0/2");
  const Mat fp = m.frame(p);
  const Mat fx = m.transported_frame(p, x);
  auto g = [&](const Vec& c) { return m.exp(p, m.from_coords(fp, c)); };
  const Mat d = chart_differential(m, g, m.to_coords(fp, v), x, fx, fd_step(m, rho));
  InequalitySample s;
  s.measured = operator_norm(d - Mat::Identity(d.rows(), d.cols()));
  s.bound = 6.0 * m.curvature_bound() * rho * rho;
  return s;
}

InequalitySample edge_distortion_sample(const ModelManifold& m, const Vec& p, const Vec& x, const Vec& vi,
                                        const Vec& vj, double rho) {
  if (!(rho < rho0(m))) throw Error(ErrorCode::RadiusTooLarge, "edge distortion needs rho < rho0");
  const double at_x = m.norm(m.log(x, vi) - m.log(x, vj));
  const double at_p = m.norm(m.log(p, vi) - m.log(p, vj));
  InequalitySample s;
  s.measured = std::abs(at_x - at_p);
  s.bound = 21.0 * m.curvature_bound() * rho * rho * at_p;
  return s;
}

RauchSandwich rauch_sandwich_sample(const ModelManifold& m, const Vec& p, const Vec& unit_dir, const Vec& w,
                                    double r) {
  if (!(r > 0.0) || !(r < 2.0 * rho0(m))) throw Error(ErrorCode::RadiusTooLarge, "Rauch sandwich needs 0 < r < 2 rho0");
  const Vec x = m.exp(p, r * unit_dir);
  const double step = fd_step(m, r);
  auto along = [&](const Vec& dir) {
    auto f = [&](const Vec& s) { return Vec(m.log(x, m.exp(p, r * unit_dir + s(0) * dir))); };
    const Mat j = central_jacobian(f, Vec::Zero(1), step);
    return m.norm(j.col(0));
  };
  RauchSandwich out;
  out.measured = along(w) / m.norm(w);
  out.radial = along(unit_dir);
  out.lower = comparison_S(m.curvature_upper(), r) / r;
  out.upper = comparison_S(m.curvature_lower(), r) / r;
  return out;
}

}  // namespace riemsimplex
