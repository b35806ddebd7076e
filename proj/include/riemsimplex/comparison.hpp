#pragma once

#include <functional>

#include "riemsimplex/model_manifold.hpp"

namespace riemsimplex {

// sin(sqrt(k) r)/sqrt(k), r, or sinh(sqrt(-k) r)/sqrt(-k) by the sign of k.
double comparison_S(double kappa, double r);

struct RauchBounds {
  double lower = 1.0;  // 1 - Lambda r^2 / 6
  double upper = 1.0;  // 1 + Lambda r^2 / 2
};
RauchBounds rauch_bounds(const ModelManifold& m, double r);

// Exact area of the geodesic triangle with the given side lengths.
double triangle_area_from_sides(const ModelManifold& m, double a, double b, double c);
double triangle_area(const ModelManifold& m, const Vec& p, const Vec& x, const Vec& y);

struct HolonomyDefect {
  double actual = 0.0;  // |T_xp - T_xy T_yp|
  double bound = 0.0;   // 4/3 Lambda area
  double area = 0.0;
};
HolonomyDefect holonomy_defect(const ModelManifold& m, const Vec& p, const Vec& x, const Vec& y);

// Jacobian of w -> coords_x(log_x(g(w))) at w0, with coordinates taken in frame_x.
Mat chart_differential(const ModelManifold& m, const std::function<Vec(const Vec&)>& g, const Vec& w0,
                       const Vec& x, const Mat& frame_x, double step);

struct InequalitySample {
  double measured = 0.0;
  double bound = 0.0;
  double margin() const { return bound - measured; }
};

// |(d exp_p)_v - T_xp| against Lambda r^2 / 2, with x = exp_p(v).
InequalitySample strong_rauch_sample(const ModelManifold& m, const Vec& p, const Vec& v);
// |d(log_x o exp_p)_v - T_xp| against 6 Lambda rho^2 for x, exp_p(v) in B(p, rho).
InequalitySample strong_transition_sample(const ModelManifold& m, const Vec& p, const Vec& x, const Vec& v);
// | |v_i(x) - v_j(x)| - |v_i(p) - v_j(p)| | against 21 Lambda rho^2 |v_i(p) - v_j(p)|.
InequalitySample edge_distortion_sample(const ModelManifold& m, const Vec& p, const Vec& x, const Vec& vi,
                                        const Vec& vj, double rho);

struct RauchSandwich {
  double measured = 0.0;  // |(d exp_p)_{r u} w| / |w|
  double lower = 0.0;     // S_{kappa_up}(r) / r
  double upper = 0.0;     // S_{kappa_low}(r) / r
  double radial = 0.0;    // |(d exp_p)_{r u} u|
};
RauchSandwich rauch_sandwich_sample(const ModelManifold& m, const Vec& p, const Vec& unit_dir, const Vec& w,
                                    double r);

}  // namespace riemsimplex
