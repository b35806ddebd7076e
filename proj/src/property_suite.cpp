#include "riemsimplex/property_suite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "riemsimplex/certificates.hpp"
#include "riemsimplex/comparison.hpp"
#include "riemsimplex/error.hpp"
#include "riemsimplex/euclid_simplex.hpp"
#include "riemsimplex/karcher.hpp"
#include "riemsimplex/triangulation.hpp"

namespace riemsimplex {

namespace {

constexpr double kFdSlack = 1e-3;

int pick(Rng& rng, int count) { return static_cast<int>(rng() % static_cast<std::uint64_t>(count)); }

Vec point_in_tangent_ball(const ModelManifold& m, const Vec& p, double radius, Rng& rng) {
  const int n = m.dimension();
  const double r = radius * std::pow(uniform(0.0, 1.0, rng), 1.0 / n);
  return m.from_coords(m.frame(p), r * random_unit_vector(n, rng));
}

// Radius cap used for sampling: rho0, or 1 when rho0 is infinite.
double sample_cap(const ModelManifold& m) { return std::min(rho0(m), 1.0); }

// Strong Rauch also needs r <= pi / (2 sqrt(Lambda)).
double rauch_cap(const ModelManifold& m) {
  const double lam = m.curvature_bound();
  return lam > 0.0 ? std::min(sample_cap(m), kPi / (2.0 * std::sqrt(lam))) : sample_cap(m);
}

std::vector<ModelManifold> curved_models() {
  return {ModelManifold::sphere(2), ModelManifold::sphere(3), ModelManifold::hyperbolic(2),
          ModelManifold::hyperbolic(3), ModelManifold::sphere(2, 2.0), ModelManifold::hyperbolic(2, 0.5)};
}

EuclideanSimplex random_simplex(int n, int k, Rng& rng, double min_thickness) {
  for (;;) {
    Mat v(n, k + 1);
    for (int i = 0; i <= k; ++i) v.col(i) = gaussian_vector(n, rng);
    EuclideanSimplex s(v);
    if (thickness(s) >= min_thickness) return s;
  }
}

}  // namespace

void PropertyResult::record(double margin) {
  ++trials;
  worst_margin = std::min(worst_margin, margin);
  if (!(margin >= 0.0)) ++violations;
}

PropertyResult flat_barycenter_property(int trials, std::uint64_t seed) {
  PropertyResult r{"flat_barycenter", "Karcher mean on flat spaces equals the affine combination (1e-12)"};
  Rng rng(seed);
  double max_err = 0.0;
  for (int t = 0; t < trials; ++t) {
    const int n = 1 + pick(rng, 4);
    const int k = 1 + pick(rng, n);
    const bool torus = pick(rng, 2) == 1;
    std::vector<Vec> verts;
    Vec expected;
    ModelManifold m = ModelManifold::euclidean(n);
    const Vec w = random_weights(k + 1, rng);
    if (!torus) {
      for (int i = 0; i <= k; ++i) verts.push_back(gaussian_vector(n, rng));
      expected = Vec::Zero(n);
      for (int i = 0; i <= k; ++i) expected += w(i) * verts[static_cast<std::size_t>(i)];
    } else {
      std::vector<double> periods;
      for (int i = 0; i < n; ++i) periods.push_back(uniform(0.5, 2.0, rng));
      m = ModelManifold::flat_torus(periods);
      const Vec c = m.random_point(rng);
      const double radius = uniform(0.01, 0.49, rng) * rho0(m);
      for (int i = 0; i <= k; ++i) verts.push_back(m.random_point_in_ball(c, radius, rng));
      Vec sum = Vec::Zero(n);
      for (int i = 0; i <= k; ++i) sum += w(i) * m.log(verts[0], verts[static_cast<std::size_t>(i)]);
      expected = m.exp(verts[0], sum);
    }
    try {
      const RiemannianSimplex s(m, verts);
      const double err = m.dist(s.bary_map(w), expected);
      max_err = std::max(max_err, err);
      r.record(1e-12 - err);
    } catch (const Error&) {
      r.record(-1.0);
    }
  }
  r.detail("max_error", max_err);
  return r;
}

PropertyResult karcher_residual_property(int trials, std::uint64_t seed) {
  PropertyResult r{"karcher_residual", "Karcher residual below 1e-12 rho within 50 iterations on S^2(1) and H^2(1)"};
  Rng rng(seed);
  for (const auto& m : {ModelManifold::sphere(2), ModelManifold::hyperbolic(2)}) {
    int max_it = 0;
    double total_it = 0.0, worst_ratio = 0.0;
    const bool sphere = m.kind() == ManifoldKind::Sphere;
    for (int t = 0; t < trials; ++t) {
      const Vec c = m.random_point(rng);
      const double radius = sphere ? uniform(0.05, 0.999, rng) * rho0(m) : uniform(0.05, 1.0, rng);
      std::vector<Vec> verts;
      for (int i = 0; i < 3; ++i) verts.push_back(m.random_point_in_ball(c, radius, rng));
      const Ball ball{c, radius * (1.0 + 1e-12)};
      const Vec w = random_weights(3, rng);
      try {
        const KarcherResult k = karcher_mean(m, verts, w, ball);
        const double res = m.norm(grad_residual(m, verts, w, k.point));
        const double ratio = res / (1e-12 * ball.radius);
        max_it = std::max(max_it, k.iterations);
        total_it += k.iterations;
        worst_ratio = std::max(worst_ratio, ratio);
        r.record(std::min(1.0 - ratio, (50.0 - k.iterations) / 50.0));
      } catch (const Error&) {
        r.record(-1.0);
      }
    }
    const std::string tag = sphere ? "sphere" : "hyperbolic";
    r.detail(tag + "_max_iterations", max_it);
    r.detail(tag + "_mean_iterations", trials > 0 ? total_it / trials : 0.0);
    r.detail(tag + "_worst_residual_ratio", worst_ratio);
  }
  return r;
}

PropertyResult thickness_distortion_property(int trials, std::uint64_t seed) {
  PropertyResult r{"thickness_distortion", "perturbed simplex keeps (1-eta) sigma_k and 4(1-eta)t/(5 sqrt k)"};
  Rng rng(seed);
  int unrealizable = 0;
  for (int t = 0; t < trials; ++t) {
    const int k = 1 + pick(rng, 4);
    const int n = k + pick(rng, 2);
    const EuclideanSimplex s = random_simplex(n, k, rng, 1e-3);
    const double eta = uniform(0.01, 0.99, rng);
    const double th = thickness(s);
    const double l = longest_edge(s);
    const double budget = eta * th * th / 4.0 * l;
    Mat lengths = edge_length_matrix(s);
    const bool extreme = pick(rng, 2) == 0;
    for (int i = 0; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j) {
        const double d = extreme ? (pick(rng, 2) ? budget : -budget) : uniform(-budget, budget, rng);
        lengths(i, j) = lengths(j, i) = lengths(i, j) + d;
      }
    try {
      const DistortionCheck c = verify_thickness_distortion(s, lengths, eta);
      if (!c.sigma_ok || !c.thickness_ok) {
        if (c.sigma_actual == 0.0) ++unrealizable;
        r.record(-1.0);
        continue;
      }
      r.record(std::min(c.sigma_actual / c.bounds.sigma_lower - 1.0, c.thickness_actual / c.bounds.thickness_lower - 1.0));
    } catch (const Error&) {
      r.record(-1.0);
    }
  }
  r.detail("unrealizable", unrealizable);
  return r;
}

PropertyResult certificate_soundness_property(int trials, std::uint64_t seed, int oracle_samples) {
  PropertyResult r{"certificate_soundness", "no certificate on an oracle-degenerate simplex; great-circle family never certified"};
  Rng rng(seed);
  const std::vector<ModelManifold> models = {
      ModelManifold::sphere(2),     ModelManifold::sphere(3),         ModelManifold::hyperbolic(2),
      ModelManifold::hyperbolic(3), ModelManifold::flat_torus({1, 1}), ModelManifold::flat_torus({1, 1, 1})};
  const double scales[] = {1e-3, 1e-2, 0.05, 0.15, 0.3};
  const double squash[] = {0.0, 1e-13, 1e-10, 1e-7, 1e-4};
  int certified = 0, degenerate = 0, evaluated = 0;
  for (int t = 0; t < trials; ++t) {
    const ModelManifold& m = models[static_cast<std::size_t>(t) % models.size()];
    const int n = m.dimension();
    const Vec c = m.random_point(rng);
    const double radius = scales[pick(rng, 5)] * sample_cap(m);
    Mat coords(n, n + 1);
    for (int i = 0; i <= n; ++i) coords.col(i) = uniform(0.2, 1.0, rng) * radius * random_unit_vector(n, rng);
    const int mode = pick(rng, 3);
    const double eps = squash[pick(rng, 5)];
    if (mode == 1) coords.row(n - 1) *= eps;
    if (mode == 2) coords.col(n) = 0.5 * (coords.col(0) + coords.col(1)) + eps * radius * random_unit_vector(n, rng);
    std::vector<Vec> verts;
    const Mat frame = m.frame(c);
    for (int i = 0; i <= n; ++i) verts.push_back(m.exp(c, m.from_coords(frame, coords.col(i))));
    try {
      const RiemannianSimplex s(m, verts);
      OracleOptions oo;
      oo.samples = oracle_samples;
      oo.seed = seed + static_cast<std::uint64_t>(t);
      const OracleResult o = nondegeneracy_oracle(s, oo);
      const bool cert = any_certified(certify_all(s));
      ++evaluated;
      certified += cert ? 1 : 0;
      degenerate += o.nondegenerate ? 0 : 1;
      r.record(cert && !o.nondegenerate ? -1.0 : 1.0);
    } catch (const Error&) {
      // configuration left rho0; not an instance of the property
    }
  }
  int family = 0, family_flagged = 0;
  for (int g = 0; g < std::max(trials / 10, 6); ++g) {
    const int n = 2 + g % 2;
    const ModelManifold m = ModelManifold::sphere(n);
    const Vec c = m.random_point(rng);
    const Mat frame = m.frame(c);
    const double spread = scales[pick(rng, 5)] * sample_cap(m);
    const Mat plane = random_orthogonal(n, rng).leftCols(n - 1);
    std::vector<Vec> verts;
    for (int i = 0; i <= n; ++i) {
      const Vec coeff = uniform(0.1, 1.0, rng) * spread * random_unit_vector(n - 1, rng);
      verts.push_back(m.exp(c, m.from_coords(frame, plane * coeff)));
    }
    try {
      const RiemannianSimplex s(m, verts);
      OracleOptions oo;
      oo.samples = oracle_samples;
      const OracleResult o = nondegeneracy_oracle(s, oo);
      ++family;
      family_flagged += o.nondegenerate ? 0 : 1;
      r.record(any_certified(certify_all(s)) ? -1.0 : 1.0);
    } catch (const Error&) {
    }
  }
  r.detail("random_evaluated", evaluated);
  r.detail("random_certified", certified);
  r.detail("random_oracle_degenerate", degenerate);
  r.detail("great_circle_instances", family);
  r.detail("great_circle_oracle_degenerate", family_flagged);
  return r;
}

std::vector<PropertyResult> comparison_properties(int trials, std::uint64_t seed) {
  std::vector<PropertyResult> out;
  const auto models = curved_models();
  Rng rng(seed);

  PropertyResult rauch{"strong_rauch", "|d exp_p - T| <= Lambda r^2 / 2"};
  for (int t = 0; t < trials; ++t) {
    const auto& m = models[static_cast<std::size_t>(t) % models.size()];
    const Vec p = m.random_point(rng);
    const Vec v = point_in_tangent_ball(m, p, 0.99 * rauch_cap(m), rng);
    const InequalitySample s = strong_rauch_sample(m, p, v);
    rauch.record(s.margin() + kFdSlack);
  }
  out.push_back(rauch);

  PropertyResult trans{"strong_transition", "|d(log_x exp_p) - T| <= 6 Lambda rho^2 for rho < rho0/2"};
  for (int t = 0; t < trials; ++t) {
    const auto& m = models[static_cast<std::size_t>(t) % models.size()];
    const Vec p = m.random_point(rng);
    const double rho = uniform(0.01, 0.49, rng) * std::min(rho0(m), 2.0);
    const Vec x = m.random_point_in_ball(p, rho, rng);
    const Vec v = point_in_tangent_ball(m, p, rho, rng);
    trans.record(strong_transition_sample(m, p, x, v).margin() + kFdSlack);
  }
  out.push_back(trans);

  PropertyResult edge{"edge_distortion", "edge lengths of lifts at p and x differ by at most 21 Lambda rho^2"};
  for (int t = 0; t < trials; ++t) {
    const auto& m = models[static_cast<std::size_t>(t) % models.size()];
    const Vec p = m.random_point(rng);
    const double rho = uniform(0.01, 0.99, rng) * sample_cap(m);
    const Vec x = m.random_point_in_ball(p, rho, rng);
    const Vec vi = m.random_point_in_ball(p, rho, rng);
    const Vec vj = m.random_point_in_ball(p, rho, rng);
    const InequalitySample s = edge_distortion_sample(m, p, x, vi, vj, rho);
    edge.record(s.margin() + 1e-12 * rho);
  }
  out.push_back(edge);

  PropertyResult hol{"holonomy", "|T_xp - T_xy T_yp| <= (4/3) Lambda area"};
  for (int t = 0; t < trials; ++t) {
    const auto& m = models[static_cast<std::size_t>(t) % models.size()];
    const Vec p = m.random_point(rng);
    const double rho = uniform(0.01, 0.49, rng) * std::min(rho0(m), 2.0);
    const Vec x = m.random_point_in_ball(p, rho, rng);
    const Vec y = m.random_point_in_ball(p, rho, rng);
    try {
      const HolonomyDefect h = holonomy_defect(m, p, x, y);
      hol.record(h.bound - h.actual + 1e-12);
    } catch (const Error&) {
      --t;  // perimeter cap; redraw
    }
  }
  out.push_back(hol);

  PropertyResult fried{"friedland", "|det(A+E) - det A| <= n max(|A|,|A+E|)^(n-1) |E|"};
  for (int t = 0; t < trials; ++t) {
    const int n = 2 + pick(rng, 3);
    Mat a(n, n), e(n, n);
    for (int i = 0; i < n; ++i) {
      a.col(i) = gaussian_vector(n, rng);
      e.col(i) = gaussian_vector(n, rng);
    }
    e *= std::pow(10.0, uniform(-6.0, 0.0, rng));
    const auto norm = static_cast<MatrixNorm>(pick(rng, 3));
    const FriedlandGap g = friedland_gap(a, e, norm);
    fried.record(g.bound - g.actual + 1e-12 * (1.0 + g.bound));
  }
  out.push_back(fried);

  PropertyResult hinge{"hinge_budget", "|c^2 - c_E^2| <= 5 d_max^4 / k^2"};
  PropertyResult angle{"angle_budget", "|cos alpha - cos alpha_E| <= 80 d_max / k"};
  const std::vector<ModelManifold> surfaces = {ModelManifold::sphere(2), ModelManifold::hyperbolic(2),
                                               ModelManifold::sphere(2, 3.0), ModelManifold::hyperbolic(2, 0.5)};
  for (int t = 0; t < trials; ++t) {
    const auto& m = surfaces[static_cast<std::size_t>(t) % surfaces.size()];
    const double k = m.curvature_radius();
    const double d_max = uniform(1e-3, 0.49, rng) * k;
    const double a = uniform(0.0, d_max / 2.0, rng);
    const double b = uniform(0.0, d_max / 2.0, rng);
    const double gamma = uniform(0.0, kPi, rng);
    const HingeBudget h = hinge_budget(m, a, b, gamma, d_max);
    hinge.record(h.bound - std::abs(h.e_prime) + 1e-15 * d_max * d_max);
  }
  for (int t = 0; t < trials;) {
    const auto& m = surfaces[static_cast<std::size_t>(t) % surfaces.size()];
    const double k = m.curvature_radius();
    const double d_max = uniform(1e-3, 0.2, rng) * k;
    const double floor = std::pow(d_max / k, 1.5) * k;
    const double a = uniform(floor, d_max / 2.0, rng);
    const double b = uniform(floor, d_max / 2.0, rng);
    const double gamma = uniform(0.0, kPi, rng);
    const HingeBudget h = hinge_budget(m, a, b, gamma, d_max);
    if (!(h.c_euclid > floor * (1.0 + 1e-9)) || !(h.c > 0.0)) continue;
    try {
      // alpha sits opposite the side a; the Euclidean triangle shares a, b and the hinge angle.
      const AngleBudget ab = triangle_angle_budget(m, a, b, h.c, a, b, h.c_euclid, d_max);
      angle.record(ab.bound - ab.deviation);
      ++t;
    } catch (const Error&) {
      // hypotheses of the budget not met; redraw
    }
  }
  out.push_back(hinge);
  out.push_back(angle);
  return out;
}

PropertyResult fatness_sandwich_property(int trials, std::uint64_t seed) {
  PropertyResult r{"fatness_sandwich", "t^k <= fatness <= t/(k-1)!, equality for triangles"};
  Rng rng(seed);
  double worst_triangle_gap = 0.0;
  for (int k = 1; k <= 4; ++k)
    for (int t = 0; t < trials; ++t) {
      const int n = k + pick(rng, 2);
      const EuclideanSimplex s = random_simplex(n, k, rng, 0.0);
      const double th = thickness(s);
      const double fat = fatness(s);
      const double lower = std::pow(th, k);
      const double upper = th / factorial(k - 1);
      // fatness is at most 1; the absolute term covers roundoff in the volume
      const double tol = 1e-12 * upper + 64.0 * std::numeric_limits<double>::epsilon();
      double margin = std::min(fat - lower + tol, upper - fat + tol);
      if (k == 2) {
        const double gap = std::abs(fat - th);
        worst_triangle_gap = std::max(worst_triangle_gap, gap);
        margin = std::min(margin, 1e-12 - gap);
      }
      r.record(margin);
    }
  r.detail("worst_triangle_gap", worst_triangle_gap);
  return r;
}

PropertyResult embedding_bounds_property(int trials, std::uint64_t seed) {
  PropertyResult r{"embedding_bounds", "transition bi-Lipschitz, fixed-point displacement and inverse perturbation"};
  const std::vector<ModelManifold> models = {ModelManifold::sphere(2), ModelManifold::hyperbolic(2),
                                             ModelManifold::euclidean(2)};
  for (std::size_t i = 0; i < models.size(); ++i) {
    const EmbeddingSuiteReport e = embedding_bound_suite(models[i], trials, 0.1, seed + i);
    r.trials += e.samples;
    r.violations += e.transition_violations + e.bilipschitz_violations + e.displacement_violations + e.inverse_violations;
    r.worst_margin = std::min({r.worst_margin, e.bilipschitz_worst_margin, e.displacement_worst_margin,
                               e.inverse_worst_margin, e.transition_bound - e.max_differential_deviation});
    const std::string tag = to_string(models[i].kind());
    r.detail(tag + "_max_differential_deviation", e.max_differential_deviation);
    r.detail(tag + "_transition_bound", e.transition_bound);
  }
  return r;
}

std::vector<PropertyResult> run_property_suite(const PropertySuiteOptions& o) {
  auto count = [&](int def) { return o.samples > 0 ? o.samples : def; };
  std::vector<PropertyResult> out;
  out.push_back(flat_barycenter_property(count(1000), o.seed));
  out.push_back(karcher_residual_property(count(1000), o.seed + 1));
  out.push_back(thickness_distortion_property(count(10000), o.seed + 2));
  out.push_back(certificate_soundness_property(count(600), o.seed + 3, o.oracle_samples));
  for (auto& p : comparison_properties(count(1000), o.seed + 4)) out.push_back(std::move(p));
  out.push_back(fatness_sandwich_property(count(1000), o.seed + 5));
  out.push_back(embedding_bounds_property(count(200), o.seed + 6));
  return out;
}

}  // namespace riemsimplex
