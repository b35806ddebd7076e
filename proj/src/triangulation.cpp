#include "riemsimplex/triangulation.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "riemsimplex/comparison.hpp"
#include "riemsimplex/error.hpp"
#include "riemsimplex/karcher.hpp"

namespace riemsimplex {

namespace {

constexpr double kFdSlack = 1e-3;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

std::vector<Simplex> top_simplices(const AbstractComplex& a) {
  std::vector<Simplex> out;
  for (const auto& s : a.maximal_simplices())
    if (static_cast<int>(s.size()) - 1 == a.dimension()) out.push_back(s);
  return out;
}

std::vector<Vec> vertices_of(const std::vector<Vec>& points, const Simplex& s) {
  std::vector<Vec> out;
  for (int v : s) out.push_back(points[static_cast<std::size_t>(v)]);
  return out;
}

double star_radius(const ModelManifold& m, const std::vector<Vec>& points, const AbstractComplex& a, int p) {
  double r = 0.0;
  for (const auto& v : a.star(p).simplices_of_dimension(0))
    r = std::max(r, m.dist(points[static_cast<std::size_t>(p)], points[static_cast<std::size_t>(v[0])]));
  return r;
}

CoverCheck cover_check(const ModelManifold& m, const std::vector<Vec>& points, double h, int samples,
                       std::uint64_t seed) {
  CoverCheck c;
  c.samples = samples;
  if (m.kind() != ManifoldKind::Sphere && m.kind() != ManifoldKind::FlatTorus) return c;
  c.applicable = true;
  if (points.empty()) return c;
  Rng rng(seed);
  const auto count = static_cast<Eigen::Index>(points.size());
  if (m.kind() == ManifoldKind::Sphere) {
    Mat verts(count, m.ambient_dimension());
    for (Eigen::Index i = 0; i < count; ++i) verts.row(i) = points[static_cast<std::size_t>(i)].transpose();
    const int block = 4096;
    for (int start = 0; start < samples; start += block) {
      const int b = std::min(block, samples - start);
      Mat ys(m.ambient_dimension(), b);
      for (int j = 0; j < b; ++j) ys.col(j) = m.random_point(rng);
      const Mat dots = verts * ys;
      for (int j = 0; j < b; ++j) {
        Eigen::Index best = 0;
        dots.col(j).maxCoeff(&best);
        c.sampled_max_gap = std::max(c.sampled_max_gap, m.dist(ys.col(j), points[static_cast<std::size_t>(best)]));
      }
    }
  } else {
    for (int s = 0; s < samples; ++s) {
      const Vec y = m.random_point(rng);
      double best = kInf;
      for (const auto& p : points) best = std::min(best, m.dist(y, p));
      c.sampled_max_gap = std::max(c.sampled_max_gap, best);
    }
  }
  c.covered = c.sampled_max_gap < h;
  return c;
}

// Largest stretch of d exp_p on the closed ball of the given radius.
double chart_stretch(const ModelManifold& m, double r) {
  const double k = m.curvature_lower();
  if (k >= 0.0 || r == 0.0) return 1.0;
  const double x = std::sqrt(-k) * r;
  return std::sinh(x) / x;
}

}  // namespace

std::string to_string(ScaleVariant v) {
  switch (v) {
    case ScaleVariant::Main: return "main";
    case ScaleVariant::PiecewiseFlat: return "pwf";
    case ScaleVariant::Intrinsic: return "intrinsic";
  }
  return "main";
}

ScaleVariant parse_variant(const std::string& s) {
  if (s == "main") return ScaleVariant::Main;
  if (s == "pwf") return ScaleVariant::PiecewiseFlat;
  if (s == "intrinsic") return ScaleVariant::Intrinsic;
  throw Error(ErrorCode::BadParams, "unknown scale variant '" + s + "'");
}

double scale_h(const ModelManifold& m, double t0, ScaleVariant variant) {
  if (!(t0 > 0.0)) throw Error(ErrorCode::BadParams, "t0 must be positive");
  const double lambda = m.curvature_bound();
  const int n = m.dimension();
  double coeff = 0.0;
  switch (variant) {
    case ScaleVariant::Main: coeff = std::sqrt(static_cast<double>(n)) / 6.0; break;
    case ScaleVariant::PiecewiseFlat: coeff = 1.0 / 6.0; break;
    case ScaleVariant::Intrinsic: coeff = 1.0 / 8.0; break;
  }
  const double curvature_term = lambda > 0.0 ? coeff * t0 / std::sqrt(lambda) : kInf;
  return std::min(m.injectivity_radius() / 4.0, curvature_term);
}

TriangulationReport check_triangulation(const ModelManifold& m, const std::vector<Vec>& points,
                                        const AbstractComplex& a, const TriangulationOptions& options) {
  if (static_cast<int>(points.size()) != a.vertex_count())
    throw Error(ErrorCode::DimensionMismatch, "point count does not match the complex");
  TriangulationReport r;
  r.variant = options.variant;
  r.t0 = options.t0;
  r.h = scale_h(m, options.t0, options.variant);
  r.dimension = m.dimension();
  const int n = m.dimension();

  const ManifoldReport mr = is_manifold_complex(a);
  r.complex_is_manifold = mr.is_manifold() && a.dimension() == n;
  if (!r.complex_is_manifold)
    r.failures.push_back("complex is not a closed manifold complex of dimension " + std::to_string(n));

  int far_stars = 0, bad_stars = 0;
  double max_radius = 0.0;
  FullStarOptions fs;
  fs.mode = options.mode;
  fs.seed = options.seed;
  for (const auto& v : a.simplices_of_dimension(0)) {
    VertexCheck vc;
    vc.vertex = v[0];
    vc.star_radius = star_radius(m, points, a, v[0]);
    vc.star_in_ball = vc.star_radius < r.h;
    try {
      vc.full_star = full_star_check(lift_star(m, points, a, v[0]), options.t0, fs);
      vc.star_full = vc.full_star.ok();
      vc.min_lift_thickness = vc.full_star.min_thickness;
    } catch (const Error&) {
      vc.star_full = false;
    }
    max_radius = std::max(max_radius, vc.star_radius);
    if (!vc.star_in_ball) ++far_stars;
    if (!vc.star_full) ++bad_stars;
    r.vertices.push_back(vc);
  }
  r.condition1_stars = far_stars == 0 && !r.vertices.empty();
  if (far_stars > 0)
    r.failures.push_back("condition 1: " + std::to_string(far_stars) + " stars reach beyond h (max radius " +
                         fmt(max_radius) + " >= h " + fmt(r.h) + ")");
  r.cover = cover_check(m, points, r.h, options.cover_samples, options.seed);
  if (!r.cover.applicable) r.failures.push_back("condition 1: cover check needs a compact manifold");
  else if (!r.cover.covered)
    r.failures.push_back("condition 1: sampled cover gap " + fmt(r.cover.sampled_max_gap) + " >= h " + fmt(r.h));
  r.condition1 = r.condition1_stars && r.cover.covered;
  r.condition2 = bad_stars == 0 && !r.vertices.empty();
  if (bad_stars > 0)
    r.failures.push_back("condition 2: " + std::to_string(bad_stars) + " stars are not full stars at t0 " +
                         fmt(options.t0));

  const double lambda = m.curvature_bound();
  r.checklist.push_back({"scale_within_injectivity", "<=", r.h, m.injectivity_radius() / 4.0,
                         r.h <= m.injectivity_radius() / 4.0});
  const double stretch = chart_stretch(m, 1.5 * r.h);
  r.checklist.push_back({"chart_inverse_differential", "<=", stretch, 4.0 / 3.0, stretch <= 4.0 / 3.0});
  const double composite_bound = 17.0 * lambda * max_radius * max_radius / options.t0;
  r.checklist.push_back({"composite_differential_bound", "<=", composite_bound, n * options.t0 / 2.0,
                         composite_bound <= n * options.t0 / 2.0});
  const auto tops = top_simplices(a);
  double measured = 0.0;
  const int probes = std::min<int>(options.differential_samples, static_cast<int>(tops.size()));
  for (int i = 0; i < probes; ++i) {
    const auto& s = tops[static_cast<std::size_t>(i) * tops.size() / static_cast<std::size_t>(probes)];
    try {
      const RiemannianSimplex rs(m, vertices_of(points, s));
      const Vec w = Vec::Constant(static_cast<Eigen::Index>(s.size()), 1.0 / static_cast<double>(s.size()));
      measured = std::max(measured, bary_map_differential(rs, w).composite_deviation);
    } catch (const Error&) {
      measured = kInf;
    }
  }
  r.checklist.push_back({"composite_differential_measured", "<=", measured, n * options.t0 / 2.0,
                         measured <= n * options.t0 / 2.0 + kFdSlack});

  r.verdict = r.complex_is_manifold && r.condition1 && r.condition2;
  return r;
}

PwfReport pwf_metric(const ModelManifold& m, const std::vector<Vec>& points, const AbstractComplex& a, double t0) {
  if (static_cast<int>(points.size()) != a.vertex_count())
    throw Error(ErrorCode::DimensionMismatch, "point count does not match the complex");
  PwfReport r;
  const int n = a.dimension();
  r.h = scale_h(m, t0, ScaleVariant::PiecewiseFlat);
  r.threshold = 3.0 * t0 / (4.0 * std::sqrt(static_cast<double>(std::max(n, 1))));
  for (const auto& v : a.simplices_of_dimension(0))
    r.max_star_radius = std::max(r.max_star_radius, star_radius(m, points, a, v[0]));
  r.hypothesis_met = r.max_star_radius < r.h;
  r.min_thickness = 1.0;
  r.simplices = top_simplices(a);
  r.simplex_count = static_cast<int>(r.simplices.size());
  for (const auto& s : r.simplices) {
    const int k = static_cast<int>(s.size());
    Mat l = Mat::Zero(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        l(i, j) = l(j, i) = m.dist(points[static_cast<std::size_t>(s[static_cast<std::size_t>(i)])],
                                   points[static_cast<std::size_t>(s[static_cast<std::size_t>(j)])]);
    const GramRealization g = gram_from_lengths(l);
    if (!g.realizable) {
      r.offenders.push_back(s);
      r.realized.emplace_back();
      continue;
    }
    r.min_thickness = std::min(r.min_thickness, thickness(*g.simplex));
    r.realized.push_back(*g.simplex);
  }
  if (!r.offenders.empty()) {
    std::string list;
    for (std::size_t i = 0; i < r.offenders.size() && i < 10; ++i) {
      list += " [";
      for (std::size_t j = 0; j < r.offenders[i].size(); ++j)
        list += (j ? "," : "") + std::to_string(r.offenders[i][j]);
      list += "]";
    }
    throw Error(ErrorCode::UnrealizableSimplex,
                std::to_string(r.offenders.size()) + " simplices have no Euclidean realization:" + list);
  }
  r.all_realizable = true;
  r.bound_ok = r.min_thickness > r.threshold;
  return r;
}

DistortionReport distortion_report(const ModelManifold& m, const std::vector<Vec>& points, const AbstractComplex& a,
                                   double t0, int pairs, std::uint64_t seed) {
  const PwfReport pwf = pwf_metric(m, points, a, t0);
  DistortionReport r;
  r.h = pwf.h;
  const double lambda = m.curvature_bound();
  r.bound = 50.0 * lambda * r.h * r.h / (t0 * t0);
  r.hypothesis_met = pwf.hypothesis_met;
  if (pwf.simplices.empty()) return r;
  std::vector<std::optional<RiemannianSimplex>> cache(pwf.simplices.size());
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, pwf.simplices.size() - 1);
  for (int i = 0; i < pairs; ++i) {
    const std::size_t s = pick(rng);
    const int k = static_cast<int>(pwf.simplices[s].size());
    const Vec lam = random_weights(k, rng);
    const Vec mu = random_weights(k, rng);
    const EuclideanSimplex& flat = pwf.realized[s];
    const double d_flat = (flat.vertices() * (lam - mu)).norm();
    if (!(d_flat > 1e-14 * longest_edge(flat))) {
      ++r.skipped;
      continue;
    }
    if (!cache[s]) cache[s].emplace(m, vertices_of(points, pwf.simplices[s]));
    const double d_m = m.dist(cache[s]->bary_map(lam), cache[s]->bary_map(mu));
    DistortionPair p{static_cast<int>(s), d_flat, d_m, std::abs(d_m - d_flat) / d_flat};
    r.measured_max = std::max(r.measured_max, p.ratio);
    r.measured_abs_max = std::max(r.measured_abs_max, std::abs(d_m - d_flat));
    r.samples.push_back(p);
    ++r.pairs;
  }
  r.holds = r.measured_max <= r.bound || (lambda == 0.0 && r.measured_abs_max <= 1e-9);
  return r;
}

EmbeddingSuiteReport embedding_bound_suite(const ModelManifold& m, int samples, double rho, std::uint64_t seed) {
  if (!(rho > 0.0) || !(rho < rho0(m) / 2.0))
    throw Error(ErrorCode::RadiusTooLarge, "transition radius must lie in (0, rho0/2)");
  EmbeddingSuiteReport r;
  r.samples = samples;
  r.rho = rho;
  const double lambda = m.curvature_bound();
  r.transition_bound = 6.0 * lambda * rho * rho;
  const int n = m.dimension();
  Rng rng(seed);
  auto in_ball = [&](double radius) { return Vec(radius * std::pow(uniform(0.0, 1.0, rng), 1.0 / n) * random_unit_vector(n, rng)); };
  for (int s = 0; s < samples; ++s) {
    const Vec p = m.random_point(rng);
    const Vec x = m.exp(p, m.from_coords(m.frame(p), in_ball(rho)));
    const Mat fp = m.frame(p);
    const Mat fx = m.transported_frame(p, x);
    auto transition = [&](const Vec& u) { return Vec(m.to_coords(fx, m.log(x, m.exp(p, m.from_coords(fp, u))))); };
    const double step = 1e-3 * rho;
    auto deviation = [&](const Vec& u) {
      return operator_norm(central_jacobian(transition, u, step) - Mat::Identity(n, n));
    };
    // Keep the stencil inside the ball.
    const Vec u1 = in_ball(rho - 2.0 * step);
    const Vec u2 = in_ball(rho - 2.0 * step);
    const double d0 = deviation(Vec::Zero(n)), d1 = deviation(u1), d2 = deviation(u2);
    const double dm = deviation(0.5 * (u1 + u2)), dh = deviation(0.5 * u1);
    for (double d : {d0, d1, d2, dm, dh}) {
      r.max_differential_deviation = std::max(r.max_differential_deviation, d);
      if (d > r.transition_bound + kFdSlack) ++r.transition_violations;
    }
    const double eta_a = std::max({d1, d2, dm});
    const Vec f1 = transition(u1), f2 = transition(u2);
    const double sep = (u1 - u2).norm();
    if (sep > 0.0) {
      const double ratio = std::abs((f1 - f2).norm() - sep) / sep;
      r.bilipschitz_worst_margin = std::min(r.bilipschitz_worst_margin, eta_a - ratio);
      if (ratio > eta_a + kFdSlack) ++r.bilipschitz_violations;
    }
    const double eta_b = std::max({d0, dh, d1});
    const Vec g1 = f1 - transition(Vec::Zero(n));
    if (u1.norm() > 0.0) {
      const double disp = (g1 - u1).norm();
      r.displacement_worst_margin = std::min(r.displacement_worst_margin, eta_b * u1.norm() - disp);
      if (disp > (eta_b + kFdSlack) * u1.norm()) ++r.displacement_violations;
    }
    const Mat t = random_orthogonal(n, rng);
    const double eta = uniform(0.0, 0.5, rng);
    Mat e = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i) e.col(i) = gaussian_vector(n, rng);
    const double en = operator_norm(e);
    if (en > 0.0) e *= eta / en;
    const double inv_dev = operator_norm(Mat((t + e).inverse()) - Mat(t.transpose()));
    r.inverse_worst_margin = std::min(r.inverse_worst_margin, 2.0 * eta - inv_dev);
    if (inv_dev > 2.0 * eta * (1.0 + 1e-12) + 1e-15) ++r.inverse_violations;
  }
  return r;
}

}  // namespace riemsimplex
