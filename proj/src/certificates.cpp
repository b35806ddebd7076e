#include "riemsimplex/certificates.hpp"

#include <algorithm>
#include <cmath>

#include "riemsimplex/error.hpp"

namespace riemsimplex {

namespace {

Hypothesis make(std::string name, std::string description, std::string relation, double required, double actual) {
  Hypothesis h{std::move(name), std::move(description), std::move(relation), required, actual, false};
  if (h.relation == ">") h.pass = actual > required;
  else if (h.relation == ">=") h.pass = actual >= required;
  else if (h.relation == "<") h.pass = actual < required;
  else if (h.relation == "<=") h.pass = actual <= required;
  else h.pass = actual == required;
  return h;
}

Hypothesis flag(std::string name, std::string description, bool ok) {
  return make(std::move(name), std::move(description), "==", 1.0, ok ? 1.0 : 0.0);
}

void finish(CertificateReport& r, const Hypothesis& main) {
  r.margin = main.margin();
  const bool all = std::all_of(r.hypotheses.begin(), r.hypotheses.end(), [](const Hypothesis& h) { return h.pass; });
  r.verdict = all ? Verdict::Certified : Verdict::Inconclusive;
}

EuclideanSimplex lift_at_vertex(const RiemannianSimplex& s, int p) {
  const Vec& x = s.vertex(p);
  return s.lift_in_frame(x, s.manifold().frame(x));
}

// Vertex whose lift maximises the given quality measure.
template <class Quality>
std::pair<int, double> best_vertex(const RiemannianSimplex& s, Quality q) {
  int best = 0;
  double value = -1.0;
  for (int p = 0; p <= s.dimension(); ++p) {
    const double v = q(lift_at_vertex(s, p));
    if (v > value) {
      value = v;
      best = p;
    }
  }
  return {best, value};
}

Hypothesis containment(const RiemannianSimplex& s, int reference) {
  return make("containment_ball", "vertices lie in a convex ball of radius D about the reference vertex", "<",
              convexity_radius(s.manifold()), s.spread(reference));
}

CertificateReport thickness_route(const RiemannianSimplex& s, const std::string& name, double factor,
                                  double rho_cap_fraction) {
  CertificateReport r;
  r.name = name;
  const ModelManifold& m = s.manifold();
  const double rho = s.longest_edge() * (1.0 + 1e-9);
  const auto [p, t] = best_vertex(s, [](const EuclideanSimplex& e) { return thickness(e); });
  r.reference_vertex = p;
  const double cap = rho0(m) * rho_cap_fraction;
  r.hypotheses.push_back(make("ball_radius", "containing ball radius rho against its cap",
                              rho_cap_fraction < 1.0 ? "<=" : "<", cap, rho));
  r.hypotheses.push_back(containment(s, p));
  r.hypotheses.push_back(make("lift_nondegenerate", "lifted simplex is not degenerate", ">", kDegeneracyFloor, t));
  const Hypothesis main =
      make("thickness_threshold", "thickness of the best vertex lift against the curvature threshold", ">",
           factor * std::sqrt(m.curvature_bound()) * rho, t);
  r.hypotheses.push_back(main);
  finish(r, main);
  return r;
}

double half_angle_sin2(const ModelManifold& m, double a, double b, double c) {
  const double k = m.curvature_radius();
  const double s = 0.5 * (a + b + c);
  switch (m.kind()) {
    case ManifoldKind::Sphere:
      return std::sin((s - b) / k) * std::sin((s - c) / k) / (std::sin(b / k) * std::sin(c / k));
    case ManifoldKind::Hyperbolic:
      return std::sinh((s - b) / k) * std::sinh((s - c) / k) / (std::sinh(b / k) * std::sinh(c / k));
    default: return (s - b) * (s - c) / (b * c);
  }
}

double cos_from_sides_euclid(double a, double b, double c) { return (b * b + c * c - a * a) / (2.0 * b * c); }

}  // namespace

std::string to_string(Verdict v) { return v == Verdict::Certified ? "Certified" : "Inconclusive"; }

double Hypothesis::margin() const {
  if (relation == ">" || relation == ">=") return actual - required;
  if (relation == "<" || relation == "<=") return required - actual;
  return pass ? 0.0 : -1.0;
}

CertificateReport cert_thickness(const RiemannianSimplex& s) { return thickness_route(s, "thickness", 10.0, 1.0); }

CertificateReport cert_thickness_sharp(const RiemannianSimplex& s) {
  return thickness_route(s, "thickness_sharp", 5.0, 0.5);
}

CertificateReport cert_intrinsic(const RiemannianSimplex& s) {
  CertificateReport r;
  r.name = "intrinsic";
  const ModelManifold& m = s.manifold();
  const double l = s.longest_edge();
  const double rho = l * (1.0 + 1e-9);
  r.hypotheses.push_back(make("ball_radius", "containing ball radius rho against rho0", "<", rho0(m), rho));
  r.hypotheses.push_back(containment(s, 0));
  bool realizable = false;
  double t = 0.0;
  if (s.dimension() > 0 && l > 0.0) {
    const GramRealization g = gram_from_lengths(s.edge_lengths());
    realizable = g.realizable;
    if (realizable) t = thickness(*g.simplex);
  }
  r.hypotheses.push_back(flag("realizable", "geodesic edge lengths define a Euclidean simplex", realizable));
  r.hypotheses.push_back(make("lift_nondegenerate", "edge-length simplex is not degenerate", ">", kLengthDegeneracyFloor, t));
  const Hypothesis main = make("thickness_threshold", "thickness of the edge-length simplex against 3 sqrt(Lambda) L",
                               ">=", 3.0 * std::sqrt(m.curvature_bound()) * std::min(l, rho), t);
  r.hypotheses.push_back(main);
  finish(r, main);
  return r;
}

CertificateReport cert_fatness(const RiemannianSimplex& s) {
  CertificateReport r;
  r.name = "fatness";
  const ModelManifold& m = s.manifold();
  const int k = s.dimension();
  const double rho = s.longest_edge() * (1.0 + 1e-9);
  const auto [p, theta] = best_vertex(s, [](const EuclideanSimplex& e) { return fatness(e); });
  r.reference_vertex = p;
  r.hypotheses.push_back(make("ball_radius", "containing ball radius rho against rho0", "<", rho0(m), rho));
  r.hypotheses.push_back(containment(s, p));
  r.hypotheses.push_back(make("lift_nondegenerate", "lifted simplex is not degenerate", ">", kDegeneracyFloor,
                              thickness(lift_at_vertex(s, p))));
  const double denom = k > 0 ? factorial(k - 1) : 1.0;
  const Hypothesis main = make("fatness_threshold", "fatness of the best vertex lift against the converted threshold",
                               ">", 10.0 * std::sqrt(m.curvature_bound()) * rho / denom, theta);
  r.hypotheses.push_back(main);
  finish(r, main);
  return r;
}

CertificateReport cert_toponogov(const RiemannianSimplex& s, int reference) {
  if (reference < 0 || reference > s.dimension()) throw Error(ErrorCode::UnknownVertex, "reference vertex out of range");
  CertificateReport r;
  r.name = "toponogov";
  r.reference_vertex = reference;
  const ModelManifold& m = s.manifold();
  const int n = s.dimension();
  const double d = s.spread(reference);
  const double lam = m.curvature_bound();
  const EuclideanSimplex lifted = lift_at_vertex(s, reference);
  r.hypotheses.push_back(flag("full_dimensional", "simplex dimension equals manifold dimension", n == m.dimension()));
  r.hypotheses.push_back(containment(s, reference));
  r.hypotheses.push_back(make("curvature_scale", "sqrt(Lambda) D", "<", 0.5, std::sqrt(lam) * d));
  r.hypotheses.push_back(make("lift_nondegenerate", "lifted simplex is not degenerate", ">", kDegeneracyFloor,
                              thickness(lifted)));
  double lhs = 0.0;
  if (n > 0 && d > 0.0) {
    const double q = factorial(n - 1) * volume(lifted) / std::pow(2.0 * d, n);
    lhs = q * q;
  }
  const Hypothesis main = make("quality_criterion", "squared normalised volume against 160 n sqrt(Lambda) D", ">",
                               160.0 * n * std::sqrt(lam) * d, lhs);
  r.hypotheses.push_back(main);
  finish(r, main);
  return r;
}

CertificateReport cert_toponogov_best(const RiemannianSimplex& s) {
  CertificateReport best = cert_toponogov(s, 0);
  for (int r = 1; r <= s.dimension(); ++r) {
    CertificateReport c = cert_toponogov(s, r);
    const bool better = (c.verdict == Verdict::Certified && best.verdict != Verdict::Certified) ||
                        (c.verdict == best.verdict && c.margin > best.margin);
    if (better) best = std::move(c);
  }
  return best;
}

std::vector<CertificateReport> certify_all(const RiemannianSimplex& s) {
  return {cert_thickness(s), cert_thickness_sharp(s), cert_intrinsic(s), cert_fatness(s), cert_toponogov_best(s)};
}

bool any_certified(const std::vector<CertificateReport>& reports) {
  return std::any_of(reports.begin(), reports.end(),
                     [](const CertificateReport& r) { return r.verdict == Verdict::Certified; });
}

HingeBudget hinge_budget(const ModelManifold& m, double a, double b, double gamma, double d_max) {
  const double k = m.curvature_radius();
  std::string failed;
  if (!(a >= 0.0 && a <= d_max / 2.0)) failed += " a <= d_max/2;";
  if (!(b >= 0.0 && b <= d_max / 2.0)) failed += " b <= d_max/2;";
  if (!(d_max / k < 0.5)) failed += " d_max/k < 1/2;";
  if (!failed.empty()) throw Error(ErrorCode::HypothesisViolated, "hinge budget:" + failed);
  HingeBudget h;
  h.c_euclid = std::sqrt(std::max(a * a + b * b - 2.0 * a * b * std::cos(gamma), 0.0));
  const double sg = std::sin(gamma / 2.0);
  switch (m.kind()) {
    case ManifoldKind::Sphere: {
      const double p1 = a / k, p2 = b / k;
      const double sd = std::sin((p1 - p2) / 2.0);
      const double hav = sd * sd + std::sin(p1) * std::sin(p2) * sg * sg;
      h.c = 2.0 * k * std::asin(std::sqrt(std::clamp(hav, 0.0, 1.0)));
      break;
    }
    case ManifoldKind::Hyperbolic: {
      const double p1 = a / k, p2 = b / k;
      const double sd = std::sinh((p1 - p2) / 2.0);
      const double hav = sd * sd + std::sinh(p1) * std::sinh(p2) * sg * sg;
      h.c = 2.0 * k * std::asinh(std::sqrt(std::max(hav, 0.0)));
      break;
    }
    default: h.c = h.c_euclid;
  }
  h.e_prime = h.c * h.c - h.c_euclid * h.c_euclid;
  h.bound = std::isfinite(k) ? 5.0 * std::pow(d_max, 4) / (k * k) : 0.0;
  h.holds = std::abs(h.e_prime) <= h.bound + 1e-15 * d_max * d_max;
  return h;
}

AngleBudget triangle_angle_budget(const ModelManifold& m, double a, double b, double c, double a_euclid,
                                  double b_euclid, double c_euclid, double d_max) {
  const double k = m.curvature_radius();
  const bool flat = !std::isfinite(k);
  AngleBudget out;
  const double sides[3] = {a, b, c};
  const double euclid[3] = {a_euclid, b_euclid, c_euclid};
  std::string failed;
  for (int i = 0; i < 3; ++i) {
    out.length_errors[i] = flat ? sides[i] * sides[i] - euclid[i] * euclid[i]
                                : (sides[i] / k) * (sides[i] / k) - (euclid[i] / k) * (euclid[i] / k);
    const double cap = flat ? 1e-12 * d_max * d_max : 5.0 * std::pow(d_max / k, 4);
    if (std::abs(out.length_errors[i]) > cap) failed += " length error " + std::to_string(i) + ";";
    if (!flat) {
      const double floor = std::pow(d_max / k, 1.5);
      if (!(euclid[i] / k > floor)) failed += " Euclidean side " + std::to_string(i) + " above the length floor;";
      if (!(euclid[i] / k < d_max / k)) failed += " Euclidean side " + std::to_string(i) + " below d_max;";
    } else if (!(euclid[i] > 0.0)) {
      failed += " Euclidean side " + std::to_string(i) + " positive;";
    }
  }
  if (!flat && !(d_max / k < 0.5)) failed += " d_max/k < 1/2;";
  if (a > b + c || b > a + c || c > a + b) failed += " triangle inequality;";
  if (!failed.empty()) throw Error(ErrorCode::HypothesisViolated, "angle budget:" + failed);
  const double s2 = std::clamp(half_angle_sin2(m, a, b, c), 0.0, 1.0);
  out.cos_alpha = 1.0 - 2.0 * s2;
  out.cos_alpha_euclid = cos_from_sides_euclid(a_euclid, b_euclid, c_euclid);
  out.deviation = std::abs(out.cos_alpha - out.cos_alpha_euclid);
  out.bound = flat ? 0.0 : 80.0 * d_max / k;
  out.holds = out.deviation <= out.bound + 1e-9;
  return out;
}

ReducedGram reduced_gram(const Mat& vectors) {
  const Eigen::Index cols = vectors.cols();
  Mat unit(vectors.rows(), cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    const double len = vectors.col(j).norm();
    if (!(len > 0.0)) throw Error(ErrorCode::ZeroVector, "vector " + std::to_string(j) + " is zero");
    unit.col(j) = vectors.col(j) / len;
  }
  ReducedGram g;
  g.cosines = unit.transpose() * unit;
  g.determinant = g.cosines.determinant();
  if (unit.rows() == cols) {
    const double d = unit.determinant();
    g.column_det_squared = d * d;
    if (std::abs(g.column_det_squared - g.determinant) > 1e-10)
      throw std::logic_error("reduced Gram determinant disagrees with the column determinant");
  } else {
    g.column_det_squared = g.determinant;
  }
  return g;
}

double max_reduced_gram_det(const RiemannianSimplex& s, const Vec& x) {
  const ModelManifold& m = s.manifold();
  const Mat frame = m.frame(x);
  const int k = s.dimension();
  Mat v(m.dimension(), k + 1);
  for (int i = 0; i <= k; ++i) v.col(i) = m.to_coords(frame, m.log(x, s.vertex(i)));
  double best = 0.0;
  for (int j = 0; j <= k; ++j) {
    Mat sub(m.dimension(), k);
    int c = 0;
    bool zero = false;
    for (int i = 0; i <= k; ++i) {
      if (i == j) continue;
      if (v.col(i).norm() <= 1e-12 * s.longest_edge()) zero = true;
      sub.col(c++) = v.col(i);
    }
    if (zero) continue;
    best = std::max(best, std::abs(reduced_gram(sub).determinant));
  }
  return best;
}

}  // namespace riemsimplex
