#pragma once

#include <string>
#include <vector>

#include "riemsimplex/karcher.hpp"

namespace riemsimplex {

enum class Verdict { Certified, Inconclusive };
std::string to_string(Verdict v);

struct Hypothesis {
  std::string name;
  std::string description;
  std::string relation;  // how actual compares to required when the hypothesis passes
  double required = 0.0;
  double actual = 0.0;
  bool pass = false;
  double margin() const;  // positive when the hypothesis passes
};

struct CertificateReport {
  std::string name;
  int reference_vertex = -1;
  std::vector<Hypothesis> hypotheses;
  Verdict verdict = Verdict::Inconclusive;
  double margin = 0.0;  // margin of the main threshold
};

// Lifted simplices thinner than this are treated as degenerate by every certificate.
inline constexpr double kDegeneracyFloor = 1e-9;
// Simplices rebuilt from edge lengths only resolve altitudes to about sqrt(eps) L.
inline constexpr double kLengthDegeneracyFloor = 1e-7;

CertificateReport cert_thickness(const RiemannianSimplex& s);
CertificateReport cert_thickness_sharp(const RiemannianSimplex& s);
CertificateReport cert_intrinsic(const RiemannianSimplex& s);
CertificateReport cert_fatness(const RiemannianSimplex& s);
CertificateReport cert_toponogov(const RiemannianSimplex& s, int reference);
CertificateReport cert_toponogov_best(const RiemannianSimplex& s);
std::vector<CertificateReport> certify_all(const RiemannianSimplex& s);
bool any_certified(const std::vector<CertificateReport>& reports);

struct HingeBudget {
  double c = 0.0;         // closing edge from the exact cosine rule
  double c_euclid = 0.0;  // closing edge of the Euclidean hinge
  double e_prime = 0.0;   // c^2 - c_euclid^2
  double bound = 0.0;     // 5 d_max^4 / k^2
  bool holds = false;
};
HingeBudget hinge_budget(const ModelManifold& m, double a, double b, double gamma, double d_max);

struct AngleBudget {
  double cos_alpha = 0.0;
  double cos_alpha_euclid = 0.0;
  double deviation = 0.0;  // |cos alpha - cos alpha_E|
  double bound = 0.0;      // 80 d_max / k
  double length_errors[3] = {0.0, 0.0, 0.0};
  bool holds = false;
};
// alpha is the angle opposite side a.
AngleBudget triangle_angle_budget(const ModelManifold& m, double a, double b, double c, double a_euclid,
                                  double b_euclid, double c_euclid, double d_max);

struct ReducedGram {
  Mat cosines;
  double determinant = 0.0;
  double column_det_squared = 0.0;  // det of normalised columns squared, when square
};
// Columns of `vectors` are the tangent vectors, in orthonormal coordinates.
ReducedGram reduced_gram(const Mat& vectors);

// max over dropped vertex j of |det(cos theta_il)_j| at x.
double max_reduced_gram_det(const RiemannianSimplex& s, const Vec& x);

}  // namespace riemsimplex
