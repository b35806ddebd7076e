#include <gtest/gtest.h>

#include <cmath>

#include "riemsimplex/certificates.hpp"

using namespace riemsimplex;

namespace {

Vec v3(double a, double b, double c) { return (Vec(3) << a, b, c).finished(); }

// Geodesic equilateral triangle of exact edge length `edge` on S^2(1) around the north pole.
RiemannianSimplex sphere_equilateral(double edge) {
  const auto m = ModelManifold::sphere(2);
  // circumradius R with cos(edge) = cos^2 R + sin^2 R cos(120 deg)
  const double r = std::acos(std::sqrt((2.0 * std::cos(edge) + 1.0) / 3.0));
  std::vector<Vec> p;
  for (int i = 0; i < 3; ++i) {
    const double a = 2.0 * kPi * i / 3.0;
    p.push_back(m.exp(v3(0, 0, 1), v3(r * std::cos(a), r * std::sin(a), 0)));
  }
  return RiemannianSimplex(m, p);
}

RiemannianSimplex flat_triangle(double squash) {
  return RiemannianSimplex(ModelManifold::euclidean(2),
                           {Vec::Zero(2), Vec::Unit(2, 0), (Vec(2) << 0.5, squash).finished()});
}

bool certified(const CertificateReport& r) { return r.verdict == Verdict::Certified; }

}  // namespace

TEST(Certificates, EquilateralEdgeIsExact) {
  const auto s = sphere_equilateral(0.05);
  EXPECT_NEAR(s.longest_edge(), 0.05, 1e-14);
}

TEST(Certificates, EuclideanCertifiedIffThick) {
  const auto good = flat_triangle(0.8);
  const auto bad = flat_triangle(0.0);
  for (auto f : {cert_thickness, cert_thickness_sharp, cert_intrinsic, cert_fatness, cert_toponogov_best}) {
    EXPECT_TRUE(certified(f(good)));
    EXPECT_FALSE(certified(f(bad)));
  }
}

TEST(Certificates, ThicknessRoute) {
  const auto small = cert_thickness(sphere_equilateral(0.01));
  EXPECT_TRUE(certified(small));
  EXPECT_NEAR(small.hypotheses.back().actual, 0.433, 1e-3);
  EXPECT_NEAR(small.hypotheses.back().required, 0.1, 1e-6);
  const auto big = sphere_equilateral(0.1);
  EXPECT_FALSE(certified(cert_thickness(big)));
  EXPECT_TRUE(nondegeneracy_oracle(big).nondegenerate);
}

TEST(Certificates, SharpRoute) {
  EXPECT_TRUE(certified(cert_thickness_sharp(sphere_equilateral(0.05))));
  // rho above rho0/2 fails the gate whatever the thickness
  const auto wide = cert_thickness_sharp(sphere_equilateral(0.5));
  EXPECT_FALSE(certified(wide));
  EXPECT_FALSE(wide.hypotheses.front().pass);
}

TEST(Certificates, IntrinsicRoute) {
  const auto r = cert_intrinsic(sphere_equilateral(0.05));
  EXPECT_TRUE(certified(r));
  EXPECT_NEAR(r.hypotheses.back().required, 0.15, 1e-6);
  const auto m = ModelManifold::sphere(2);
  const RiemannianSimplex line(m, {v3(1, 0, 0), v3(std::cos(0.1), std::sin(0.1), 0), v3(std::cos(0.3), std::sin(0.3), 0)});
  EXPECT_FALSE(certified(cert_intrinsic(line)));
}

TEST(Certificates, FatnessMatchesThicknessOnTriangles) {
  for (double e : {0.005, 0.01, 0.02, 0.05, 0.1}) {
    const auto s = sphere_equilateral(e);
    EXPECT_EQ(certified(cert_fatness(s)), certified(cert_thickness(s))) << e;
  }
}

TEST(Certificates, ToponogovIsConservative) {
  EXPECT_TRUE(certified(cert_toponogov_best(sphere_equilateral(1e-5))));
  EXPECT_FALSE(certified(cert_toponogov_best(sphere_equilateral(1e-4))));
  const auto r = cert_toponogov(sphere_equilateral(1e-3), 0);
  EXPECT_NEAR(r.hypotheses.back().actual, std::pow(std::sqrt(3.0) / 16.0, 2), 1e-4);
}

TEST(Certificates, GreatCircleNeverCertified) {
  const auto m = ModelManifold::sphere(2);
  for (double s : {1e-4, 1e-2, 0.2}) {
    const RiemannianSimplex line(m, {v3(1, 0, 0), v3(std::cos(s), std::sin(s), 0), v3(std::cos(2.5 * s), std::sin(2.5 * s), 0)});
    EXPECT_FALSE(any_certified(certify_all(line)));
  }
}

TEST(Budgets, HingeOnSphereAndHyperbolic) {
  for (const auto& m : {ModelManifold::sphere(2), ModelManifold::hyperbolic(2)}) {
    const auto h = hinge_budget(m, 0.2, 0.2, kPi / 3, 0.4);
    EXPECT_NEAR(h.bound, 5.0 * std::pow(0.4, 4), 1e-15);
    EXPECT_TRUE(h.holds);
    EXPECT_LT(std::abs(h.e_prime), 0.1 * h.bound);
  }
  const auto flat = hinge_budget(ModelManifold::euclidean(2), 0.2, 0.2, kPi / 3, 0.4);
  EXPECT_EQ(flat.e_prime, 0.0);
}

TEST(ReducedGram, Cases) {
  EXPECT_NEAR(reduced_gram(Mat::Identity(2, 2)).determinant, 1.0, 1e-15);
  Mat par(2, 2);
  par << 1, 2, 1, 2;
  EXPECT_NEAR(reduced_gram(par).determinant, 0.0, 1e-15);
  Mat fan(2, 2);
  fan << 1, 0.5, 0, std::sqrt(3.0) / 2;
  EXPECT_NEAR(reduced_gram(fan).determinant, 0.75, 1e-15);
}
