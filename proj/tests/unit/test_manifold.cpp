#include <gtest/gtest.h>

#include <cmath>

#include "riemsimplex/comparison.hpp"
#include "riemsimplex/error.hpp"
#include "riemsimplex/model_manifold.hpp"

using namespace riemsimplex;

namespace {

Vec v2(double a, double b) { return (Vec(2) << a, b).finished(); }
Vec v3(double a, double b, double c) { return (Vec(3) << a, b, c).finished(); }

}  // namespace

TEST(Euclidean, ExpLogTransport) {
  const auto m = ModelManifold::euclidean(2);
  EXPECT_TRUE(m.exp(v2(1, 2), v2(0.5, -1)).isApprox(v2(1.5, 1)));
  EXPECT_TRUE(m.log(v2(1, 2), v2(4, 6)).isApprox(v2(3, 4)));
  EXPECT_DOUBLE_EQ(m.dist(v2(1, 2), v2(4, 6)), 5.0);
  EXPECT_TRUE(m.transport(v2(0, 0), v2(3, 1), v2(1, 1)).isApprox(v2(1, 1)));
}

TEST(Sphere, QuarterTurn) {
  const auto m = ModelManifold::sphere(2);
  const Vec y = m.exp(v3(0, 0, 1), v3(kPi / 2, 0, 0));
  EXPECT_NEAR((y - v3(1, 0, 0)).norm(), 0.0, 1e-15);
  EXPECT_NEAR(m.dist(v3(0, 0, 1), v3(1, 0, 0)), kPi / 2, 1e-15);
}

TEST(FlatTorus, WrapAround) {
  const auto m = ModelManifold::flat_torus({1.0});
  const Vec x = (Vec(1) << 0.9).finished();
  const Vec y = (Vec(1) << 0.1).finished();
  EXPECT_NEAR(m.log(x, y)(0), 0.2, 1e-15);
}

TEST(Hyperbolic, UnitDistance) {
  const auto m = ModelManifold::hyperbolic(2);
  EXPECT_NEAR(m.dist(v3(0, 0, 1), v3(std::sinh(1.0), 0, std::cosh(1.0))), 1.0, 1e-14);
}

TEST(Manifolds, ExpLogRoundTrip) {
  Rng rng(11);
  for (const auto& m : {ModelManifold::sphere(3), ModelManifold::hyperbolic(3), ModelManifold::flat_torus({1, 2, 1.5}),
                        ModelManifold::sphere(2, 2.5), ModelManifold::hyperbolic(2, 0.5)}) {
    for (int t = 0; t < 50; ++t) {
      const Vec x = m.random_point(rng);
      const Vec y = m.random_point_in_ball(x, 0.9 * std::min(rho0(m), 1.0), rng);
      const Vec v = m.log(x, y);
      EXPECT_NEAR(m.dist(m.exp(x, v), y), 0.0, 1e-12);
      EXPECT_NEAR(m.norm(v), m.dist(x, y), 1e-12);
      const Vec u = m.random_tangent(x, rng);
      EXPECT_NEAR(m.norm(m.transport(x, y, u)), m.norm(u), 1e-12);
    }
  }
}

TEST(Rho0, KnownValues) {
  EXPECT_EQ(rho0(ModelManifold::euclidean(3)), kInf);
  EXPECT_NEAR(rho0(ModelManifold::sphere(2)), kPi / 4, 1e-15);
  EXPECT_NEAR(rho0(ModelManifold::flat_torus({1, 1})), 0.25, 1e-15);
}

TEST(Comparison, SFunction) {
  EXPECT_EQ(comparison_S(0.0, 0.7), 0.7);
  EXPECT_NEAR(comparison_S(1.0, kPi / 2), 1.0, 1e-15);
  EXPECT_NEAR(comparison_S(-1.0, 1.0), std::sinh(1.0), 1e-15);
}

TEST(Comparison, RauchBounds) {
  const auto b = rauch_bounds(ModelManifold::sphere(2), 0.1);
  EXPECT_NEAR(b.lower, 1.0 - 0.01 / 6, 1e-15);
  EXPECT_NEAR(b.lower, 0.998333, 1e-6);
  EXPECT_NEAR(b.upper, 1.005, 1e-15);
  EXPECT_THROW(rauch_bounds(ModelManifold::sphere(2), 2.0), Error);
}

TEST(Holonomy, FlatIsZero) {
  const auto m = ModelManifold::flat_torus({1, 1});
  const auto h = holonomy_defect(m, v2(0.1, 0.1), v2(0.15, 0.1), v2(0.1, 0.17));
  EXPECT_NEAR(h.actual, 0.0, 1e-15);
  EXPECT_EQ(h.bound, 0.0);
}

TEST(Holonomy, SphereRotationByExcess) {
  const auto m = ModelManifold::sphere(2);
  const Vec p = v3(0, 0, 1);
  const Vec x = m.exp(p, v3(0.14, 0, 0));
  const Vec y = m.exp(p, v3(0, 0.14, 0));
  const auto h = holonomy_defect(m, p, x, y);
  EXPECT_NEAR(h.area, 0.0098, 2e-4);
  // rotation by angle A has operator-norm defect 2 sin(A/2)
  EXPECT_NEAR(h.actual, 2.0 * std::sin(h.area / 2.0), 1e-10);
  EXPECT_LE(h.actual, h.bound);
  EXPECT_NEAR(h.bound, 4.0 / 3.0 * h.area, 1e-15);
}

TEST(Holonomy, GeodesicTriangleIsZero) {
  const auto m = ModelManifold::sphere(2);
  const Vec p = v3(0, 0, 1);
  const auto h = holonomy_defect(m, p, m.exp(p, v3(0.1, 0, 0)), m.exp(p, v3(0.3, 0, 0)));
  EXPECT_NEAR(h.actual, 0.0, 1e-12);
}
