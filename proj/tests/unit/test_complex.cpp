#include <gtest/gtest.h>

#include <cmath>

#include "riemsimplex/complex.hpp"
#include "riemsimplex/error.hpp"
#include "riemsimplex/full_star.hpp"
#include "riemsimplex/generators.hpp"

using namespace riemsimplex;

namespace {

AbstractComplex tetrahedron_boundary() { return AbstractComplex(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}); }

AbstractComplex octahedron_boundary() {
  // 0/1 on x, 2/3 on y, 4/5 on z
  std::vector<Simplex> t;
  for (int a : {0, 1})
    for (int b : {2, 3})
      for (int c : {4, 5}) t.push_back({a, b, c});
  return AbstractComplex(6, t);
}

bool is_cycle(const AbstractComplex& link, std::size_t length) {
  return link.dimension() == 1 && link.simplices_of_dimension(0).size() == length &&
         link.simplices_of_dimension(1).size() == length && is_closed_pseudomanifold(link) && is_connected(link);
}

Mat fan_points(int count, double span) {
  Mat p(2, count + 1);
  p.col(0).setZero();
  for (int i = 0; i < count; ++i) {
    const double a = span * i / (span < 2 * kPi ? count - 1 : count);
    p.col(i + 1) << std::cos(a), std::sin(a);
  }
  return p;
}

}  // namespace

TEST(Complex, FaceClosure) {
  const AbstractComplex a(3, {{2, 0, 1}});
  EXPECT_EQ(a.size(), 7u);
  EXPECT_TRUE(a.contains({0, 2}));
  EXPECT_EQ(a.dimension(), 2);
  EXPECT_THROW(AbstractComplex(3, {{0, 0, 1}}), Error);
  EXPECT_THROW(AbstractComplex(3, {{0, 1, 5}}), Error);
}

TEST(Complex, TetrahedronStarAndLink) {
  const auto a = tetrahedron_boundary();
  for (int p = 0; p < 4; ++p) {
    EXPECT_EQ(a.star(p).simplices_of_dimension(2).size(), 3u);
    EXPECT_TRUE(is_cycle(a.link(p), 3));
  }
}

TEST(Complex, IsolatedVertex) {
  const AbstractComplex a(3, {{0, 1}, {2}});
  EXPECT_EQ(a.star(2).size(), 1u);
  EXPECT_EQ(a.link(2).size(), 0u);
  EXPECT_THROW(a.star(7), Error);
}

TEST(Complex, Octahedron) {
  const auto a = octahedron_boundary();
  for (int p = 0; p < 6; ++p) {
    EXPECT_EQ(a.star(p).simplices_of_dimension(2).size(), 4u);
    EXPECT_TRUE(is_cycle(a.link(p), 4));
  }
  const auto r = is_manifold_complex(a);
  EXPECT_TRUE(r.pure && r.closed_pseudomanifold && r.links_ok && r.is_manifold());
  EXPECT_EQ(r.euler_characteristic, 2);
}

TEST(Complex, PinchPointFailsLinks) {
  const AbstractComplex a(5, {{0, 1, 2}, {0, 3, 4}});
  const auto r = is_manifold_complex(a);
  EXPECT_TRUE(r.pure);
  EXPECT_FALSE(r.is_manifold());
}

TEST(Complex, PinchedSpheresFailLinks) {
  // two tetrahedron boundaries glued at vertex 0: closed pseudomanifold, not a manifold
  const AbstractComplex a(7, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}, {0, 4, 5}, {0, 4, 6}, {0, 5, 6}, {4, 5, 6}});
  const auto r = is_manifold_complex(a);
  EXPECT_TRUE(r.closed_pseudomanifold);
  EXPECT_FALSE(r.links_ok);
  EXPECT_EQ(r.bad_link_vertices, std::vector<int>{0});
}

TEST(Complex, IcosahedronEuler) {
  const auto g = icosahedron_sphere(0);
  EXPECT_EQ(g.complex.simplices_of_dimension(0).size(), 12u);
  EXPECT_EQ(g.complex.simplices_of_dimension(1).size(), 30u);
  EXPECT_EQ(g.complex.simplices_of_dimension(2).size(), 20u);
  EXPECT_EQ(g.complex.euler_characteristic(), 2);
  EXPECT_TRUE(is_manifold_complex(g.complex).is_manifold());
}

TEST(Generators, IcosahedronLevels) {
  for (int m = 0; m <= 5; ++m) {
    const auto g = icosahedron_sphere(m, 2.0);
    const std::size_t f = 20u << (2 * m);
    EXPECT_EQ(g.points.size(), 10u * (1u << (2 * m)) + 2u);
    EXPECT_EQ(g.complex.simplices_of_dimension(2).size(), f);
    EXPECT_EQ(g.complex.euler_characteristic(), 2);
    EXPECT_TRUE(is_closed_pseudomanifold(g.complex));
    if (m <= 3) EXPECT_TRUE(is_manifold_complex(g.complex).is_manifold());
    for (const auto& p : g.points) EXPECT_NEAR(p.norm(), 1.0, 1e-14);
  }
  const auto g0 = icosahedron_sphere(0, 3.0);
  double edge = 0.0;
  for (const auto& e : g0.complex.simplices_of_dimension(1))
    edge = std::max(edge, g0.manifold.dist(g0.points[static_cast<std::size_t>(e[0])], g0.points[static_cast<std::size_t>(e[1])]));
  EXPECT_NEAR(edge, 3.0 * std::atan(2.0), 1e-12);
  EXPECT_THROW(icosahedron_sphere(-1), Error);
}

TEST(Generators, GridTorus) {
  const auto g = grid_torus(4, {1.0, 1.0});
  EXPECT_EQ(g.points.size(), 16u);
  EXPECT_EQ(g.complex.simplices_of_dimension(2).size(), 32u);
  double edge = 0.0;
  for (const auto& e : g.complex.simplices_of_dimension(1))
    edge = std::max(edge, g.manifold.dist(g.points[static_cast<std::size_t>(e[0])], g.points[static_cast<std::size_t>(e[1])]));
  EXPECT_NEAR(edge, std::sqrt(2.0) / 4, 1e-15);
  EXPECT_TRUE(is_manifold_complex(g.complex).is_manifold());
  EXPECT_EQ(g.complex.euler_characteristic(), 0);
  EXPECT_TRUE(is_manifold_complex(grid_torus(3, {1, 1, 1}).complex).is_manifold());
  EXPECT_THROW(grid_torus(2, {1, 1}), Error);
}

TEST(Generators, OctahedronAndPerturbed) {
  const auto o = octahedron_sphere();
  EXPECT_EQ(o.points.size(), 6u);
  EXPECT_TRUE(is_manifold_complex(o.complex).is_manifold());
  const auto p = perturbed(icosahedron_sphere(1), 0.01, 4);
  const auto q = perturbed(icosahedron_sphere(1), 0.01, 4);
  const auto base = icosahedron_sphere(1);
  for (std::size_t i = 0; i < p.points.size(); ++i) {
    EXPECT_LE(base.manifold.dist(p.points[i], base.points[i]), 0.01 + 1e-15);
    EXPECT_TRUE(p.points[i] == q.points[i]);
  }
  EXPECT_THROW(perturbed(base, 10.0, 1), Error);
}

TEST(FullStar, HexagonalFanPasses) {
  std::vector<Simplex> t;
  for (int i = 1; i <= 6; ++i) t.push_back({0, i, i % 6 + 1});
  const auto r = full_star_check(make_lifted_star(fan_points(6, 2 * kPi), t), 0.4);
  EXPECT_TRUE(r.thickness_ok && r.embedded && r.center_interior && r.orientation_consistent);
  EXPECT_FALSE(r.sampled);
  EXPECT_NEAR(r.min_thickness, std::sqrt(3.0) / 4, 1e-12);
}

TEST(FullStar, HalfFanHasBoundaryCenter) {
  const auto r = full_star_check(make_lifted_star(fan_points(4, kPi), {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}}), 0.1);
  EXPECT_FALSE(r.center_interior);
  EXPECT_TRUE(r.embedded);
  EXPECT_FALSE(r.ok());
}

TEST(FullStar, FlippedTriangle) {
  std::vector<Simplex> t;
  for (int i = 1; i <= 6; ++i) t.push_back({0, i, i % 6 + 1});
  Mat p = fan_points(6, 2 * kPi);
  // pull vertex 2 across the edge 0-3 so triangle (0,2,3) reverses
  p.col(2) = -0.3 * p.col(2) + 0.9 * p.col(3);
  const auto r = full_star_check(make_lifted_star(p, t), 0.0);
  EXPECT_FALSE(r.orientation_consistent);
  EXPECT_FALSE(r.ok());
}

TEST(FullStar, SampledModeAgreesOnFan) {
  std::vector<Simplex> t;
  for (int i = 1; i <= 6; ++i) t.push_back({0, i, i % 6 + 1});
  FullStarOptions o;
  o.mode = EmbeddingMode::Sampled;
  o.samples = 20000;
  const auto r = full_star_check(make_lifted_star(fan_points(6, 2 * kPi), t), 0.4, o);
  EXPECT_TRUE(r.sampled);
  EXPECT_TRUE(r.ok());
}

TEST(FullStar, OverlapDetected) {
  // two triangles that overlap in their interiors
  const Mat a = (Mat(2, 3) << 0, 1, 0, 0, 0, 1).finished();
  const Mat b = (Mat(2, 3) << 0, 1, 0.8, 0, 0, 0.8).finished();
  const auto w = max_exclusive_weight(a, b, {false, false, true});
  ASSERT_TRUE(w.has_value());
  EXPECT_GT(*w, 1e-9);
}

TEST(FullStar, TorusLiftsAreFull) {
  const auto g = grid_torus(6, {1.0, 1.0});
  for (int p = 0; p < 36; ++p) EXPECT_TRUE(full_star_check(lift_star(g.manifold, g.points, g.complex, p), 0.25).ok());
}
