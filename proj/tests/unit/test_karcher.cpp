#include <gtest/gtest.h>

#include <cmath>

#include "riemsimplex/error.hpp"
#include "riemsimplex/karcher.hpp"

using namespace riemsimplex;

namespace {

Vec v3(double a, double b, double c) { return (Vec(3) << a, b, c).finished(); }
Vec w(std::initializer_list<double> l) {
  Vec out(static_cast<Eigen::Index>(l.size()));
  Eigen::Index i = 0;
  for (double x : l) out(i++) = x;
  return out;
}

// Equilateral geodesic triangle of the given edge on S^2(1) around the north pole.
std::vector<Vec> sphere_triangle(double edge) {
  const auto m = ModelManifold::sphere(2);
  const double c = edge / std::sqrt(3.0);  // circumradius, flat approximation is fine for the tests
  std::vector<Vec> out;
  for (int i = 0; i < 3; ++i) {
    const double a = 2.0 * kPi * i / 3.0;
    out.push_back(m.exp(v3(0, 0, 1), v3(c * std::cos(a), c * std::sin(a), 0)));
  }
  return out;
}

}  // namespace

TEST(Energy, EuclideanSegment) {
  const auto m = ModelManifold::euclidean(1);
  const std::vector<Vec> p{Vec::Zero(1), Vec::Ones(1)};
  const Vec x = Vec::Constant(1, 0.5);
  EXPECT_DOUBLE_EQ(energy(m, p, w({0.5, 0.5}), x), 0.125);
  EXPECT_EQ(grad_residual(m, p, w({0.5, 0.5}), x).norm(), 0.0);
  EXPECT_EQ(energy(m, p, w({1, 0}), p[0]), 0.0);
}

TEST(Energy, SphereMidpoint) {
  const auto m = ModelManifold::sphere(2);
  const std::vector<Vec> p{v3(1, 0, 0), v3(0, 1, 0)};
  const Vec mid = v3(1, 1, 0) / std::sqrt(2.0);
  EXPECT_NEAR(grad_residual(m, p, w({0.5, 0.5}), mid).norm(), 0.0, 1e-15);
  EXPECT_NEAR(energy(m, p, w({0.5, 0.5}), mid), std::pow(kPi / 4, 2) / 2, 1e-15);
}

TEST(KarcherMean, EuclideanIsAffine) {
  const auto m = ModelManifold::euclidean(3);
  const std::vector<Vec> p{v3(0, 0, 0), v3(2, 0, 1), v3(0, 3, -1), v3(1, 1, 4)};
  const Vec lam = w({0.1, 0.2, 0.3, 0.4});
  Vec expected = Vec::Zero(3);
  for (int i = 0; i < 4; ++i) expected += lam(i) * p[static_cast<std::size_t>(i)];
  EXPECT_LT((karcher_mean(m, p, lam).point - expected).norm(), 1e-12);
}

TEST(KarcherMean, VertexWeights) {
  const auto m = ModelManifold::sphere(2);
  const auto p = sphere_triangle(0.3);
  for (int i = 0; i < 3; ++i) {
    const auto r = karcher_mean(m, p, Vec::Unit(3, i));
    EXPECT_LE(r.iterations, 1);
    EXPECT_LT(m.dist(r.point, p[static_cast<std::size_t>(i)]), 1e-14);
  }
}

TEST(KarcherMean, SphereMidpointMatchesSlerp) {
  const auto m = ModelManifold::sphere(2);
  const std::vector<Vec> p{v3(1, 0, 0), m.exp(v3(1, 0, 0), v3(0, 0.4, 0.3))};
  const Vec slerp = m.exp(p[0], 0.5 * m.log(p[0], p[1]));
  EXPECT_LT(m.dist(karcher_mean(m, p, w({0.5, 0.5})).point, slerp), 1e-10);
}

TEST(KarcherMean, SymmetricOctant) {
  const auto m = ModelManifold::sphere(2);
  const std::vector<Vec> p{v3(1, 0, 0), v3(0, 1, 0), v3(0, 0, 1)};
  const Vec lam = Vec::Constant(3, 1.0 / 3.0);
  // the octant triangle has circumradius above rho0 = pi/4, so supply the ball explicitly
  EXPECT_THROW(karcher_mean(m, p, lam, Ball{v3(1, 1, 1).normalized(), 0.96}), Error);
  EXPECT_THROW(karcher_mean(m, p, lam), Error);
}

TEST(KarcherMean, ResidualAndIterations) {
  Rng rng(5);
  for (const auto& m : {ModelManifold::sphere(2), ModelManifold::hyperbolic(2)}) {
    for (int t = 0; t < 100; ++t) {
      const Vec c = m.random_point_in_ball(m.base_point(), 1.0, rng);
      const double r = 0.7 * std::min(rho0(m), 1.0);
      std::vector<Vec> p;
      for (int i = 0; i < 3; ++i) p.push_back(m.random_point_in_ball(c, r, rng));
      const Vec lam = random_weights(3, rng);
      const auto res = karcher_mean(m, p, lam, Ball{c, r});
      EXPECT_LE(res.iterations, 50);
      EXPECT_LT(m.norm(grad_residual(m, p, lam, res.point)), 1e-12 * r);
    }
  }
}

TEST(KarcherMean, BadWeights) {
  const auto m = ModelManifold::euclidean(1);
  const std::vector<Vec> p{Vec::Zero(1), Vec::Ones(1)};
  EXPECT_THROW(karcher_mean(m, p, w({0.7, 0.7})), Error);
  EXPECT_THROW(karcher_mean(m, p, w({1.2, -0.2})), Error);
  EXPECT_THROW(karcher_mean(m, p, w({1.0})), Error);
}

TEST(RiemannianSimplex, FaceAndEdgeImages) {
  const auto m = ModelManifold::sphere(2);
  const RiemannianSimplex s(m, sphere_triangle(0.3));
  const Vec edge = s.bary_map(w({0.25, 0.75, 0}));
  const Vec geo = m.exp(s.vertex(0), 0.75 * m.log(s.vertex(0), s.vertex(1)));
  EXPECT_LT(m.dist(edge, geo), 1e-12);
  const RiemannianSimplex f = s.face({0, 1});
  EXPECT_LT(m.dist(f.bary_map(w({0.25, 0.75})), edge), 1e-12);
}

TEST(RiemannianSimplex, LiftNormsAreDistances) {
  const auto m = ModelManifold::sphere(2);
  const RiemannianSimplex s(m, sphere_triangle(0.4));
  const Vec x = s.bary_map(w({0.2, 0.3, 0.5}));
  const EuclideanSimplex l = s.lift(x);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(l.vertex(i).norm(), m.dist(x, s.vertex(i)), 1e-14);
}

TEST(RiemannianSimplex, EuclideanLiftIsTranslate) {
  const auto m = ModelManifold::euclidean(2);
  std::vector<Vec> p{(Vec(2) << 1, 1).finished(), (Vec(2) << 3, 1).finished(), (Vec(2) << 1.5, 2.5).finished()};
  const RiemannianSimplex s(m, p);
  const auto l = s.lift(p[0]);
  EXPECT_NEAR(thickness(l), thickness(EuclideanSimplex::from_rows({{1, 1}, {3, 1}, {1.5, 2.5}})), 1e-15);
}

TEST(Oracle, EuclideanAndSphere) {
  const auto e = ModelManifold::euclidean(2);
  const RiemannianSimplex flat(e, {Vec::Zero(2), Vec::Unit(2, 0), (Vec(2) << 0.5, std::sqrt(3.0) / 2).finished()});
  const auto o = nondegeneracy_oracle(flat);
  EXPECT_NEAR(o.min_thickness, std::sqrt(3.0) / 4, 1e-12);
  EXPECT_TRUE(o.nondegenerate && o.orientation_consistent);
  const RiemannianSimplex sph(ModelManifold::sphere(2), sphere_triangle(0.5));
  const auto os = nondegeneracy_oracle(sph);
  EXPECT_GT(os.min_thickness, 0.3);
  EXPECT_TRUE(os.nondegenerate && os.orientation_consistent);
}

TEST(Oracle, GreatCircleTripleIsDegenerate) {
  const auto m = ModelManifold::sphere(2);
  const RiemannianSimplex s(m, {v3(1, 0, 0), v3(std::cos(0.2), std::sin(0.2), 0), v3(std::cos(0.5), std::sin(0.5), 0)});
  const auto o = nondegeneracy_oracle(s);
  EXPECT_FALSE(o.nondegenerate);
  EXPECT_LT(o.min_thickness, 1e-12);
  const auto d = bary_map_differential(s, Vec::Constant(3, 1.0 / 3.0));
  EXPECT_TRUE(d.degenerate);
  EXPECT_LT(d.rank_indicator, 1e-9);
}

TEST(BaryDifferential, Bounds) {
  const RiemannianSimplex flat(ModelManifold::euclidean(2),
                               {Vec::Zero(2), Vec::Unit(2, 0), (Vec(2) << 0.5, std::sqrt(3.0) / 2).finished()});
  EXPECT_NEAR(bary_map_differential(flat, w({0.2, 0.3, 0.5})).deviation, 0.0, 1e-9);
  const RiemannianSimplex s(ModelManifold::sphere(2), sphere_triangle(0.05));
  const auto d = bary_map_differential(s, w({0.2, 0.3, 0.5}));
  EXPECT_TRUE(d.chart_valid);
  EXPECT_LE(d.deviation, 14.0 * 0.05 * 0.05 / 0.433);
}
