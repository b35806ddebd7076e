#include <gtest/gtest.h>

#include <cmath>

#include "riemsimplex/error.hpp"
#include "riemsimplex/generators.hpp"
#include "riemsimplex/karcher.hpp"
#include "riemsimplex/triangulation.hpp"

using namespace riemsimplex;

TEST(ScaleH, FlatTorusIgnoresCurvature) {
  const auto m = ModelManifold::flat_torus({1.0, 1.0});
  for (auto v : {ScaleVariant::Main, ScaleVariant::PiecewiseFlat, ScaleVariant::Intrinsic})
    EXPECT_DOUBLE_EQ(scale_h(m, 0.3, v), 0.125);
}

TEST(ScaleH, SphereVariants) {
  const auto m = ModelManifold::sphere(2);
  EXPECT_NEAR(scale_h(m, 0.5, ScaleVariant::Main), std::sqrt(2.0) * 0.5 / 6.0, 1e-15);
  EXPECT_NEAR(scale_h(m, 0.5, ScaleVariant::Main), 0.11785, 1e-5);
  EXPECT_NEAR(scale_h(m, 0.5, ScaleVariant::PiecewiseFlat), 0.08333, 1e-5);
  EXPECT_NEAR(scale_h(m, 0.5, ScaleVariant::Intrinsic), 0.5 / 8.0, 1e-15);
  EXPECT_THROW(scale_h(m, 0.0, ScaleVariant::Main), Error);
}

TEST(ScaleH, Monotone) {
  for (auto v : {ScaleVariant::Main, ScaleVariant::PiecewiseFlat, ScaleVariant::Intrinsic}) {
    for (double r : {0.5, 1.0, 3.0}) {
      double prev = 0.0;
      for (double t0 = 0.01; t0 < 1.0; t0 += 0.01) {
        const double h = scale_h(ModelManifold::sphere(2, r), t0, v);
        EXPECT_GE(h, prev);
        prev = h;
      }
    }
    // larger Lambda (smaller radius) never increases h
    for (double t0 : {0.1, 0.3, 0.6}) {
      double prev = kInf;
      for (double r = 5.0; r > 0.2; r -= 0.1) {
        const double h = scale_h(ModelManifold::hyperbolic(3, r), t0, v);
        EXPECT_LE(h, prev);
        prev = h;
      }
    }
  }
}

TEST(Triangulation, IcosahedronLevelZeroFailsCondition1) {
  const auto g = icosahedron_sphere(0);
  TriangulationOptions o;
  o.t0 = 0.4;
  o.cover_samples = 2000;
  const auto r = check_triangulation(g.manifold, g.points, g.complex, o);
  EXPECT_FALSE(r.verdict);
  EXPECT_FALSE(r.condition1);
  EXPECT_NEAR(r.h, std::sqrt(2.0) * 0.4 / 6.0, 1e-15);
  ASSERT_FALSE(r.failures.empty());
  EXPECT_EQ(r.failures.front().rfind("condition 1", 0), 0u);
}

TEST(Triangulation, TorusGridPasses) {
  const auto g = grid_torus(12, {1.0, 1.0});
  TriangulationOptions o;
  o.t0 = 0.25;
  o.cover_samples = 5000;
  const auto r = check_triangulation(g.manifold, g.points, g.complex, o);
  EXPECT_TRUE(r.verdict);
  EXPECT_DOUBLE_EQ(r.h, 0.125);
  for (const auto& v : r.vertices) EXPECT_NEAR(v.min_lift_thickness, 0.25, 1e-12);
}

TEST(Triangulation, TorusInjectivityProbe) {
  // barycentric images of distinct simplices never coincide away from shared faces
  const auto g = grid_torus(12, {1.0, 1.0});
  const auto tris = g.complex.simplices_of_dimension(2);
  Rng rng(9);
  std::vector<std::pair<std::size_t, Vec>> samples;
  for (int i = 0; i < 10000; ++i) {
    const std::size_t k = static_cast<std::size_t>(rng() % tris.size());
    std::vector<Vec> v;
    for (int id : tris[k]) v.push_back(g.points[static_cast<std::size_t>(id)]);
    Vec w = random_weights(3, rng);
    w = (w.array() * 0.98 + 0.02 / 3).matrix();  // stay off the boundary
    samples.emplace_back(k, karcher_mean(g.manifold, v, w).point);
  }
  double nearest = kInf;
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t j = i + 1; j < samples.size(); ++j)
      if (samples[i].first != samples[j].first)
        nearest = std::min(nearest, g.manifold.dist(samples[i].second, samples[j].second));
  EXPECT_GT(nearest, 0.0);
}

TEST(PwfMetric, TorusAndIcosahedron) {
  const auto t = grid_torus(8, {1.0, 1.0});
  const auto rt = pwf_metric(t.manifold, t.points, t.complex, 0.25);
  EXPECT_TRUE(rt.all_realizable);
  EXPECT_NEAR(rt.min_thickness, 0.25, 1e-12);
  const auto g = icosahedron_sphere(4);
  const auto rg = pwf_metric(g.manifold, g.points, g.complex, 0.4);
  EXPECT_TRUE(rg.all_realizable);
  EXPECT_NEAR(rg.threshold, 3.0 / (4.0 * std::sqrt(2.0)) * 0.4, 1e-15);
  EXPECT_GT(rg.min_thickness, 0.2121);
  EXPECT_TRUE(rg.bound_ok);
}

TEST(PwfMetric, CollinearTripleIsFlagged) {
  const auto m = ModelManifold::sphere(2);
  std::vector<Vec> p;
  for (double a : {0.0, 0.1, 0.2}) p.push_back((Vec(3) << std::cos(a), std::sin(a), 0).finished());
  const AbstractComplex a(3, {{0, 1, 2}});
  try {
    const auto r = pwf_metric(m, p, a, 0.3);
    EXPECT_LT(r.min_thickness, 1e-7);
    EXPECT_FALSE(r.bound_ok);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnrealizableSimplex);
  }
}

TEST(Distortion, TorusIsIsometric) {
  const auto g = grid_torus(12, {1.0, 1.0});
  const auto r = distortion_report(g.manifold, g.points, g.complex, 0.25, 2000, 3);
  EXPECT_EQ(r.bound, 0.0);
  EXPECT_LE(r.measured_abs_max, 1e-9);
  EXPECT_TRUE(r.holds);
}

TEST(Distortion, IcosahedronBelowBound) {
  const auto g = icosahedron_sphere(4);
  const auto r = distortion_report(g.manifold, g.points, g.complex, 0.4, 2000, 3);
  EXPECT_NEAR(r.bound, 50.0 * r.h * r.h / 0.16, 1e-12);
  EXPECT_LT(r.measured_max, r.bound);
  EXPECT_TRUE(r.holds);
}

TEST(EmbeddingSuite, EuclideanIsExact) {
  const auto r = embedding_bound_suite(ModelManifold::euclidean(2), 50, 0.1, 1);
  EXPECT_TRUE(r.ok());
  EXPECT_LE(r.max_differential_deviation, 1e-9);
}

TEST(EmbeddingSuite, SphereTransitions) {
  const auto r = embedding_bound_suite(ModelManifold::sphere(2), 100, 0.1, 1);
  EXPECT_TRUE(r.ok());
  EXPECT_NEAR(r.transition_bound, 0.06, 1e-15);
  EXPECT_LE(r.max_differential_deviation, 0.06);
  EXPECT_THROW(embedding_bound_suite(ModelManifold::sphere(2), 10, 0.5, 1), Error);
}

TEST(InverseBound, ScaledIdentity) {
  const double eta = 0.3;
  const Mat t = Mat::Identity(2, 2);
  const Mat a = (1.0 + eta) * t;
  const double gap = operator_norm(Mat(a.inverse() - t.inverse()));
  EXPECT_NEAR(gap, eta / (1.0 + eta), 1e-15);
  EXPECT_NEAR(gap, 0.2308, 1e-4);
  EXPECT_LE(gap, 2.0 * eta);
}
