#include <gtest/gtest.h>

#include <cmath>

#include "riemsimplex/error.hpp"
#include "riemsimplex/euclid_simplex.hpp"

using namespace riemsimplex;

namespace {

EuclideanSimplex equilateral() { return EuclideanSimplex::from_rows({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}}); }

Mat lengths3(double a01, double a12, double a02) {
  Mat l(3, 3);
  l << 0, a01, a02, a01, 0, a12, a02, a12, 0;
  return l;
}

}  // namespace

TEST(EdgeMatrix, RightTriangleIsIdentity) {
  const auto s = EuclideanSimplex::from_rows({{0, 0}, {1, 0}, {0, 1}});
  EXPECT_TRUE(edge_matrix(s).isApprox(Mat::Identity(2, 2)));
}

TEST(EdgeMatrix, SegmentAndEquilateral) {
  const auto seg = EuclideanSimplex::from_rows({{0}, {2}});
  EXPECT_DOUBLE_EQ(edge_matrix(seg)(0, 0), 2.0);
  const Mat p = edge_matrix(equilateral());
  EXPECT_NEAR(p(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(p(1, 0), 0.0, 1e-15);
  EXPECT_NEAR(p(0, 1), 0.5, 1e-15);
  EXPECT_NEAR(p(1, 1), std::sqrt(3.0) / 2, 1e-15);
}

TEST(Thickness, KnownValues) {
  EXPECT_EQ(thickness(EuclideanSimplex::from_rows({{3, 4}})), 1.0);
  EXPECT_EQ(thickness(EuclideanSimplex::from_rows({{0, 0}, {1, 0}, {2, 0}})), 0.0);
  EXPECT_NEAR(thickness(equilateral()), std::sqrt(3.0) / 4, 1e-14);
  const auto tet = EuclideanSimplex::from_rows(
      {{0, 0, 0}, {1, 0, 0}, {0.5, std::sqrt(3.0) / 2, 0}, {0.5, std::sqrt(3.0) / 6, std::sqrt(2.0 / 3.0)}});
  EXPECT_NEAR(thickness(tet), std::sqrt(2.0 / 3.0) / 3, 1e-14);
}

TEST(Thickness, AltitudeVolumeRecursionAgrees) {
  const auto tet = EuclideanSimplex::from_rows({{0, 0, 0}, {2, 0, 0}, {0.3, 1.1, 0}, {0.2, 0.4, 0.9}});
  EXPECT_NEAR(volume(tet), volume_by_altitudes(tet), 1e-14);
}

TEST(Fatness, KnownValues) {
  EXPECT_EQ(fatness(EuclideanSimplex::from_rows({{1}})), 1.0);
  EXPECT_NEAR(fatness(equilateral()), std::sqrt(3.0) / 4, 1e-14);
  EXPECT_NEAR(fatness(equilateral()), thickness(equilateral()), 1e-15);
  EXPECT_EQ(fatness(EuclideanSimplex::from_rows({{0, 0}, {1, 0}, {2, 0}})), 0.0);
}

TEST(SingularValueBound, Cases) {
  const auto id = EuclideanSimplex::from_rows({{0, 0}, {1, 0}, {0, 1}});
  EXPECT_NEAR(min_singular_value(edge_matrix(id)), 1.0, 1e-15);
  const auto eq = check_bound_skP(equilateral());
  EXPECT_TRUE(eq.holds);
  EXPECT_NEAR(eq.required, std::sqrt(2.0) * std::sqrt(3.0) / 4, 1e-12);
  EXPECT_GE(eq.sigma_min, 0.6124);
  const auto flat = check_bound_skP(EuclideanSimplex::from_rows({{0, 0}, {1, 0}, {2, 0}}));
  EXPECT_TRUE(flat.holds);
  EXPECT_NEAR(flat.sigma_min, 0.0, 1e-15);
}

TEST(GramFromLengths, Cases) {
  const auto g = gram_from_lengths(lengths3(1, 1, 1));
  EXPECT_TRUE(g.realizable);
  EXPECT_NEAR(g.gram(0, 1), 0.5, 1e-15);
  EXPECT_NEAR(g.min_eigenvalue, 0.5, 1e-14);
  const auto d = gram_from_lengths(lengths3(1, 1, 2));
  EXPECT_TRUE(d.realizable);
  EXPECT_NEAR(d.gram.determinant(), 0.0, 1e-14);
  const auto bad = gram_from_lengths(lengths3(1, 1, 3));
  EXPECT_FALSE(bad.realizable);
  EXPECT_LT(bad.min_eigenvalue, 0.0);
}

TEST(GramFromLengths, RejectsNonMetricInput) {
  Mat l = lengths3(1, 1, 1);
  l(0, 1) = 2.0;
  EXPECT_THROW(gram_from_lengths(l), Error);
}

TEST(ThicknessDistortion, ZeroPerturbation) {
  const auto s = equilateral();
  const auto c = verify_thickness_distortion(s, edge_length_matrix(s), 0.0);
  EXPECT_TRUE(c.sigma_ok);
  EXPECT_TRUE(c.thickness_ok);
  EXPECT_NEAR(c.bounds.c0, 0.0, 1e-15);
}

TEST(ThicknessDistortion, EquilateralHalfEta) {
  const auto s = equilateral();
  const auto c = verify_thickness_distortion(s, edge_length_matrix(s), 0.5);
  EXPECT_NEAR(c.bounds.c0, 0.5 * 0.1875 / 4, 1e-6);
  EXPECT_NEAR(c.bounds.c0, 0.02344, 1e-5);
  EXPECT_NEAR(c.bounds.thickness_lower, 4 * 0.5 * std::sqrt(3.0) / 4 / (5 * std::sqrt(2.0)), 1e-12);
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    Mat l = edge_length_matrix(s);
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) l(i, j) = l(j, i) = l(i, j) + uniform(-1, 1, rng) * c.bounds.c0;
    const auto r = verify_thickness_distortion(s, l, 0.5);
    EXPECT_TRUE(r.sigma_ok && r.thickness_ok);
    EXPECT_GE(r.thickness_actual, 0.12245);
  }
}

TEST(Friedland, IdentityExample) {
  const Mat a = Mat::Identity(2, 2);
  const Mat e = 0.1 * Mat::Identity(2, 2);
  const auto g = friedland_gap(a, e, MatrixNorm::Infinity);
  EXPECT_NEAR(g.actual, 0.21, 1e-14);
  EXPECT_NEAR(g.bound, 0.22, 1e-14);
  const auto z = friedland_gap(a, Mat::Zero(2, 2));
  EXPECT_EQ(z.actual, 0.0);
  EXPECT_EQ(z.bound, 0.0);
}

TEST(LinearDistortion, UniformScale) {
  const auto s = equilateral();
  const auto same = linear_distortion(s, s);
  EXPECT_NEAR(same.eta, 0.0, 1e-14);
  EXPECT_NEAR(same.measured, 0.0, 1e-12);
  const auto big = linear_distortion(s, EuclideanSimplex(1.01 * s.vertices()));
  EXPECT_NEAR(big.measured, 0.01, 1e-12);
  EXPECT_NEAR(big.c0, 0.01, 1e-12);
  EXPECT_LE(big.measured, big.eta);
}
