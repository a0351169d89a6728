#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "hconvex/errors.hpp"
#include "hconvex/heisenberg.hpp"

namespace hconvex {
namespace {

void expect_near(const Point3& a, const Point3& b, double tol = 1e-12)
{
  EXPECT_NEAR(a.x, b.x, tol);
  EXPECT_NEAR(a.y, b.y, tol);
  EXPECT_NEAR(a.t, b.t, tol);
}

Point3 random_point(std::mt19937_64& rng, double half = 3.0)
{
  std::uniform_real_distribution<double> u(-half, half);
  return {u(rng), u(rng), u(rng)};
}

TEST(GroupLaw, SpecExamples)
{
  EXPECT_EQ(group_mul({1, 0, 0}, {0, 1, 0}), (Point3{1, 1, -2}));
  EXPECT_EQ(group_mul({1, 2, 3}, {-1, -2, -3}), kIdentity);
  EXPECT_EQ(group_inv({1, 2, 3}), (Point3{-1, -2, -3}));
  EXPECT_EQ(group_inv(kIdentity), kIdentity);
}

TEST(GroupLaw, AxiomsOnRandomPoints)
{
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const Point3 a = random_point(rng);
    const Point3 b = random_point(rng);
    const Point3 c = random_point(rng);
    expect_near(group_mul(group_mul(a, b), c), group_mul(a, group_mul(b, c)), 1e-11);
    EXPECT_EQ(group_mul(kIdentity, a), a);
    EXPECT_EQ(group_mul(a, kIdentity), a);
    expect_near(group_mul(a, group_inv(a)), kIdentity);
    EXPECT_EQ(group_inv(group_inv(a)), a);
    // Commutator is purely vertical: [a,b] = (0, 0, 4(b.x a.y - a.x b.y)).
    const Point3 ab = group_mul(a, b);
    const Point3 ba = group_mul(b, a);
    EXPECT_NEAR(ab.t - ba.t, 4.0 * (b.x * a.y - a.x * b.y), 1e-11);
  }
}

TEST(Dilation, Examples)
{
  EXPECT_EQ(dilate(2.0, {1, 1, 1}), (Point3{2, 2, 4}));
  EXPECT_EQ(dilate(1.0, {0.3, -2, 5}), (Point3{0.3, -2, 5}));
  EXPECT_EQ(dilate(0.0, {0.3, -2, 5}), kIdentity);
  EXPECT_THROW(dilate(-1.0, {1, 1, 1}), PreconditionError);
}

TEST(Dilation, IsGroupAutomorphism)
{
  std::mt19937_64 rng(12);
  for (int i = 0; i < 200; ++i) {
    const Point3 a = random_point(rng);
    const Point3 b = random_point(rng);
    const double l = std::uniform_real_distribution<double>(0.1, 4.0)(rng);
    expect_near(dilate(l, group_mul(a, b)), group_mul(dilate(l, a), dilate(l, b)), 1e-10);
  }
}

TEST(Exp, Examples)
{
  EXPECT_EQ(exp_h({1, 0}), (Point3{1, 0, 0}));
  EXPECT_EQ(exp_h({0, 0}), kIdentity);
  EXPECT_EQ(step({1, 0, 0}, {0, 1}), (Point3{1, 1, -2}));
}

TEST(HorizontalReach, Examples)
{
  const auto v1 = horizontal_reach(kIdentity, {3, 4, 0});
  ASSERT_TRUE(v1);
  EXPECT_EQ(*v1, (HVec{3, 4}));
  const auto v2 = horizontal_reach({1, 0, 0}, {1, 1, -2});
  ASSERT_TRUE(v2);
  EXPECT_EQ(*v2, (HVec{0, 1}));
  EXPECT_FALSE(horizontal_reach(kIdentity, {0, 0, 1}));
}

TEST(HorizontalReach, InvertsStep)
{
  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    const Point3 p = random_point(rng);
    const HVec v{std::uniform_real_distribution<double>(-2, 2)(rng), std::uniform_real_distribution<double>(-2, 2)(rng)};
    const auto back = horizontal_reach(p, step(p, v));
    ASSERT_TRUE(back);
    EXPECT_NEAR(back->a, v.a, 1e-12);
    EXPECT_NEAR(back->b, v.b, 1e-12);
    EXPECT_NEAR(plane_offset(p, step(p, v)), 0.0, 1e-12);
  }
}

TEST(Norms, Examples)
{
  EXPECT_NEAR(koranyi_norm({0, 0, 4}), 2.0, 1e-15);
  EXPECT_NEAR(quasi_norm({3, 4, 16}), 5.0, 1e-15);
  EXPECT_NEAR(euclidean_norm(Point3{1, 2, 2}), 3.0, 1e-15);
  EXPECT_NEAR(horizontal_norm({3, 4, 100}), 5.0, 1e-15);
}

TEST(Norms, HomogeneousAndSymmetric)
{
  std::mt19937_64 rng(14);
  for (int i = 0; i < 200; ++i) {
    const Point3 p = random_point(rng);
    const double g = std::pow(std::pow(p.x * p.x + p.y * p.y, 2) + p.t * p.t, 0.25);
    EXPECT_NEAR(koranyi_norm(p), g, 1e-12);
    EXPECT_NEAR(koranyi_norm(dilate(3.0, p)), 3.0 * koranyi_norm(p), 1e-11);
    EXPECT_NEAR(quasi_norm(dilate(3.0, p)), 3.0 * quasi_norm(p), 1e-11);
    EXPECT_NEAR(koranyi_norm(group_inv(p)), koranyi_norm(p), 1e-15);
  }
}

TEST(Projection, XAxisClosedForm)
{
  const auto r = HorizontalLine::through_identity({1, 0});
  std::mt19937_64 rng(15);
  for (int i = 0; i < 100; ++i) {
    const Point3 p = random_point(rng);
    const Projection pr = proj_pair(r, p);
    expect_near(pr.along, {p.x, 0, 0});
    expect_near(pr.transverse, {0, p.y, p.t - 2 * p.x * p.y}, 1e-11);
    expect_near(group_mul(pr.transverse, pr.along), p, 1e-11);
  }
}

TEST(Projection, DegenerateInputs)
{
  const auto r = HorizontalLine::through_identity({0, 2});
  const Point3 on{0, 1.5, 0};
  const Projection pr = proj_pair(r, on);
  expect_near(pr.along, on);
  expect_near(pr.transverse, kIdentity);
  const Projection pe = proj_pair(r, kIdentity);
  expect_near(pe.along, kIdentity);
  expect_near(pe.transverse, kIdentity);
  EXPECT_THROW(proj_pair(HorizontalLine({0, 0, 1}, {1, 0}), on), PreconditionError);
  EXPECT_THROW(HorizontalLine::through_identity({0, 0}), PreconditionError);
}

TEST(Cone, Examples)
{
  const auto r = HorizontalLine::through_identity({1, 0});
  EXPECT_TRUE(cone_contains(kIdentity, r, 1.0, 1.0, {0.5, 0, 0}));
  EXPECT_FALSE(cone_contains(kIdentity, r, 1.0, 1.0, kIdentity));
  // transverse part (0, 0.6, -0.6): quasi norm max(0.6, sqrt 0.6) = 0.7746 > 0.5
  EXPECT_NEAR(quasi_norm({0, 0.6, -0.6}), std::sqrt(0.6), 1e-15);
  EXPECT_FALSE(cone_contains(kIdentity, r, 1.0, 1.0, {0.5, 0.6, 0}));
  EXPECT_FALSE(cone_contains(kIdentity, r, 1.0, 1.0, {1.5, 0, 0}));
}

TEST(Cone, LeftTranslationInvariant)
{
  const auto r = HorizontalLine::through_identity({1, 0});
  const Point3 vertex{0.3, -0.7, 1.1};
  EXPECT_TRUE(cone_contains(vertex, r, 1.0, 1.0, group_mul(vertex, {0.5, 0, 0})));
  EXPECT_FALSE(cone_contains(vertex, r, 1.0, 1.0, group_mul(vertex, {0.5, 0.6, 0})));
}

TEST(Tolerances, Validate)
{
  EXPECT_NO_THROW(Tolerances{}.validate());
  EXPECT_THROW((Tolerances{1e-10, 1e-9, 60}).validate(), PreconditionError);
  EXPECT_THROW((Tolerances{1e-7, 0.0, 60}).validate(), PreconditionError);
  EXPECT_THROW((Tolerances{1e-7, 1e-9, 0}).validate(), PreconditionError);
}

}  // namespace
}  // namespace hconvex
