#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "hconvex/convexity_check.hpp"
#include "hconvex/errors.hpp"
#include "hconvex/gallery.hpp"

namespace hconvex {
namespace {

FnOracle koranyi() { return {[](const Point3& p) { return koranyi_norm(p); }, "koranyi", true}; }
FnOracle log_fn()
{
  return {[](const Point3& p) { return std::log(p.x * p.x + p.y * p.y + p.t * p.t + 1.0); }, "ln", true};
}

TEST(ThetaGrid, ContainsHalf)
{
  const auto g = theta_grid(8);
  EXPECT_EQ(g.size(), 9u);
  EXPECT_NE(std::find(g.begin(), g.end(), 0.5), g.end());
  EXPECT_EQ(theta_grid(1), std::vector<double>{0.5});
  for (const double t : g) {
    EXPECT_GT(t, 0.0);
    EXPECT_LT(t, 1.0);
  }
}

TEST(HConvexFn, KoranyiNormHasNoWitness)
{
  EXPECT_FALSE(check_hconvex_fn(koranyi(), gallery("koranyi_ball", {{"r", {2.0}}}), 20000, 8, 1));
}

TEST(HConvexFn, AbsXHasNoWitness)
{
  const FnOracle f{[](const Point3& p) { return std::abs(p.x); }, "|x|"};
  EXPECT_FALSE(check_hconvex_fn(f, axis_box(3, 3, 3), 20000, 8, 2));
}

TEST(HConvexFn, LogFindsReplayableWitness)
{
  const auto w = check_hconvex_fn(log_fn(), axis_box(3, 3, 3), 100000, 8, 3);
  ASSERT_TRUE(w);
  EXPECT_GT(w->lhs, w->rhs);
  EXPECT_TRUE(replay_convexity(log_fn(), *w));
  // independent recomputation of both sides
  const auto f = log_fn();
  const Point3 end = group_mul(w->base, {w->v.a, w->v.b, 0});
  const Point3 mid = group_mul(w->base, {w->theta * w->v.a, w->theta * w->v.b, 0});
  EXPECT_GT(f(mid), (1 - w->theta) * f(w->base) + w->theta * f(end));
}

TEST(HQuasiconvexFn, LogHasNoWitness)
{
  EXPECT_FALSE(check_hquasiconvex_fn(log_fn(), axis_box(3, 3, 3), 20000, 8, 3));
}

TEST(HQuasiconvexFn, ConvexFunctionsPass)
{
  EXPECT_FALSE(check_hquasiconvex_fn(koranyi(), gallery("koranyi_ball", {{"r", {2.0}}}), 20000, 8, 4));
}

TEST(HQuasiconvexFn, CosineOnWideSlab)
{
  const FnOracle f{[](const Point3& p) { return std::cos(p.x); }, "cos x"};
  const ConvexityWitness hand{{-std::numbers::pi, 0, 0}, {2 * std::numbers::pi, 0}, 0.5, 1.0, -1.0};
  EXPECT_TRUE(replay_quasiconvexity(f, hand));
  const auto w = check_hquasiconvex_fn(f, axis_box(4, 1, 1), 20000, 8, 5);
  ASSERT_TRUE(w);
  EXPECT_TRUE(replay_quasiconvexity(f, *w));
}

TEST(HConvexFn, ThinDomainThrows)
{
  const SetOracle thin("thin", Box::centered(1, 1, 1), [](const Point3& p) { return p.t == 0.25; });
  EXPECT_THROW(check_hconvex_fn(koranyi(), thin, 10, 8, 1), SamplingError);
}

TEST(Homogeneity, KoranyiIsHomogeneous)
{
  const HomogeneityReport r = check_homogeneous(koranyi(), 10000, 6);
  EXPECT_TRUE(r.ok);
  EXPECT_LE(r.max_deviation, 1e-12);
  EXPECT_EQ(r.samples, 10000);
}

TEST(Homogeneity, EuclideanNormIsNot)
{
  const FnOracle e{[](const Point3& p) { return euclidean_norm(p); }, "euclidean"};
  const HomogeneityReport r = check_homogeneous(e, 1000, 6);
  EXPECT_FALSE(r.ok);
  EXPECT_GT(r.max_deviation, 0.01);
  // the spec instance: f(delta_2 (0,0,1)) = 4 while 2 f((0,0,1)) = 2
  EXPECT_NEAR(e(dilate(2.0, {0, 0, 1})), 4.0, 1e-15);
  // but it is homogeneous for Euclidean scaling
  EXPECT_TRUE(check_homogeneous(e, 1000, 6, {}, Box::centered(3, 3, 3), ScalingKind::euclidean).ok);
}

TEST(Subdiff, KoranyiAtIdentity)
{
  const FnOracle f = koranyi();
  EXPECT_TRUE(subdiff_contains(f, kIdentity, {0, 0}, 2000, 1.0, 7));
  EXPECT_TRUE(subdiff_contains(f, kIdentity, {1, 0}, 2000, 1.0, 7));
  const auto v = subdiff_violation(f, kIdentity, {1.1, 0}, 2000, 1.0, 7);
  ASSERT_TRUE(v);
  // f(exp v) = |v| < 1.1 v_1
  EXPECT_LT(std::hypot(v->a, v->b), 1.1 * v->a);
}

TEST(Subdiff, PersistenceAlongDilations)
{
  const FnOracle f = koranyi();
  const Point3 xi{1, 0, 0};
  EXPECT_TRUE(subdiff_contains(f, xi, {1, 0}, 2000, 1.0, 8));
  EXPECT_TRUE(subdiff_contains(f, dilate(3.0, xi), {1, 0}, 2000, 3.0, 8));
  EXPECT_FALSE(subdiff_contains(f, xi, {0.5, 0}, 2000, 1.0, 8));
  EXPECT_FALSE(subdiff_contains(f, dilate(3.0, xi), {0.5, 0}, 2000, 3.0, 8));
}

TEST(Subdiff, HorizontalGradient)
{
  // X = d/dx + 2y d/dt, Y = d/dy - 2x d/dt under this group law.
  const FnOracle t_fn{[](const Point3& p) { return p.t; }, "t"};
  const HVec g = horizontal_gradient(t_fn, {0.5, -0.25, 0});
  EXPECT_NEAR(g.a, 2 * -0.25, 1e-8);
  EXPECT_NEAR(g.b, -2 * 0.5, 1e-8);
}

TEST(SubdiffProperties, KoranyiHolds)
{
  const SubdiffReport r = subdiff_properties(koranyi(), 200, 9);
  EXPECT_TRUE(r.precondition_ok);
  EXPECT_GT(r.candidates, 0);
  EXPECT_TRUE(r.persistence_holds);
  EXPECT_TRUE(r.rotation_checked);
  EXPECT_TRUE(r.rotation_holds);
}

TEST(SubdiffProperties, NonHomogeneousPrecondition)
{
  const SubdiffReport r = subdiff_properties(log_fn(), 200, 9);
  EXPECT_FALSE(r.precondition_ok);
  EXPECT_NE(r.note.find("precondition failed"), std::string::npos);
}

}  // namespace
}  // namespace hconvex
