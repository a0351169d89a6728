#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "hconvex/ch_verifier.hpp"
#include "hconvex/errors.hpp"
#include "hconvex/gallery.hpp"

namespace hconvex {
namespace {

// Curve written out from the group law: delta_{1/s}((x0 + th a, y0 + th b, t0 + 2 th (a y0 - x0 b))).
Point3 curve_oracle(const Point3& xi0, const HVec& v, double tau, double theta)
{
  const double s = 1.0 + theta * (tau - 1.0);
  const Point3 q{xi0.x + theta * v.a, xi0.y + theta * v.b, xi0.t + 2.0 * theta * (v.a * xi0.y - xi0.x * v.b)};
  return {q.x / s, q.y / s, q.t / (s * s)};
}

void expect_near(const Point3& a, const Point3& b, double tol)
{
  EXPECT_NEAR(a.x, b.x, tol);
  EXPECT_NEAR(a.y, b.y, tol);
  EXPECT_NEAR(a.t, b.t, tol);
}

TEST(SolveTau, SelfConnection)
{
  const TauSolveResult r = solve_tau({1, 0, 1}, {1, 0, 1});
  ASSERT_EQ(r.roots.size(), 1u);
  EXPECT_NEAR(r.roots[0].tau, 1.0, 1e-15);
  EXPECT_NEAR(r.roots[0].v.a, 0.0, 1e-15);
  EXPECT_NEAR(r.roots[0].v.b, 0.0, 1e-15);
  EXPECT_FALSE(r.all_admissible);
}

TEST(SolveTau, DoubleRootFromBallProof)
{
  const double x0 = 0.8, t0 = 0.5, t = -0.3, r = 0.9;
  const double sin_th = std::sqrt(-t0 * t) / (x0 * r);
  const double cos_th = std::sqrt(1 - sin_th * sin_th);
  const TauSolveResult res = solve_tau({x0, 0, t0}, {r * cos_th, r * sin_th, t});
  ASSERT_GE(res.roots.size(), 1u);
  for (const auto& root : res.roots) {
    EXPECT_NEAR(root.tau, std::sqrt(t0 / -t), 1e-6);
  }
}

TEST(SolveTau, CrossTermOnly)
{
  EXPECT_TRUE(solve_tau({1, 0, 0}, {0, 1, 0}).roots.empty());
}

TEST(SolveTau, AllAdmissible)
{
  const TauSolveResult r = solve_tau({1, 0, 0}, {2, 0, 0});
  EXPECT_TRUE(r.all_admissible);
  ASSERT_EQ(r.roots.size(), std::size(kAdmissibleTauGrid));
  for (const auto& root : r.roots) {
    const Point3 end = group_mul({1, 0, 0}, {root.v.a, root.v.b, 0});
    expect_near(end, dilate(root.tau, {2, 0, 0}), 1e-12);
  }
}

TEST(SolveTau, RootsConnectEndpoints)
{
  Rng rng(21);
  int checked = 0;
  for (int i = 0; i < 2000; ++i) {
    const Point3 a = Box::centered(2, 2, 2).sample(rng);
    const Point3 b = Box::centered(2, 2, 2).sample(rng);
    for (const auto& root : solve_tau(a, b).roots) {
      ++checked;
      EXPECT_GT(root.tau, 0.0);
      EXPECT_NEAR(tau_residual(a, b, root.tau), 0.0, 1e-9 * (1 + root.tau * root.tau));
      expect_near(group_mul(a, {root.v.a, root.v.b, 0}), dilate(root.tau, b), 1e-9 * (1 + root.tau * root.tau));
    }
  }
  EXPECT_GT(checked, 500);
}

TEST(ChCurve, ConstantAndSegment)
{
  const Point3 xi0{0.3, -0.2, 0.7};
  for (const Point3& p : ch_curve(xi0, {0, 0}, 1.0, 11)) {
    EXPECT_EQ(p, xi0);
  }
  const HVec v{0.4, 0.9};
  const auto pts = ch_curve(xi0, v, 1.0, 11);
  for (int i = 0; i < 11; ++i) {
    const double th = i / 10.0;
    expect_near(pts[i], group_mul(xi0, {th * v.a, th * v.b, 0}), 1e-14);
  }
  EXPECT_EQ(tau_theta(1.0, 0.37), 1.0);
  EXPECT_THROW(ch_curve(xi0, v, 0.0, 11), PreconditionError);
  EXPECT_THROW(ch_curve(xi0, v, 1.0, 1), PreconditionError);
}

TEST(ChCurve, MatchesOracle)
{
  Rng rng(22);
  for (int i = 0; i < 500; ++i) {
    const Point3 xi0 = Box::centered(2, 2, 2).sample(rng);
    const HVec v{uniform(rng, -2, 2), uniform(rng, -2, 2)};
    const double tau = uniform(rng, 0.2, 4);
    const double th = uniform(rng, 0, 1);
    expect_near(ch_curve_point(xi0, v, tau, th), curve_oracle(xi0, v, tau, th), 1e-12);
  }
}

TEST(ChCurve, CylinderInstance)
{
  const double x0 = 0.5, beta = -0.5;
  const double tau = std::sqrt(1 - 2 * x0 * beta);
  EXPECT_NEAR(tau, std::sqrt(1.5), 1e-15);
  const Point3 xi0{x0, 0, 1};
  const HVec v{0, beta};
  // xi1 = delta_{1/tau}(xi0 o exp v) lies in the cylinder
  const Point3 xi1 = ch_curve_point(xi0, v, tau, 1.0);
  EXPECT_NEAR(xi1.t, 1.0, 1e-15);
  const auto pts = ch_curve(xi0, v, tau, 101);
  double best = 0;
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    EXPECT_GT(pts[i].t, 1.0);
    best = std::max(best, pts[i].t);
  }
  double oracle = 0;
  for (int i = 1; i < 100; ++i) {
    oracle = std::max(oracle, curve_oracle(xi0, v, tau, i / 100.0).t);
  }
  EXPECT_NEAR(best, oracle, 1e-13);
  EXPECT_NEAR(best, 1.0103103521218257, 1e-12);
}

TEST(CurveCases, Classification)
{
  const Point3 xi0{0.5, 0.25, 1};
  const double tau = 2;
  EXPECT_EQ(classify_curve(xi0, 0.1, 0.3, tau), CurveCase::i);
  EXPECT_EQ(classify_curve(xi0, 0.5, 0.3, tau), CurveCase::ii);
  EXPECT_EQ(classify_curve(xi0, 0.5, 0.25, tau), CurveCase::iii);
  EXPECT_THROW(ch_curve_cases(xi0, 0.1, 0.3, tau, 11, CurveCase::ii), PreconditionError);
  EXPECT_STREQ(to_string(CurveCase::iii), "iii");
}

TEST(CurveCases, CaseThreeClosedForm)
{
  const Point3 xi0{0.5, 0.25, 1};
  const double tau = 2;
  const CaseCurve c = ch_curve_cases(xi0, 0.5, 0.25, tau, 11, CurveCase::iii);
  for (std::size_t i = 0; i < c.s.size(); ++i) {
    const double s = c.s[i];
    expect_near(c.points[i], {0.5, 0.25, 1.0 / ((1 + s) * (1 + s))}, 1e-14);
    expect_near(c.points[i], curve_oracle(xi0, {0.5, 0.25}, tau, s), 1e-14);
  }
}

// Case i and ii points are reparametrizations: each lies on the theta curve.
TEST(CurveCases, PointsLieOnCurve)
{
  const Point3 xi0{0.5, 0.25, 1};
  const double tau = 1.5;
  for (const auto& [alpha, beta, which] : {std::tuple{0.1, -0.4, CurveCase::i}, std::tuple{0.25, -0.4, CurveCase::ii}}) {
    const CaseCurve c = ch_curve_cases(xi0, alpha, beta, tau, 21, which);
    for (const Point3& p : c.points) {
      // theta solved from the horizontal coordinate that moves
      const double s = which == CurveCase::i ? p.x : p.y;
      const double q0 = which == CurveCase::i ? xi0.x : xi0.y;
      const double d = which == CurveCase::i ? alpha : beta;
      const double theta = (s - q0) / (d - s * (tau - 1));
      expect_near(p, curve_oracle(xi0, {alpha, beta}, tau, theta), 1e-12);
    }
  }
}

TEST(Falsify, CylinderWitnessReplays)
{
  const SetOracle k = gallery("cylinder");
  const ChSearchResult r = falsify_ch(k, 100000, 101, 7);
  ASSERT_TRUE(r.witness);
  EXPECT_LT(r.pairs_tested, 10000);
  const ChWitness& w = *r.witness;
  EXPECT_TRUE(k.contains(w.xi0));
  EXPECT_TRUE(k.contains(w.xi1));
  EXPECT_FALSE(k.contains(w.escape_point));
  expect_near(group_mul(w.xi0, {w.v.a, w.v.b, 0}), dilate(w.tau, w.xi1), 1e-9);
  expect_near(curve_oracle(w.xi0, w.v, w.tau, w.theta_star), w.escape_point, 1e-12);
  EXPECT_TRUE(replay(w, k).ok);
}

TEST(Falsify, KoranyiAndHatHaveNoWitness)
{
  EXPECT_FALSE(falsify_ch(gallery("koranyi_ball"), 20000, 33, 1).witness);
  EXPECT_FALSE(falsify_ch(gallery("cylinder_hat"), 20000, 33, 1).witness);
}

TEST(Falsify, Preconditions)
{
  EXPECT_THROW(falsify_ch(gallery("slab_x"), 10, 33, 1), PreconditionError);
  EXPECT_THROW(falsify_ch(gallery("koranyi_ball"), 0, 33, 1), PreconditionError);
}

TEST(Falsify, UnitOnlyMatchesSetChecker)
{
  const SetOracle ball = gallery("koranyi_ball");
  const SetOracle k = set_union(translated(ball, {-2, 0, 0}), translated(ball, {2, 0, 0}));
  const AxiomReport ax = check_axioms(k, 20000, 4);
  const FalsifyOptions opts{TauFilter::unit_only, false};
  const ChSearchResult r = falsify_ch(k, 20000, kSegmentSamples, 4, {}, opts);
  ASSERT_TRUE(ax.hconvex_witness);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(r.witness->xi0, ax.hconvex_witness->base);
  EXPECT_EQ(r.witness->v, ax.hconvex_witness->v);
  EXPECT_EQ(r.witness->theta_star, ax.hconvex_witness->theta);
  EXPECT_EQ(r.witness->escape_point, ax.hconvex_witness->point);
  EXPECT_EQ(r.witness->tau, 1.0);
}

TEST(Replay, TransportByDilation)
{
  const SetOracle k = gallery("cylinder");
  const ChWitness w = *falsify_ch(k, 100000, 101, 3).witness;
  for (const double alpha : {0.5, 2.0}) {
    const ChWitness moved = transport(w, alpha);
    EXPECT_TRUE(replay(moved, dilated(k, alpha)).ok) << alpha;
    expect_near(moved.escape_point, ch_curve_point(moved.xi0, moved.v, moved.tau, moved.theta_star), 1e-12);
  }
}

TEST(Replay, RejectsTamperedWitness)
{
  const SetOracle k = gallery("cylinder");
  ChWitness w = *falsify_ch(k, 100000, 101, 3).witness;
  ChWitness bad = w;
  bad.v.a += 0.1;
  EXPECT_FALSE(replay(bad, k).ok);
  bad = w;
  bad.xi0.t = 5;
  EXPECT_EQ(replay(bad, k).reason, "endpoint outside K");
  bad = w;
  bad.theta_star = 0;
  EXPECT_FALSE(replay(bad, k).ok);
}

}  // namespace
}  // namespace hconvex
