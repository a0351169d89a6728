#include <cmath>

#include <gtest/gtest.h>

#include "hconvex/ch_verifier.hpp"
#include "hconvex/errors.hpp"
#include "hconvex/gallery.hpp"

namespace hconvex {
namespace {

const RadialProfile& profile_of(const SetOracle& k) { return *k.profile(); }

TEST(RadialNecessary, KoranyiBallPasses)
{
  const RadialNecessityReport r = radial_necessary(profile_of(gallery("koranyi_ball")), 256, 1);
  EXPECT_TRUE(r.thm_i);
  EXPECT_TRUE(r.thm_ii);
  EXPECT_NEAR(r.r_zero, 1.0, 1e-6);
  EXPECT_NEAR(r.r_max, 1.0, 1e-6);
}

TEST(RadialNecessary, CylinderAndHatPass)
{
  EXPECT_TRUE(radial_necessary(profile_of(gallery("cylinder")), 256, 1).thm_ii);
  EXPECT_TRUE(radial_necessary(profile_of(gallery("cylinder")), 256, 1).thm_i);
  const RadialNecessityReport hat = radial_necessary(profile_of(gallery("cylinder_hat")), 256, 1);
  EXPECT_TRUE(hat.thm_i);
  EXPECT_TRUE(hat.thm_ii);
}

TEST(RadialNecessary, ImportanteFailsSecond)
{
  const double c = std::pow(std::pow(1.0 + std::pow(2.0, 0.25), 4) - 1.5, 0.25);
  const RadialNecessityReport r = radial_necessary(profile_of(gallery("importante")), 512, 1);
  EXPECT_FALSE(r.thm_ii);
  ASSERT_TRUE(r.thm_ii_witness);
  EXPECT_NEAR(r.thm_ii_witness->x, c, 1e-3);
  EXPECT_NEAR(r.thm_ii_witness->y, 0.0, 1e-12);
  EXPECT_NEAR(r.thm_ii_witness->t, 0.0, 1e-12);
  ASSERT_TRUE(r.thm_ii_source);
  EXPECT_TRUE(gallery("importante").contains(*r.thm_ii_source));
  EXPECT_FALSE(gallery("importante").contains(*r.thm_ii_witness));
}

TEST(RadialNecessary, EuclideanBallFailsFirst)
{
  const RadialNecessityReport r = radial_necessary(profile_of(gallery("euclidean_ball")), 256, 1);
  EXPECT_FALSE(r.thm_i);
  ASSERT_TRUE(r.thm_i_witness);
  EXPECT_LE(koranyi_norm(*r.thm_i_witness), 1.0);
  EXPECT_GT(euclidean_norm(*r.thm_i_witness), 1.0);
}

TEST(Envelope, Identities)
{
  Rng rng(31);
  for (int i = 0; i < 1000; ++i) {
    const double r0 = uniform(rng, 0.1, 2);
    const double t0 = uniform(rng, -2, 2);
    EXPECT_NEAR(solid_height(r0, r0, t0), t0, 1e-9);
    const double r = uniform(rng, 0, r0);
    const double psi = cap_height(r, r0, t0);
    EXPECT_NEAR(std::pow(r, 4) + psi * psi, std::pow(r0, 4) + t0 * t0, 1e-9);
  }
}

TEST(Envelope, SolidMaximum)
{
  // phi peaks at r0 / sqrt 2 with value (t0 + sqrt(t0^2 + r0^4)) / 2
  const double r0 = 0.9, t0 = 0.9;
  const double peak = 0.5 * (t0 + std::sqrt(t0 * t0 + std::pow(r0, 4)));
  EXPECT_NEAR(solid_height(r0 / std::sqrt(2.0), r0, t0), peak, 1e-12);
  EXPECT_NEAR(peak, 1.055413082118317, 1e-12);
  EXPECT_LT(solid_height(0.8, r0, t0), peak);
  EXPECT_NEAR(solid_height(r0 / std::sqrt(2.0), r0, -t0), -peak, 1e-12);
}

TEST(Envelope, KoranyiCapOnSphere)
{
  const SetOracle k = gallery("koranyi_ball");
  const double r0 = 0.8;
  const double t0 = std::sqrt(1 - std::pow(r0, 4));
  const EnvelopeReport e = envelope_check(k, {r0, 0, t0}, 64);
  EXPECT_TRUE(e.cap_holds);
  EXPECT_TRUE(e.solid_holds);
  EXPECT_GE(e.cap_margin, -1e-7);
  EXPECT_LE(e.cap_margin, 1e-6);
}

TEST(Envelope, CylinderSolidEscapes)
{
  const SetOracle k = gallery("cylinder");
  const EnvelopeReport e = envelope_check(k, {0.9, 0, 0.9}, 64);
  EXPECT_FALSE(e.solid_holds);
  ASSERT_TRUE(e.solid_witness);
  EXPECT_GT(e.solid_witness->t, 1.0);
  EXPECT_FALSE(k.contains(*e.solid_witness));
}

TEST(Envelope, Preconditions)
{
  const SetOracle k = gallery("cylinder");
  EXPECT_THROW(envelope_check(k, {0.5, 0, 0}, 16), PreconditionError);
  EXPECT_THROW(envelope_check(k, {0, 0, 0.5}, 16), PreconditionError);
  EXPECT_THROW(envelope_check(k, {0.5, 0, 3}, 16), PreconditionError);
}

}  // namespace
}  // namespace hconvex
