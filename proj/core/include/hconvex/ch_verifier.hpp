#ifndef HCONVEX_CH_VERIFIER_HPP_
#define HCONVEX_CH_VERIFIER_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hconvex/set_model.hpp"

namespace hconvex {

/// tau > 0 with xi0 o exp(v) = delta_tau xi1.
struct TauSolution
{
  double tau = 0.0;
  HVec v;
  double discriminant = 0.0;
};

struct TauSolveResult
{
  std::vector<TauSolution> roots;
  /// t0 = t1 = 0 and zero cross term: every tau connects; roots holds the probe grid.
  bool all_admissible = false;
};

/// Probe grid used when every tau is admissible.
inline constexpr double kAdmissibleTauGrid[] = {0.25, 0.5, 1.0, 2.0, 4.0};

/**
 * Positive roots of t1 tau^2 + 2(x0 y1 - x1 y0) tau - t0 = 0, each with
 * v = (tau x1 - x0, tau y1 - y0). A slightly negative discriminant (relative
 * eps_eq) is clamped to a double root.
 */
TauSolveResult solve_tau(const Point3& xi0, const Point3& xi1, const Tolerances& tol = {});

/// t1 tau^2 + 2(x0 y1 - x1 y0) tau - t0
double tau_residual(const Point3& xi0, const Point3& xi1, double tau);

/// 1 + theta (tau - 1); exactly 1 when tau = 1.
double tau_theta(double tau, double theta);

/// delta_{1/tau_theta}(xi0 o exp(theta v)).
Point3 ch_curve_point(const Point3& xi0, const HVec& v, double tau, double theta);

/// m points at theta = i/(m-1). Throws PreconditionError unless tau > 0 and m >= 2.
std::vector<Point3> ch_curve(const Point3& xi0, const HVec& v, double tau, int m);

enum class CurveCase
{
  i,    ///< x0 (tau-1) != alpha
  ii,   ///< x0 (tau-1) = alpha, y0 (tau-1) != beta
  iii,  ///< both equal
};

const char* to_string(CurveCase c);

CurveCase classify_curve(const Point3& xi0, double alpha, double beta, double tau, const Tolerances& tol = {});

struct CaseCurve
{
  CurveCase which = CurveCase::i;
  std::vector<double> s;
  std::vector<Point3> points;
};

/**
 * Closed-form parametrizations of the curve, m samples of s:
 *   i    s = x over [x0, (x0+alpha)/tau]
 *   ii   s = y over [y0, (y0+beta)/tau], x = x0
 *   iii  s over [0, 1]: (x0, y0, t0 / (1 + s(tau-1))^2)
 * Throws PreconditionError if `expected` is given and differs from the classification.
 */
CaseCurve ch_curve_cases(const Point3& xi0,
                         double alpha,
                         double beta,
                         double tau,
                         int m,
                         std::optional<CurveCase> expected = std::nullopt,
                         const Tolerances& tol = {});

/// Single point of the closed form for case `which` at parameter s.
Point3 ch_case_point(CurveCase which, const Point3& xi0, double alpha, double beta, double tau, double s);

/// Certified violation of condition (C_H).
struct ChWitness
{
  Point3 xi0;
  Point3 xi1;
  double tau = 0.0;
  HVec v;
  double theta_star = 0.0;
  Point3 escape_point;
  double margin = 0.0;
};

enum class TauFilter
{
  all,        ///< every positive root of solve_tau
  unit_only,  ///< tau = 1 only; the search reduces to the H-convex set check
};

struct FalsifyOptions
{
  TauFilter taus = TauFilter::all;
  /// Run check_axioms first and throw PreconditionError unless a and b hold.
  bool check_preconditions = true;
  std::int64_t precondition_samples = 1000;
};

struct ChSearchResult
{
  std::optional<ChWitness> witness;
  std::int64_t pairs_tested = 0;
};

/**
 * Samples pairs of K (half uniform, a quarter near the boundary, a quarter with
 * one point at a vertical extreme), solves for tau, and tests m curve points
 * per root. The first escape with clearance >= witness_clearance wins; the
 * result is independent of thread count. With TauFilter::unit_only the pairs
 * and theta grid are those of check_axioms part c.
 */
ChSearchResult falsify_ch(const SetOracle& k,
                          std::int64_t budget,
                          int m,
                          std::uint64_t seed,
                          const Tolerances& tol = {},
                          const FalsifyOptions& options = {});

struct ReplayResult
{
  bool ok = false;
  double margin = 0.0;
  std::string reason;
};

/// Checks a witness from its stored fields alone.
ReplayResult replay(const ChWitness& w, const SetOracle& k, const Tolerances& tol = {});

/// The witness data pushed through delta_alpha; a witness for delta_alpha K.
ChWitness transport(const ChWitness& w, double alpha);

struct RadialNecessityReport
{
  bool thm_i = true;
  std::optional<Point3> thm_i_witness;  ///< in B_G(e, r0), not in K
  bool thm_ii = true;
  std::optional<Point3> thm_ii_witness;  ///< (r, 0, 0) outside K with r reached at some height
  std::optional<Point3> thm_ii_source;   ///< (r, 0, t) in K
  double r_zero = 0.0;                   ///< boundary radius at t = 0
  double r_max = 0.0;                    ///< largest radius over all heights
  std::int64_t caps_checked = 0;
  std::int64_t solids_checked = 0;
};

/**
 * Necessary conditions for a radial set generating an H-convex family:
 *   i   the Koranyi ball through the t = 0 boundary radius lies in K
 *   ii  no height reaches a larger radius than t = 0
 * n sets the grid resolution. seed only drives the interior probe of part i.
 */
RadialNecessityReport radial_necessary(const RadialProfile& profile,
                                       std::int64_t n,
                                       std::uint64_t seed,
                                       const Tolerances& tol = {});

/// phi(r) = (t0 + sqrt(t0^2 + 4 r0^2 r^2 - 4 r^4)) / 2; mirrored through t = 0 for t0 < 0.
double solid_height(double r, double r0, double t0);

/// psi(r) = sqrt(r0^4 + t0^2 - r^4)
double cap_height(double r, double r0, double t0);

struct EnvelopeReport
{
  bool solid_holds = true;
  bool cap_holds = true;
  std::optional<Point3> solid_witness;
  std::optional<Point3> cap_witness;
  double solid_margin = 0.0;  ///< min over samples of 1 - gauge_K
  double cap_margin = 0.0;
  std::int64_t solids_checked = 0;
  std::int64_t caps_checked = 0;
};

/**
 * Samples the solid of revolution of xi0 (radii in [r0/sqrt 2, r0] at height
 * phi) and the Koranyi cap over xi0 (profile psi on [0, r0]) and checks that
 * both lie in K. A sample counts as a violation only when it is outside K with
 * witness_clearance. Throws PreconditionError unless xi0 in K, t0 != 0, r0 > 0.
 */
EnvelopeReport envelope_check(const SetOracle& k, const Point3& xi0, std::int64_t n, const Tolerances& tol = {});

}  // namespace hconvex

#endif  // HCONVEX_CH_VERIFIER_HPP_
