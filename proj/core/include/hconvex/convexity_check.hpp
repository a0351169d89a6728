#ifndef HCONVEX_CONVEXITY_CHECK_HPP_
#define HCONVEX_CONVEXITY_CHECK_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hconvex/set_model.hpp"

namespace hconvex {

/// Real-valued function on the group.
struct FnOracle
{
  std::function<double(const Point3&)> eval;
  std::string label;
  bool radial = false;  ///< f(O(x,y), t) = f(x,y,t) for rotations O

  double operator()(const Point3& p) const { return eval(p); }
};

/// f(base o exp(theta v)) = lhs > rhs + eps_eq.
struct ConvexityWitness
{
  Point3 base;
  HVec v;
  double theta = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
};

/// k/(grid+1) for k = 1..grid, with 1/2 inserted when absent.
std::vector<double> theta_grid(int grid);

/**
 * Falsifier for H-convexity of f on a domain: n horizontal pairs (xi, xi o exp v)
 * inside the domain, tested at theta_grid(grid). First violation in sample order.
 * Throws SamplingError if the domain yields no horizontal pair.
 */
std::optional<ConvexityWitness> check_hconvex_fn(const FnOracle& f,
                                                 const SetOracle& domain,
                                                 std::int64_t n,
                                                 int grid,
                                                 std::uint64_t seed,
                                                 const Tolerances& tol = {});

/// As check_hconvex_fn with max(f(xi), f(xi')) on the right; same samples for the same seed.
std::optional<ConvexityWitness> check_hquasiconvex_fn(const FnOracle& f,
                                                      const SetOracle& domain,
                                                      std::int64_t n,
                                                      int grid,
                                                      std::uint64_t seed,
                                                      const Tolerances& tol = {});

/// Re-evaluates a witness; true iff lhs > rhs + eps_eq still holds.
bool replay_convexity(const FnOracle& f, const ConvexityWitness& w, const Tolerances& tol = {});
bool replay_quasiconvexity(const FnOracle& f, const ConvexityWitness& w, const Tolerances& tol = {});

struct HomogeneityReport
{
  bool ok = true;
  /// max |f(scale(l, xi)) - l f(xi)| / ((1 + |f(xi)|) l)
  double max_deviation = 0.0;
  Point3 worst_point;
  double worst_lambda = 1.0;
  std::int64_t samples = 0;
};

/**
 * n samples of (lambda in (0,4], xi in box). ok iff every deviation is within
 * eps_eq. ScalingKind::euclidean tests f(l xi) = l f(xi) instead.
 */
HomogeneityReport check_homogeneous(const FnOracle& f,
                                    std::int64_t n,
                                    std::uint64_t seed,
                                    const Tolerances& tol = {},
                                    const Box& box = Box::centered(3, 3, 3),
                                    ScalingKind kind = ScalingKind::heisenberg);

/// A v with f(xi o exp v) < f(xi) + <p, v> - eps_eq, if one is found.
std::optional<HVec> subdiff_violation(const FnOracle& f,
                                      const Point3& xi,
                                      const HVec& p,
                                      std::int64_t n,
                                      double radius,
                                      std::uint64_t seed,
                                      const Tolerances& tol = {});

/// Semidecision for p in the horizontal subdifferential of f at xi.
bool subdiff_contains(const FnOracle& f,
                      const Point3& xi,
                      const HVec& p,
                      std::int64_t n,
                      double radius,
                      std::uint64_t seed,
                      const Tolerances& tol = {});

/// Central-difference estimate of (Xf, Yf) at xi.
HVec horizontal_gradient(const FnOracle& f, const Point3& xi, double h = 1e-5);

struct SubdiffFailure
{
  Point3 xi;
  HVec p;
  Point3 moved;  ///< dilated or rotated point
  HVec moved_p;
};

struct SubdiffReport
{
  bool precondition_ok = false;
  std::string note;
  std::int64_t candidates = 0;  ///< (xi, p) pairs that passed subdiff_contains
  bool persistence_holds = true;
  bool rotation_checked = false;
  bool rotation_holds = true;
  std::optional<SubdiffFailure> persistence_witness;
  std::optional<SubdiffFailure> rotation_witness;
};

/**
 * For homogeneous f: subgradients persist along dilation rays, and for radial
 * f rotate with the point. Candidate subgradients come from the horizontal
 * gradient and are kept only when subdiff_contains accepts them.
 */
SubdiffReport subdiff_properties(const FnOracle& f, std::int64_t n, std::uint64_t seed, const Tolerances& tol = {});

}  // namespace hconvex

#endif  // HCONVEX_CONVEXITY_CHECK_HPP_
