#ifndef HCONVEX_SET_MODEL_HPP_
#define HCONVEX_SET_MODEL_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hconvex/heisenberg.hpp"
#include "hconvex/random.hpp"

namespace hconvex {

/// Axis-aligned box in (x, y, t).
struct Box
{
  Point3 lo;
  Point3 hi;

  bool contains(const Point3& p) const
  {
    return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y && p.t >= lo.t && p.t <= hi.t;
  }
  Point3 extent() const { return {hi.x - lo.x, hi.y - lo.y, hi.t - lo.t}; }
  /// Diagonal of the horizontal footprint.
  double horizontal_diameter() const;
  /// Largest |coordinate| on any face, used to cap dilation brackets.
  double reach() const;
  Point3 sample(Rng& rng) const;

  static Box centered(double half_x, double half_y, double half_t)
  {
    return {{-half_x, -half_y, -half_t}, {half_x, half_y, half_t}};
  }
};

/// Profile of a radial set in the half-plane r >= 0.
struct RadialProfile
{
  std::function<bool(double, double)> inside;
  double r_max = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;

  /// False outside [0, r_max] x [t_lo, t_hi] regardless of `inside`.
  bool contains(double r, double t) const
  {
    if (r < 0.0 || r > r_max || t < t_lo || t > t_hi) {
      return false;
    }
    return inside(r, t);
  }
};

/**
 * Compact candidate set K given as a membership predicate.
 *
 * contains() is false outside bbox(). Closed sets are modelled with an
 * eps_geom slack baked into the predicate by the constructors in gallery.hpp.
 */
class SetOracle
{
public:
  using Predicate = std::function<bool(const Point3&)>;

  SetOracle(std::string label, Box bbox, Predicate inside, bool compact = true);

  bool contains(const Point3& p) const { return bbox_.contains(p) && inside_(p); }
  bool operator()(const Point3& p) const { return contains(p); }

  const std::string& label() const { return label_; }
  const Box& bbox() const { return bbox_; }
  /// False for sets whose bbox is an artificial truncation.
  bool compact() const { return compact_; }
  bool is_radial() const { return profile_.has_value(); }
  const std::optional<RadialProfile>& profile() const { return profile_; }

  SetOracle with_profile(RadialProfile profile) const;
  SetOracle relabeled(std::string label) const;

private:
  std::string label_;
  Box bbox_;
  Predicate inside_;
  bool compact_;
  std::optional<RadialProfile> profile_;
};

/// contains(x,y,t) iff profile.contains(|(x,y)|, t).
SetOracle radial_to_oracle(RadialProfile profile, std::string label = "radial");

/// delta_alpha K.
SetOracle dilated(const SetOracle& k, double alpha);
/// L_c K = {c o p : p in K}.
SetOracle translated(const SetOracle& k, const Point3& c);
SetOracle set_union(const SetOracle& a, const SetOracle& b);
/// |x| <= half_x, |y| <= half_y, |t| <= half_t.
SetOracle axis_box(double half_x, double half_y, double half_t);

/// How a ray from e is parametrized.
enum class ScalingKind
{
  heisenberg,  ///< delta_lambda
  euclidean,   ///< lambda * p
};

Point3 scale(ScalingKind kind, double lambda, const Point3& p);

/// Uniform point of K by rejection from the bbox; nullopt after max_tries.
std::optional<Point3> sample_inside(const SetOracle& k, Rng& rng, int max_tries = 20000);
Point3 sample_inside_or_throw(const SetOracle& k, Rng& rng, int max_tries = 20000);

/**
 * Probe radius at which p is certified outside K: p and its six axis
 * neighbours at every radius eps_geom/8 * 2^j up to the returned value lie
 * outside. 0 when p itself is inside.
 */
double outside_clearance(const SetOracle& k, const Point3& p, const Tolerances& tol);

/// Minimum clearance for a reported escape point.
inline double witness_clearance(const Tolerances& tol) { return 16.0 * tol.eps_geom; }

/// Number of theta samples (endpoints included) on segment and curve checks.
inline constexpr int kSegmentSamples = 33;

/// p in K and q = p o exp(v) in K.
struct HorizontalPair
{
  Point3 p;
  Point3 q;
  HVec v;
};

/**
 * Samples p in K and a horizontal v with uniform direction and log-uniform
 * length in [1e-3, diameter], accepting when p o exp(v) is in K. The returned
 * v is re-derived from (p, q) by horizontal_reach.
 */
std::optional<HorizontalPair> sample_horizontal_pair(const SetOracle& k,
                                                     Rng& rng,
                                                     const Tolerances& tol,
                                                     int max_tries = 20000);

/// Shared engine for sample `index` of the horizontal-pair stream.
inline Rng horizontal_pair_rng(std::uint64_t seed, std::uint64_t index)
{
  return stream_rng(seed, Stream::horizontal_pair, index);
}

struct SegmentEscape
{
  double theta = 0.0;
  Point3 point;
  double margin = 0.0;
};

/// First theta = j/(m-1), 0 < j < m-1, with p o exp(theta v) outside K by witness_clearance.
std::optional<SegmentEscape> first_segment_escape(const SetOracle& k,
                                                  const Point3& p,
                                                  const HVec& v,
                                                  int m,
                                                  const Tolerances& tol);

struct DilationFailure
{
  Point3 point;  ///< in K
  double tau;    ///< scale(tau, point) not in K
};

struct SegmentWitness
{
  Point3 base;
  HVec v;
  double theta = 0.0;
  Point3 point;
  double margin = 0.0;
};

struct AxiomReport
{
  bool compact = false;
  bool e_interior = false;
  bool a_holds = false;
  bool b_holds = false;
  std::optional<DilationFailure> b_witness;
  std::optional<SegmentWitness> hconvex_witness;
  std::int64_t samples_used = 0;
  std::uint64_t seed = 0;
  std::string note;

  bool c_holds() const { return !hconvex_witness.has_value(); }
};

/**
 * Samples assumptions a (compact, e interior), b (scale(tau, K) inside K for
 * tau in (0,1)) and c (H-convexity). n samples each for b and c; the first
 * failure in sample order is recorded.
 */
AxiomReport check_axioms(const SetOracle& k,
                         std::int64_t n,
                         std::uint64_t seed,
                         const Tolerances& tol = {},
                         ScalingKind kind = ScalingKind::heisenberg);

/// Bracket [lo, hi] of min{tau : scale(1/tau, xi) in K}; hi is a member, lo is not.
struct GaugeBracket
{
  double lo = 0.0;
  double hi = 0.0;

  double value() const { return 0.5 * (lo + hi); }
};

/**
 * Exponential bracketing from tau = 1, then bisection to floating resolution
 * (at most tol.max_iter steps). Values below eps_geom snap to the vertex {0,0}.
 * Throws BracketingError when tau exceeds reach * 2^32.
 */
GaugeBracket dilation_bracket(const SetOracle& k,
                              ScalingKind kind,
                              const Point3& xi,
                              const Tolerances& tol = {});

/// n points of K within a bisection bracket of the boundary, along dilation rays from e.
std::vector<Point3> boundary_sample(const SetOracle& k,
                                    std::int64_t n,
                                    std::uint64_t seed,
                                    const Tolerances& tol = {});

/// Last point of K on the vertical ray from p (in K) towards sign(direction) * infinity.
Point3 vertical_extreme(const SetOracle& k, const Point3& p, double direction, const Tolerances& tol);

}  // namespace hconvex

#endif  // HCONVEX_SET_MODEL_HPP_
