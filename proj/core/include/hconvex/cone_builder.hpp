#ifndef HCONVEX_CONE_BUILDER_HPP_
#define HCONVEX_CONE_BUILDER_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "hconvex/convexity_check.hpp"
#include "hconvex/gallery.hpp"
#include "hconvex/set_model.hpp"

namespace hconvex {

/**
 * f(xi) = min{tau >= 0 : xi in scale(tau, K)} for a set K that passed
 * assumptions a and b. Immutable; evaluation is reentrant.
 */
class ConeFunction
{
public:
  /// Runs check_axioms(K, axiom_samples, seed) and throws PreconditionError unless a and b hold.
  static ConeFunction build(SetOracle k,
                            ScalingKind kind = ScalingKind::heisenberg,
                            const Tolerances& tol = {},
                            std::int64_t axiom_samples = 2000,
                            std::uint64_t seed = 0);

  double operator()(const Point3& xi) const { return bracket(xi).value(); }
  GaugeBracket bracket(const Point3& xi) const { return dilation_bracket(source_, kind_, xi, tol_); }
  FnOracle as_function() const;

  const SetOracle& source() const { return source_; }
  ScalingKind kind() const { return kind_; }
  const Tolerances& tol() const { return tol_; }
  const AxiomReport& axioms() const { return axioms_; }

private:
  ConeFunction(SetOracle k, ScalingKind kind, const Tolerances& tol, AxiomReport axioms);

  SetOracle source_;
  ScalingKind kind_;
  Tolerances tol_;
  AxiomReport axioms_;
};

inline double cone_eval(const ConeFunction& c, const Point3& xi) { return c(xi); }

/// xi in scale(tau1, K) but not in scale(tau2, K) with tau1 < tau2.
struct NestingWitness
{
  double tau1 = 0.0;
  double tau2 = 0.0;
  Point3 xi;
};

struct FamilyReport
{
  bool axiom_I = true;    ///< every sampled point has a finite value
  bool axiom_II = true;   ///< the family is nested
  bool axiom_III = true;  ///< xi in scale(tau* + eps, K) for shrinking eps
  std::optional<NestingWitness> nesting_witness;
  std::optional<Point3> closedness_witness;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  std::string note;

  bool passed() const { return axiom_I && axiom_II && axiom_III; }
};

/**
 * Level-family axioms of {scale(tau, K)}. Works on any oracle, including ones
 * that fail assumption b; those are the sets for which II fails.
 */
FamilyReport family_axioms_check(const SetOracle& k,
                                 ScalingKind kind,
                                 std::int64_t n,
                                 std::uint64_t seed,
                                 const Tolerances& tol = {});

FamilyReport family_axioms_check(const ConeFunction& c, std::int64_t n, std::uint64_t seed);

/// True iff xi in scale(tau1, K) and xi not in scale(tau2, K), evaluated exactly as the checker does.
bool replay_nesting(const SetOracle& k, ScalingKind kind, const NestingWitness& w);

struct ValidationReport
{
  HomogeneityReport homogeneity;
  std::optional<ConvexityWitness> witness;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;

  bool falsified() const { return !homogeneity.ok || witness.has_value(); }
  std::string verdict() const;
};

/**
 * Homogeneity (in the sense of the cone's scaling kind) and H-convexity of the
 * cone function on scale(2, K), n samples each.
 */
ValidationReport cone_validate(const ConeFunction& c, std::int64_t n, std::uint64_t seed, int grid = 8);

/// Known closed form of the cone function of a gallery set, when one exists.
std::optional<FnOracle> gallery_closed_form(std::string_view name,
                                            const GalleryParams& params = {},
                                            ScalingKind kind = ScalingKind::heisenberg);

/// Cone function of the Euclidean ball of radius R under anisotropic dilations.
double euclidean_ball_cone(const Point3& p, double radius = 1.0);

/// max(|(x,y)|, |xi|_G / 2)
double cylinder_hat_cone(const Point3& p);

/// scale(alpha, K) for the given scaling kind.
SetOracle scaled(const SetOracle& k, ScalingKind kind, double alpha);

}  // namespace hconvex

#endif  // HCONVEX_CONE_BUILDER_HPP_
