#ifndef HCONVEX_HEISENBERG_HPP_
#define HCONVEX_HEISENBERG_HPP_

#include <optional>
#include <utility>

namespace hconvex {

/**
 * @brief Point of the first Heisenberg group in exponential coordinates.
 *
 * Group law
 * =========
 *   (x,y,t) o (x',y',t') = (x+x', y+y', t+t' + 2(x'y - xy'))
 *
 * Dilations
 * =========
 *   delta_l (x,y,t) = (l x, l y, l^2 t)
 *
 * x, y are horizontal coordinates and t the vertical one.
 */
struct Point3
{
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;

  friend bool operator==(const Point3&, const Point3&) = default;
};

/// Horizontal vector a X + b Y of the first layer V1.
struct HVec
{
  double a = 0.0;
  double b = 0.0;

  friend bool operator==(const HVec&, const HVec&) = default;
};

inline constexpr Point3 kIdentity{};

struct Tolerances
{
  double eps_geom = 1e-7;  ///< membership / boundary slack
  double eps_eq = 1e-9;    ///< equality of reals
  int max_iter = 60;       ///< bisection cap

  /// Throws PreconditionError unless eps_geom >= eps_eq > 0 and max_iter > 0.
  void validate() const;
};

bool is_finite(const Point3& p);

Point3 group_mul(const Point3& p, const Point3& q);
Point3 group_inv(const Point3& p);

/// Anisotropic dilation; lambda must be non-negative.
Point3 dilate(double lambda, const Point3& p);

/// exp(a X + b Y) = (a, b, 0).
Point3 exp_h(const HVec& v);

/// Point reached from p by one horizontal step: p o exp(v).
Point3 step(const Point3& p, const HVec& v);

/**
 * If q lies on the horizontal plane of p, returns the v with q = p o exp(v).
 *
 * Plane membership is tested with absolute slack eps_geom scaled by
 * (1 + |p|_E + |q|_E).
 */
std::optional<HVec> horizontal_reach(const Point3& p, const Point3& q, const Tolerances& tol = {});

/// Vertical offset of q from the horizontal plane through p (zero iff q is in H_p).
double plane_offset(const Point3& p, const Point3& q);

enum class NormKind
{
  koranyi,
  quasi,
  euclidean,
};

double norm(const Point3& p, NormKind kind);

inline double koranyi_norm(const Point3& p) { return norm(p, NormKind::koranyi); }
inline double quasi_norm(const Point3& p) { return norm(p, NormKind::quasi); }
inline double euclidean_norm(const Point3& p) { return norm(p, NormKind::euclidean); }

double horizontal_norm(const Point3& p);
double euclidean_norm(const HVec& v);
double dot(const HVec& u, const HVec& v);

/// Horizontal line {base o exp(s d)} with unit Euclidean direction d.
class HorizontalLine
{
public:
  /// Normalizes direction; throws PreconditionError for a zero direction.
  HorizontalLine(const Point3& base, const HVec& direction);

  static HorizontalLine through_identity(const HVec& direction)
  {
    return HorizontalLine(kIdentity, direction);
  }

  const Point3& base() const { return base_; }
  const HVec& direction() const { return direction_; }
  Point3 point_at(double s) const;

private:
  Point3 base_;
  HVec direction_;
};

/// pi_r(p) and pi_r^perp(p), with p = pi_r^perp(p) o pi_r(p).
struct Projection
{
  Point3 along;
  Point3 transverse;
};

/// r must pass through e; throws PreconditionError otherwise.
Projection proj_pair(const HorizontalLine& r, const Point3& p, const Tolerances& tol = {});

/**
 * Membership in the open intrinsic cone C(vertex, L_vertex(r), alpha, h):
 *   |pi_r^perp(q)|_q < alpha |pi_r(q)|_q < alpha h,  q = vertex^-1 o p.
 * Both strict inequalities carry an eps_eq margin. The axis r passes through e.
 */
bool cone_contains(const Point3& vertex,
                   const HorizontalLine& axis,
                   double alpha,
                   double h,
                   const Point3& p,
                   const Tolerances& tol = {});

}  // namespace hconvex

#endif  // HCONVEX_HEISENBERG_HPP_
