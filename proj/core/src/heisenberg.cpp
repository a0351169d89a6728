#include "hconvex/heisenberg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hconvex/errors.hpp"

namespace hconvex {

void Tolerances::validate() const
{
  if (!(eps_eq > 0.0) || !(eps_geom >= eps_eq) || max_iter <= 0) {
    throw PreconditionError("tolerances require eps_geom >= eps_eq > 0 and max_iter > 0");
  }
}

bool is_finite(const Point3& p)
{
  return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.t);
}

Point3 group_mul(const Point3& p, const Point3& q)
{
  return {p.x + q.x, p.y + q.y, p.t + q.t + 2.0 * (q.x * p.y - p.x * q.y)};
}

Point3 group_inv(const Point3& p) { return {-p.x, -p.y, -p.t}; }

Point3 dilate(double lambda, const Point3& p)
{
  if (!(lambda >= 0.0)) {
    throw PreconditionError("dilate: lambda must be non-negative, got " + std::to_string(lambda));
  }
  return {lambda * p.x, lambda * p.y, lambda * lambda * p.t};
}

Point3 exp_h(const HVec& v) { return {v.a, v.b, 0.0}; }

Point3 step(const Point3& p, const HVec& v) { return group_mul(p, exp_h(v)); }

double plane_offset(const Point3& p, const Point3& q)
{
  return q.t - (p.t + 2.0 * p.y * q.x - 2.0 * p.x * q.y);
}

std::optional<HVec> horizontal_reach(const Point3& p, const Point3& q, const Tolerances& tol)
{
  const double scale = 1.0 + euclidean_norm(p) + euclidean_norm(q);
  if (std::abs(plane_offset(p, q)) > tol.eps_geom * scale) {
    return std::nullopt;
  }
  return HVec{q.x - p.x, q.y - p.y};
}

double horizontal_norm(const Point3& p) { return std::hypot(p.x, p.y); }

double norm(const Point3& p, NormKind kind)
{
  switch (kind) {
    case NormKind::koranyi: {
      const double r2 = p.x * p.x + p.y * p.y;
      return std::sqrt(std::sqrt(r2 * r2 + p.t * p.t));
    }
    case NormKind::quasi:
      return std::max(horizontal_norm(p), std::sqrt(std::abs(p.t)));
    case NormKind::euclidean:
      return std::sqrt(p.x * p.x + p.y * p.y + p.t * p.t);
  }
  return 0.0;
}

double euclidean_norm(const HVec& v) { return std::hypot(v.a, v.b); }

double dot(const HVec& u, const HVec& v) { return u.a * v.a + u.b * v.b; }

HorizontalLine::HorizontalLine(const Point3& base, const HVec& direction) : base_(base)
{
  const double len = euclidean_norm(direction);
  if (!(len > 0.0) || !std::isfinite(len)) {
    throw PreconditionError("horizontal line needs a non-zero finite direction");
  }
  direction_ = {direction.a / len, direction.b / len};
}

Point3 HorizontalLine::point_at(double s) const
{
  return step(base_, {s * direction_.a, s * direction_.b});
}

Projection proj_pair(const HorizontalLine& r, const Point3& p, const Tolerances& tol)
{
  if (euclidean_norm(r.base()) > tol.eps_eq) {
    throw PreconditionError("proj_pair: the line must pass through e");
  }
  const HVec& d = r.direction();
  const double s = d.a * p.x + d.b * p.y;
  const Point3 along{s * d.a, s * d.b, 0.0};
  return {along, group_mul(p, group_inv(along))};
}

bool cone_contains(const Point3& vertex,
                   const HorizontalLine& axis,
                   double alpha,
                   double h,
                   const Point3& p,
                   const Tolerances& tol)
{
  if (!(alpha > 0.0) || !(h > 0.0)) {
    throw PreconditionError("cone_contains: aperture and height must be positive");
  }
  const Point3 q = group_mul(group_inv(vertex), p);
  const auto [along, transverse] = proj_pair(axis, q, tol);
  const double axial = alpha * quasi_norm(along);
  return quasi_norm(transverse) < axial - tol.eps_eq && axial < alpha * h - tol.eps_eq;
}

}  // namespace hconvex
