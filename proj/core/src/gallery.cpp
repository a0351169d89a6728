#include "hconvex/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hconvex/errors.hpp"

namespace hconvex {

namespace {

double param(const GalleryParams& params, std::string_view key, double fallback)
{
  const auto it = params.find(key);
  if (it == params.end()) {
    return fallback;
  }
  if (it->second.size() != 1) {
    throw PreconditionError("gallery parameter '" + std::string(key) + "' must be a single number");
  }
  return it->second.front();
}

void require_known(std::string_view name, const GalleryParams& params, std::initializer_list<std::string_view> keys)
{
  for (const auto& [key, value] : params) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw PreconditionError("gallery set '" + std::string(name) + "' has no parameter '" + key + "'");
    }
  }
}

double positive(std::string_view name, double v)
{
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw PreconditionError("gallery parameter '" + std::string(name) + "' must be positive and finite");
  }
  return v;
}

double koranyi_rt(double r, double t)
{
  const double r2 = r * r;
  return std::sqrt(std::sqrt(r2 * r2 + t * t));
}

double segment_distance(double px, double py, const std::array<double, 2>& a, const std::array<double, 2>& b)
{
  const double dx = b[0] - a[0];
  const double dy = b[1] - a[1];
  const double len2 = dx * dx + dy * dy;
  double s = len2 > 0.0 ? ((px - a[0]) * dx + (py - a[1]) * dy) / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return std::hypot(px - (a[0] + s * dx), py - (a[1] + s * dy));
}

}  // namespace

const std::vector<std::string>& gallery_names()
{
  static const std::vector<std::string> names{"koranyi_ball", "euclidean_ball", "cylinder", "cylinder_hat",
                                              "importante",   "slab_x",         "radial_custom"};
  return names;
}

const ImportanteConstants& importante_constants()
{
  static const ImportanteConstants k = [] {
    const double big = std::pow(1.0 + std::pow(2.0, 0.25), 4);
    ImportanteConstants out{};
    out.c0 = std::pow(big - 2.0, 0.25);
    out.c = std::pow(big - 1.5, 0.25);
    out.xi_bar = {out.c, 0.0, 1.5 * std::numbers::pi};
    out.xi_bar_norm = koranyi_norm(out.xi_bar);
    return out;
  }();
  return k;
}

double importante_f1(const Point3& p)
{
  const double r2 = p.x * p.x + p.y * p.y;
  return std::pow(r2 * r2 + 2.0 + 0.5 * std::sin(p.t), 0.25) - std::pow(2.0, 0.25);
}

double importante_level(const Point3& p)
{
  return std::max(importante_f1(p), koranyi_norm(p) / importante_constants().xi_bar_norm);
}

RadialProfile polygon_profile(std::span<const std::array<double, 2>> vertices, double slack)
{
  if (vertices.size() < 3) {
    throw PreconditionError("radial_custom needs at least three (r, t) vertices");
  }
  double r_max = 0.0;
  double t_lo = vertices.front()[1];
  double t_hi = t_lo;
  for (const auto& v : vertices) {
    if (v[0] < 0.0 || !std::isfinite(v[0]) || !std::isfinite(v[1])) {
      throw PreconditionError("radial_custom vertices must be finite with r >= 0");
    }
    r_max = std::max(r_max, v[0]);
    t_lo = std::min(t_lo, v[1]);
    t_hi = std::max(t_hi, v[1]);
  }
  std::vector<std::array<double, 2>> poly(vertices.begin(), vertices.end());
  auto inside = [poly, slack](double r, double t) {
    bool odd = false;
    const std::size_t n = poly.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
      const auto& a = poly[i];
      const auto& b = poly[j];
      if ((a[1] > t) != (b[1] > t) && r < (b[0] - a[0]) * (t - a[1]) / (b[1] - a[1]) + a[0]) {
        odd = !odd;
      }
    }
    if (odd) {
      return true;
    }
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
      if (segment_distance(r, t, poly[j], poly[i]) <= slack) {
        return true;
      }
    }
    return false;
  };
  return {inside, r_max + slack, t_lo - slack, t_hi + slack};
}

SetOracle gallery(std::string_view name, const GalleryParams& params, const Tolerances& tol)
{
  tol.validate();
  const double eps = tol.eps_geom;

  if (name == "koranyi_ball") {
    require_known(name, params, {"r"});
    const double r = positive("r", param(params, "r", 1.0)) + eps;
    RadialProfile p{[r](double rr, double t) { return koranyi_rt(rr, t) <= r; }, r, -r * r, r * r};
    return radial_to_oracle(std::move(p), "koranyi_ball");
  }
  if (name == "euclidean_ball") {
    require_known(name, params, {"r"});
    const double r = positive("r", param(params, "r", 1.0)) + eps;
    RadialProfile p{[r](double rr, double t) { return std::hypot(rr, t) <= r; }, r, -r, r};
    return radial_to_oracle(std::move(p), "euclidean_ball");
  }
  if (name == "cylinder") {
    require_known(name, params, {"radius", "height"});
    const double radius = positive("radius", param(params, "radius", 1.0)) + eps;
    const double height = positive("height", param(params, "height", 1.0)) + eps;
    RadialProfile p{[](double, double) { return true; }, radius, -height, height};
    return radial_to_oracle(std::move(p), "cylinder");
  }
  if (name == "cylinder_hat") {
    require_known(name, params, {});
    const double radius = 1.0 + eps;
    const double gauge = 2.0 + eps;
    RadialProfile p{[gauge](double rr, double t) { return koranyi_rt(rr, t) <= gauge; }, radius, -gauge * gauge,
                    gauge * gauge};
    return radial_to_oracle(std::move(p), "cylinder_hat");
  }
  if (name == "importante") {
    require_known(name, params, {});
    const double level = 1.0 + eps;
    const double reach = importante_constants().xi_bar_norm * level;
    RadialProfile p{[level](double rr, double t) { return importante_level({rr, 0.0, t}) <= level; }, reach,
                    -reach * reach, reach * reach};
    return radial_to_oracle(std::move(p), "importante");
  }
  if (name == "slab_x") {
    require_known(name, params, {"half_width", "truncate"});
    const double w = positive("half_width", param(params, "half_width", 1.0)) + eps;
    const double cut = positive("truncate", param(params, "truncate", 10.0));
    return SetOracle("slab_x", Box::centered(w, cut, cut), [w](const Point3& q) { return std::abs(q.x) <= w; },
                     /*compact=*/false);
  }
  if (name == "radial_custom") {
    require_known(name, params, {"vertices"});
    const auto it = params.find("vertices");
    if (it == params.end()) {
      throw PreconditionError("radial_custom requires the 'vertices' parameter");
    }
    if (it->second.size() % 2 != 0) {
      throw PreconditionError("radial_custom vertices must be (r, t) pairs");
    }
    std::vector<std::array<double, 2>> verts;
    for (std::size_t i = 0; i + 1 < it->second.size(); i += 2) {
      verts.push_back({it->second[i], it->second[i + 1]});
    }
    return radial_to_oracle(polygon_profile(verts, eps), "radial_custom");
  }
  throw PreconditionError("unknown gallery set '" + std::string(name) + "'");
}

}  // namespace hconvex
