#ifndef HCONVEX_GALLERY_HPP_
#define HCONVEX_GALLERY_HPP_

#include <array>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hconvex/set_model.hpp"

namespace hconvex {

/// Named numeric parameters; radial_custom takes "vertices" as flat r0,t0,r1,t1,...
using GalleryParams = std::map<std::string, std::vector<double>, std::less<>>;

/// koranyi_ball, euclidean_ball, cylinder, cylinder_hat, importante, slab_x, radial_custom.
const std::vector<std::string>& gallery_names();

/**
 * Builds a named candidate set. Every constraint is closed with eps_geom slack.
 *
 *   koranyi_ball    |xi|_G <= r                       (r = 1)
 *   euclidean_ball  |xi|_E <= r                       (r = 1)
 *   cylinder        |(x,y)| <= radius, |t| <= height  (1, 1)
 *   cylinder_hat    |(x,y)| <= 1, |xi|_G <= 2
 *   importante      lev_{<=1} of max{f1, |xi|_G / |xi_bar|_G}
 *   slab_x          |x| <= half_width, truncated to |y|,|t| <= truncate; not compact
 *   radial_custom   closed polygon in (r,t), even-odd rule; "vertices" required
 *
 * Throws PreconditionError for unknown names, unknown keys or missing params.
 */
SetOracle gallery(std::string_view name, const GalleryParams& params = {}, const Tolerances& tol = {});

struct ImportanteConstants
{
  double c0;           ///< radius of K at t = 0
  double c;            ///< radius of K at t = 3 pi / 2
  Point3 xi_bar;       ///< (c, 0, 3 pi / 2), a boundary point
  double xi_bar_norm;  ///< |xi_bar|_G
};

const ImportanteConstants& importante_constants();

/// ((x^2+y^2)^2 + 2 + sin(t)/2)^(1/4) - 2^(1/4)
double importante_f1(const Point3& p);

/// max{f1, |xi|_G / |xi_bar|_G}; the set is its sublevel at 1.
double importante_level(const Point3& p);

/// Even-odd polygon membership in (r, t), closed by `slack` around the edges.
RadialProfile polygon_profile(std::span<const std::array<double, 2>> vertices, double slack);

}  // namespace hconvex

#endif  // HCONVEX_GALLERY_HPP_
