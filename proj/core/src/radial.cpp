#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hconvex/ch_verifier.hpp"
#include "hconvex/errors.hpp"

namespace hconvex {

namespace {

/// Refines in < out (in inside, out outside) to floating resolution.
double bisect_radius(const RadialProfile& p, double t, double in, double out)
{
  for (int it = 0; it < 200; ++it) {
    const double mid = in + 0.5 * (out - in);
    if (mid <= in || mid >= out) {
      break;
    }
    (p.contains(mid, t) ? in : out) = mid;
  }
  return in;
}

/// Largest r with (r, t) in the profile, or -1 if the slice is empty on the grid.
double slice_max_radius(const RadialProfile& p, double t, int cells)
{
  const double dr = p.r_max / cells;
  for (int k = cells; k >= 0; --k) {
    const double r = k * dr;
    if (p.contains(r, t)) {
      return bisect_radius(p, t, r, r + dr);
    }
  }
  return -1.0;
}

double gauge_margin(const SetOracle& k, const Point3& q, const Tolerances& tol)
{
  try {
    return 1.0 - dilation_bracket(k, ScalingKind::heisenberg, q, tol).value();
  } catch (const BracketingError&) {
    return -std::numeric_limits<double>::infinity();
  }
}

}  // namespace

RadialNecessityReport radial_necessary(const RadialProfile& profile,
                                       std::int64_t n,
                                       std::uint64_t seed,
                                       const Tolerances& tol)
{
  tol.validate();
  if (!profile.contains(0.0, 0.0)) {
    throw PreconditionError("radial_necessary: e must lie in the profile");
  }
  const int cells = static_cast<int>(std::clamp<std::int64_t>(n, 16, 1 << 16));
  RadialNecessityReport report;

  // Boundary radius at t = 0, walking outwards from e.
  const double dr = profile.r_max / cells;
  int k = 0;
  while (k < cells + 1 && profile.contains((k + 1) * dr, 0.0)) {
    ++k;
  }
  report.r_zero = bisect_radius(profile, 0.0, k * dr, (k + 1) * dr);

  // i: B_G(e, r_zero) inside K, shrunk by eps_geom against the slack.
  const double rb = report.r_zero - tol.eps_geom;
  if (rb > 0.0) {
    const double rb4 = rb * rb * rb * rb;
    const double rb2 = rb * rb;
    const int per_level = std::max(4, cells / 8);
    auto check = [&](double r, double t) {
      ++report.caps_checked;
      if (report.thm_i && !profile.contains(r, t)) {
        report.thm_i = false;
        report.thm_i_witness = Point3{r, 0.0, t};
      }
    };
    for (int j = 0; j <= cells && report.thm_i; ++j) {
      const double t = -rb2 + 2.0 * rb2 * j / cells;
      const double edge = std::sqrt(std::sqrt(std::max(0.0, rb4 - t * t)));
      for (int i = per_level; i >= 0 && report.thm_i; --i) {
        check(edge * i / per_level, t);
      }
    }
    Rng rng = stream_rng(seed, Stream::radial, 0);
    for (std::int64_t i = 0; i < n && report.thm_i; ++i) {
      const double t = uniform(rng, -rb2, rb2);
      const double edge = std::sqrt(std::sqrt(std::max(0.0, rb4 - t * t)));
      check(uniform(rng, 0.0, edge), t);
    }
  }

  // ii: the largest radius over all heights, grid scan then golden-section refinement.
  const int levels = 4 * cells;
  const double dt = (profile.t_hi - profile.t_lo) / levels;
  double best_r = -1.0;
  double best_t = 0.0;
  for (int j = 0; j <= levels; ++j) {
    const double t = profile.t_lo + j * dt;
    ++report.solids_checked;
    const double r = slice_max_radius(profile, t, cells);
    if (r > best_r) {
      best_r = r;
      best_t = t;
    }
  }
  double a = std::max(profile.t_lo, best_t - dt);
  double b = std::min(profile.t_hi, best_t + dt);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = slice_max_radius(profile, c, cells);
  double fd = slice_max_radius(profile, d, cells);
  for (int it = 0; it < 80; ++it) {
    ++report.solids_checked;
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = slice_max_radius(profile, c, cells);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = slice_max_radius(profile, d, cells);
    }
  }
  for (const auto& [r, t] : {std::pair{fc, c}, std::pair{fd, d}}) {
    if (r > best_r) {
      best_r = r;
      best_t = t;
    }
  }
  report.r_max = best_r;
  if (best_r > report.r_zero + tol.eps_geom) {
    report.thm_ii = false;
    report.thm_ii_witness = Point3{best_r, 0.0, 0.0};
    report.thm_ii_source = Point3{best_r, 0.0, best_t};
  }
  return report;
}

double solid_height(double r, double r0, double t0)
{
  const double a = std::abs(t0);
  const double h = 0.5 * (a + std::sqrt(std::max(0.0, a * a + 4.0 * r0 * r0 * r * r - 4.0 * r * r * r * r)));
  return t0 < 0.0 ? -h : h;
}

double cap_height(double r, double r0, double t0)
{
  return std::sqrt(std::max(0.0, r0 * r0 * r0 * r0 + t0 * t0 - r * r * r * r));
}

EnvelopeReport envelope_check(const SetOracle& k, const Point3& xi0, std::int64_t n, const Tolerances& tol)
{
  tol.validate();
  const double r0 = horizontal_norm(xi0);
  if (!k.contains(xi0) || xi0.t == 0.0 || !(r0 > 0.0)) {
    throw PreconditionError("envelope_check: need xi0 in K with t0 != 0 and r0 > 0");
  }
  if (n < 2) {
    throw PreconditionError("envelope_check: n must be at least 2");
  }
  constexpr int kAngles = 8;
  const double base = std::atan2(xi0.y, xi0.x);
  const double sign = xi0.t < 0.0 ? -1.0 : 1.0;
  EnvelopeReport report;
  report.solid_margin = std::numeric_limits<double>::infinity();
  report.cap_margin = std::numeric_limits<double>::infinity();

  // Violations need clearance, so points on the slack boundary do not flicker.
  auto probe = [&](const Point3& q, bool solid) {
    const bool inside = k.contains(q) || outside_clearance(k, q, tol) < witness_clearance(tol);
    const double margin = gauge_margin(k, q, tol);
    if (solid) {
      ++report.solids_checked;
      report.solid_margin = std::min(report.solid_margin, margin);
      if (!inside && report.solid_holds) {
        report.solid_holds = false;
        report.solid_witness = q;
      }
    } else {
      ++report.caps_checked;
      report.cap_margin = std::min(report.cap_margin, margin);
      if (!inside && report.cap_holds) {
        report.cap_holds = false;
        report.cap_witness = q;
      }
    }
  };

  const double r_lo = r0 / std::numbers::sqrt2;
  for (std::int64_t i = 0; i < n; ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(n - 1);
    const double r = r_lo + u * (r0 - r_lo);
    const double h = solid_height(r, r0, xi0.t);
    for (int a = 0; a < kAngles; ++a) {
      const double ang = base + 2.0 * std::numbers::pi * a / kAngles;
      for (const double frac : {1.0, 0.5}) {
        probe({frac * r * std::cos(ang), frac * r * std::sin(ang), h}, true);
      }
    }
    probe({0.0, 0.0, h}, true);
  }

  for (std::int64_t i = 0; i < n; ++i) {
    const double r = r0 * static_cast<double>(i) / static_cast<double>(n - 1);
    const double h = cap_height(r, r0, xi0.t);
    for (int a = 0; a < kAngles; ++a) {
      const double ang = base + 2.0 * std::numbers::pi * a / kAngles;
      for (const double frac : {1.0, 0.5}) {
        const double height = std::abs(xi0.t) + frac * (h - std::abs(xi0.t));
        probe({r * std::cos(ang), r * std::sin(ang), sign * height}, false);
      }
    }
  }
  return report;
}

}  // namespace hconvex
