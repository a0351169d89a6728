#include "hconvex/set_model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <span>

#include "hconvex/errors.hpp"
#include "hconvex/parallel.hpp"

namespace hconvex {

namespace {

constexpr int kInteriorRandomProbes = 256;
constexpr int kClearanceLevels = 24;

Box footprint_hull(std::span<const Point3> pts)
{
  Box b{pts.front(), pts.front()};
  for (const Point3& p : pts) {
    b.lo = {std::min(b.lo.x, p.x), std::min(b.lo.y, p.y), std::min(b.lo.t, p.t)};
    b.hi = {std::max(b.hi.x, p.x), std::max(b.hi.y, p.y), std::max(b.hi.t, p.t)};
  }
  return b;
}

}  // namespace

double Box::horizontal_diameter() const { return std::hypot(hi.x - lo.x, hi.y - lo.y); }

double Box::reach() const
{
  return std::max({1.0, std::abs(lo.x), std::abs(hi.x), std::abs(lo.y), std::abs(hi.y),
                   std::abs(lo.t), std::abs(hi.t)});
}

Point3 Box::sample(Rng& rng) const
{
  return {uniform(rng, lo.x, hi.x), uniform(rng, lo.y, hi.y), uniform(rng, lo.t, hi.t)};
}

SetOracle::SetOracle(std::string label, Box bbox, Predicate inside, bool compact)
    : label_(std::move(label)), bbox_(bbox), inside_(std::move(inside)), compact_(compact)
{
  if (!is_finite(bbox_.lo) || !is_finite(bbox_.hi)) {
    throw PreconditionError("set oracle '" + label_ + "' needs a finite bounding box");
  }
}

SetOracle SetOracle::with_profile(RadialProfile profile) const
{
  SetOracle copy = *this;
  copy.profile_ = std::move(profile);
  return copy;
}

SetOracle SetOracle::relabeled(std::string label) const
{
  SetOracle copy = *this;
  copy.label_ = std::move(label);
  return copy;
}

SetOracle radial_to_oracle(RadialProfile profile, std::string label)
{
  const double r = profile.r_max;
  const Box bbox{{-r, -r, profile.t_lo}, {r, r, profile.t_hi}};
  SetOracle k(std::move(label), bbox, [profile](const Point3& p) {
    return profile.contains(horizontal_norm(p), p.t);
  });
  return k.with_profile(std::move(profile));
}

SetOracle dilated(const SetOracle& k, double alpha)
{
  if (!(alpha > 0.0)) {
    throw PreconditionError("dilated: alpha must be positive");
  }
  const Box& b = k.bbox();
  const double a2 = alpha * alpha;
  const Box bbox{{alpha * b.lo.x, alpha * b.lo.y, a2 * b.lo.t}, {alpha * b.hi.x, alpha * b.hi.y, a2 * b.hi.t}};
  const double inv = 1.0 / alpha;
  SetOracle out(k.label() + "@dilate(" + std::to_string(alpha) + ")", bbox,
                [k, inv](const Point3& p) { return k.contains(dilate(inv, p)); }, k.compact());
  if (const auto& prof = k.profile()) {
    RadialProfile scaled{[prof = *prof, inv](double r, double t) { return prof.contains(inv * r, inv * inv * t); },
                         alpha * prof->r_max, a2 * prof->t_lo, a2 * prof->t_hi};
    out = out.with_profile(std::move(scaled));
  }
  return out;
}

SetOracle translated(const SetOracle& k, const Point3& c)
{
  const Box& b = k.bbox();
  std::array<Point3, 8> corners;
  int n = 0;
  for (double x : {b.lo.x, b.hi.x}) {
    for (double y : {b.lo.y, b.hi.y}) {
      for (double t : {b.lo.t, b.hi.t}) {
        corners[n++] = group_mul(c, {x, y, t});
      }
    }
  }
  const Point3 inv = group_inv(c);
  return SetOracle(k.label() + "@translate", footprint_hull(corners),
                   [k, inv](const Point3& p) { return k.contains(group_mul(inv, p)); }, k.compact());
}

SetOracle set_union(const SetOracle& a, const SetOracle& b)
{
  const Box& ba = a.bbox();
  const Box& bb = b.bbox();
  const Box bbox{{std::min(ba.lo.x, bb.lo.x), std::min(ba.lo.y, bb.lo.y), std::min(ba.lo.t, bb.lo.t)},
                 {std::max(ba.hi.x, bb.hi.x), std::max(ba.hi.y, bb.hi.y), std::max(ba.hi.t, bb.hi.t)}};
  SetOracle out(a.label() + "|" + b.label(), bbox,
                [a, b](const Point3& p) { return a.contains(p) || b.contains(p); },
                a.compact() && b.compact());
  if (a.profile() && b.profile()) {
    const RadialProfile& pa = *a.profile();
    const RadialProfile& pb = *b.profile();
    out = out.with_profile({[pa, pb](double r, double t) { return pa.contains(r, t) || pb.contains(r, t); },
                            std::max(pa.r_max, pb.r_max), std::min(pa.t_lo, pb.t_lo),
                            std::max(pa.t_hi, pb.t_hi)});
  }
  return out;
}

SetOracle axis_box(double half_x, double half_y, double half_t)
{
  return SetOracle("box", Box::centered(half_x, half_y, half_t), [](const Point3&) { return true; });
}

Point3 scale(ScalingKind kind, double lambda, const Point3& p)
{
  if (kind == ScalingKind::heisenberg) {
    return dilate(lambda, p);
  }
  return {lambda * p.x, lambda * p.y, lambda * p.t};
}

std::optional<Point3> sample_inside(const SetOracle& k, Rng& rng, int max_tries)
{
  for (int i = 0; i < max_tries; ++i) {
    const Point3 p = k.bbox().sample(rng);
    if (k.contains(p)) {
      return p;
    }
  }
  return std::nullopt;
}

Point3 sample_inside_or_throw(const SetOracle& k, Rng& rng, int max_tries)
{
  if (auto p = sample_inside(k, rng, max_tries)) {
    return *p;
  }
  throw SamplingError("no point of '" + k.label() + "' found after " + std::to_string(max_tries) +
                      " rejection samples");
}

double outside_clearance(const SetOracle& k, const Point3& p, const Tolerances& tol)
{
  if (k.contains(p)) {
    return 0.0;
  }
  double cleared = 0.0;
  double r = tol.eps_geom / 8.0;
  for (int level = 0; level < kClearanceLevels; ++level, r *= 2.0) {
    const std::array<Point3, 6> probes{{{p.x + r, p.y, p.t},
                                        {p.x - r, p.y, p.t},
                                        {p.x, p.y + r, p.t},
                                        {p.x, p.y - r, p.t},
                                        {p.x, p.y, p.t + r},
                                        {p.x, p.y, p.t - r}}};
    if (std::any_of(probes.begin(), probes.end(), [&](const Point3& q) { return k.contains(q); })) {
      break;
    }
    cleared = r;
  }
  return cleared;
}

std::optional<HorizontalPair> sample_horizontal_pair(const SetOracle& k,
                                                     Rng& rng,
                                                     const Tolerances& tol,
                                                     int max_tries)
{
  const double diameter = std::max(2e-3, k.bbox().horizontal_diameter());
  for (int i = 0; i < max_tries; ++i) {
    const auto p = sample_inside(k, rng, max_tries);
    if (!p) {
      return std::nullopt;
    }
    const HVec v = random_horizontal(rng, 1e-3, diameter);
    const Point3 q = step(*p, v);
    if (!k.contains(q)) {
      continue;
    }
    if (auto reach = horizontal_reach(*p, q, tol)) {
      return HorizontalPair{*p, q, *reach};
    }
  }
  return std::nullopt;
}

std::optional<SegmentEscape> first_segment_escape(const SetOracle& k,
                                                  const Point3& p,
                                                  const HVec& v,
                                                  int m,
                                                  const Tolerances& tol)
{
  const double need = witness_clearance(tol);
  for (int j = 1; j + 1 < m; ++j) {
    const double theta = static_cast<double>(j) / static_cast<double>(m - 1);
    const Point3 q = step(p, {theta * v.a, theta * v.b});
    if (k.contains(q)) {
      continue;
    }
    const double margin = outside_clearance(k, q, tol);
    if (margin >= need) {
      return SegmentEscape{theta, q, margin};
    }
  }
  return std::nullopt;
}

namespace {

bool interior_probe(const SetOracle& k, std::uint64_t seed)
{
  const Box& b = k.bbox();
  const double half_h = std::min({-b.lo.x, b.hi.x, -b.lo.y, b.hi.y});
  const double half_t = std::min(-b.lo.t, b.hi.t);
  if (!(half_h > 0.0) || !(half_t > 0.0)) {
    return false;
  }
  const double rho = 1e-3 * std::min(half_h, std::sqrt(half_t));
  const double rho2 = rho * rho;
  if (!k.contains(kIdentity) || !k.contains({0, 0, rho2}) || !k.contains({0, 0, -rho2})) {
    return false;
  }
  for (int j = 0; j < 8; ++j) {
    const double phi = j * std::numbers::pi / 4.0;
    for (double t : {-rho2, 0.0, rho2}) {
      if (!k.contains({rho * std::cos(phi), rho * std::sin(phi), t})) {
        return false;
      }
    }
  }
  Rng rng = stream_rng(seed, Stream::interior, 0);
  for (int i = 0; i < kInteriorRandomProbes; ++i) {
    const HVec d = random_direction(rng);
    const double r = rho * std::sqrt(uniform(rng, 0.0, 1.0));
    if (!k.contains({r * d.a, r * d.b, uniform(rng, -rho2, rho2)})) {
      return false;
    }
  }
  return true;
}

}  // namespace

AxiomReport check_axioms(const SetOracle& k,
                         std::int64_t n,
                         std::uint64_t seed,
                         const Tolerances& tol,
                         ScalingKind kind)
{
  if (n < 1) {
    throw PreconditionError("check_axioms: n must be positive");
  }
  tol.validate();
  AxiomReport report;
  report.seed = seed;
  report.compact = k.compact();
  report.e_interior = interior_probe(k, seed);
  report.a_holds = report.compact && report.e_interior;
  if (!report.compact) {
    report.note = "bounding box is a truncation; the set is not compact";
  }
  const auto count = static_cast<std::size_t>(n);

  try {
    const auto b_fail = parallel_first<DilationFailure>(count, [&](std::size_t i) -> std::optional<DilationFailure> {
      Rng rng = stream_rng(seed, Stream::dilation, i);
      const Point3 p = sample_inside_or_throw(k, rng);
      const double tau = uniform(rng, 0.0, 1.0);
      if (k.contains(scale(kind, tau, p))) {
        return std::nullopt;
      }
      return DilationFailure{p, tau};
    });
    report.b_holds = !b_fail.has_value();
    if (b_fail) {
      report.b_witness = b_fail->value;
    }
    report.samples_used += b_fail ? static_cast<std::int64_t>(b_fail->index + 1) : n;

    const auto c_fail = parallel_first<SegmentWitness>(count, [&](std::size_t i) -> std::optional<SegmentWitness> {
      Rng rng = horizontal_pair_rng(seed, i);
      const auto pair = sample_horizontal_pair(k, rng, tol);
      if (!pair) {
        throw SamplingError("no horizontal pair inside '" + k.label() + "'");
      }
      if (auto esc = first_segment_escape(k, pair->p, pair->v, kSegmentSamples, tol)) {
        return SegmentWitness{pair->p, pair->v, esc->theta, esc->point, esc->margin};
      }
      return std::nullopt;
    });
    if (c_fail) {
      report.hconvex_witness = c_fail->value;
    }
    report.samples_used += c_fail ? static_cast<std::int64_t>(c_fail->index + 1) : n;
  } catch (const SamplingError& e) {
    report.b_holds = false;
    report.note = e.what();
  }
  return report;
}

GaugeBracket dilation_bracket(const SetOracle& k, ScalingKind kind, const Point3& xi, const Tolerances& tol)
{
  if (xi == kIdentity) {
    return {};
  }
  auto member = [&](double tau) { return k.contains(scale(kind, 1.0 / tau, xi)); };

  double lo = 0.0;
  double hi = 1.0;
  if (member(hi)) {
    for (;;) {
      const double half = 0.5 * hi;
      if (half < tol.eps_geom) {
        return {};
      }
      if (!member(half)) {
        lo = half;
        break;
      }
      hi = half;
    }
  } else {
    const double limit = k.bbox().reach() * 4294967296.0;
    lo = hi;
    hi *= 2.0;
    while (!member(hi)) {
      lo = hi;
      hi *= 2.0;
      if (hi > limit) {
        throw BracketingError("dilation bracket for '" + k.label() +
                              "' exceeded bbox reach * 2^32; e is not interior or the set is unbounded");
      }
    }
  }
  for (int it = 0; it < tol.max_iter; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) {
      break;
    }
    (member(mid) ? hi : lo) = mid;
  }
  if (hi < tol.eps_geom) {
    return {};
  }
  return {lo, hi};
}

std::vector<Point3> boundary_sample(const SetOracle& k, std::int64_t n, std::uint64_t seed, const Tolerances& tol)
{
  if (!k.compact()) {
    throw PreconditionError("boundary_sample: '" + k.label() + "' is not compact; rays never leave it");
  }
  std::vector<Point3> out;
  out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(n, 0)));
  for (std::int64_t i = 0; i < n; ++i) {
    Rng rng = stream_rng(seed, Stream::boundary, static_cast<std::uint64_t>(i));
    for (;;) {
      const Point3 d = k.bbox().sample(rng);
      const GaugeBracket g = dilation_bracket(k, ScalingKind::heisenberg, d, tol);
      if (g.hi > 0.0) {
        out.push_back(dilate(1.0 / g.hi, d));
        break;
      }
    }
  }
  return out;
}

Point3 vertical_extreme(const SetOracle& k, const Point3& p, double direction, const Tolerances& tol)
{
  const double sign = direction < 0.0 ? -1.0 : 1.0;
  const double edge = sign > 0.0 ? k.bbox().hi.t : k.bbox().lo.t;
  double in = p.t;
  double out = edge + sign * (1.0 + std::abs(edge - p.t));
  for (int it = 0; it < tol.max_iter; ++it) {
    const double mid = in + 0.5 * (out - in);
    if (mid == in || mid == out) {
      break;
    }
    (k.contains({p.x, p.y, mid}) ? in : out) = mid;
  }
  return {p.x, p.y, in};
}

}  // namespace hconvex
