#include "hconvex/ch_verifier.hpp"

#include <algorithm>
#include <cmath>

#include "hconvex/errors.hpp"
#include "hconvex/parallel.hpp"

namespace hconvex {

namespace {

TauSolution make_root(const Point3& xi0, const Point3& xi1, double tau, double disc)
{
  return {tau, {tau * xi1.x - xi0.x, tau * xi1.y - xi0.y}, disc};
}

bool near_zero(double d, double scale, const Tolerances& tol) { return std::abs(d) <= tol.eps_eq * (1.0 + scale); }

/// First interior theta = j/(m-1) whose curve point leaves K by witness_clearance.
std::optional<ChWitness> curve_escape(const SetOracle& k,
                                      const Point3& xi0,
                                      const Point3& xi1,
                                      double tau,
                                      const HVec& v,
                                      int m,
                                      const Tolerances& tol)
{
  const double need = witness_clearance(tol);
  for (int j = 1; j + 1 < m; ++j) {
    const double theta = static_cast<double>(j) / static_cast<double>(m - 1);
    const Point3 q = ch_curve_point(xi0, v, tau, theta);
    if (k.contains(q)) {
      continue;
    }
    const double margin = outside_clearance(k, q, tol);
    if (margin >= need) {
      return ChWitness{xi0, xi1, tau, v, theta, q, margin};
    }
  }
  return std::nullopt;
}

std::optional<Point3> near_boundary(const SetOracle& k, Rng& rng, const Tolerances& tol)
{
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const Point3 d = k.bbox().sample(rng);
    try {
      const GaugeBracket g = dilation_bracket(k, ScalingKind::heisenberg, d, tol);
      if (g.hi > 0.0) {
        return dilate(1.0 / g.hi, d);
      }
    } catch (const BracketingError&) {
      continue;
    }
  }
  return std::nullopt;
}

std::pair<Point3, Point3> sample_pair(const SetOracle& k, Rng& rng, const Tolerances& tol)
{
  const double mode = uniform(rng, 0.0, 1.0);
  if (mode < 0.5) {
    const Point3 a = sample_inside_or_throw(k, rng);
    return {a, sample_inside_or_throw(k, rng)};
  }
  if (mode < 0.75) {
    const auto a = near_boundary(k, rng, tol);
    const auto b = near_boundary(k, rng, tol);
    if (a && b) {
      return {*a, *b};
    }
    const Point3 c = sample_inside_or_throw(k, rng);
    return {c, sample_inside_or_throw(k, rng)};
  }
  const Point3 base = sample_inside_or_throw(k, rng);
  const double direction = uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0;
  const Point3 top = vertical_extreme(k, base, direction, tol);
  const Point3 other = sample_inside_or_throw(k, rng);
  if (uniform(rng, 0.0, 1.0) < 0.5) {
    return {top, other};
  }
  return {other, top};
}

}  // namespace

double tau_residual(const Point3& xi0, const Point3& xi1, double tau)
{
  return xi1.t * tau * tau + 2.0 * (xi0.x * xi1.y - xi1.x * xi0.y) * tau - xi0.t;
}

TauSolveResult solve_tau(const Point3& xi0, const Point3& xi1, const Tolerances& tol)
{
  const double a = xi1.t;
  const double b = 2.0 * (xi0.x * xi1.y - xi1.x * xi0.y);
  const double c = -xi0.t;
  TauSolveResult out;

  if (a == 0.0 && b == 0.0) {
    if (c == 0.0) {
      out.all_admissible = true;
      for (const double tau : kAdmissibleTauGrid) {
        out.roots.push_back(make_root(xi0, xi1, tau, 0.0));
      }
    }
    return out;
  }
  if (a == 0.0) {
    const double tau = -c / b;
    if (tau > 0.0 && std::isfinite(tau)) {
      out.roots.push_back(make_root(xi0, xi1, tau, b * b));
    }
    return out;
  }

  double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) {
    if (disc < -tol.eps_eq * (b * b + std::abs(4.0 * a * c))) {
      return out;
    }
    disc = 0.0;
  }
  std::vector<double> taus;
  if (disc == 0.0) {
    taus.push_back(-b / (2.0 * a));
  } else {
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    taus.push_back(q / a);
    if (q != 0.0) {
      taus.push_back(c / q);
    }
  }
  std::sort(taus.begin(), taus.end());
  taus.erase(std::unique(taus.begin(), taus.end()), taus.end());
  for (const double tau : taus) {
    if (tau > 0.0 && std::isfinite(tau)) {
      out.roots.push_back(make_root(xi0, xi1, tau, disc));
    }
  }
  return out;
}

double tau_theta(double tau, double theta) { return 1.0 + theta * (tau - 1.0); }

Point3 ch_curve_point(const Point3& xi0, const HVec& v, double tau, double theta)
{
  const double tt = tau_theta(tau, theta);
  if (!(tt > 0.0)) {
    throw PreconditionError("ch_curve: tau_theta must stay positive");
  }
  return dilate(1.0 / tt, step(xi0, {theta * v.a, theta * v.b}));
}

std::vector<Point3> ch_curve(const Point3& xi0, const HVec& v, double tau, int m)
{
  if (!(tau > 0.0) || m < 2) {
    throw PreconditionError("ch_curve: need tau > 0 and m >= 2");
  }
  std::vector<Point3> out;
  out.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    out.push_back(ch_curve_point(xi0, v, tau, static_cast<double>(i) / static_cast<double>(m - 1)));
  }
  return out;
}

const char* to_string(CurveCase c)
{
  switch (c) {
    case CurveCase::i:
      return "i";
    case CurveCase::ii:
      return "ii";
    case CurveCase::iii:
      return "iii";
  }
  return "?";
}

CurveCase classify_curve(const Point3& xi0, double alpha, double beta, double tau, const Tolerances& tol)
{
  const double dx = xi0.x * (tau - 1.0) - alpha;
  const double dy = xi0.y * (tau - 1.0) - beta;
  if (!near_zero(dx, std::abs(xi0.x * (tau - 1.0)) + std::abs(alpha), tol)) {
    return CurveCase::i;
  }
  if (!near_zero(dy, std::abs(xi0.y * (tau - 1.0)) + std::abs(beta), tol)) {
    return CurveCase::ii;
  }
  return CurveCase::iii;
}

Point3 ch_case_point(CurveCase which, const Point3& xi0, double alpha, double beta, double tau, double s)
{
  const double k = tau - 1.0;
  const double a_cross = xi0.x * beta - xi0.y * alpha;
  switch (which) {
    case CurveCase::i: {
      const double d = k * xi0.x - alpha;
      const double w = k * s - alpha;
      const double y = ((xi0.y * k - beta) * s + a_cross) / d;
      const double t = (xi0.t * w * w - 2.0 * a_cross * (xi0.x - s) * w) / (d * d);
      return {s, y, t};
    }
    case CurveCase::ii: {
      const double d = k * xi0.y - beta;
      const double w = k * s - beta;
      const double t = (xi0.t * w * w - 2.0 * a_cross * (xi0.y - s) * w) / (d * d);
      return {xi0.x, s, t};
    }
    case CurveCase::iii: {
      const double g = 1.0 + s * k;
      return {xi0.x, xi0.y, xi0.t / (g * g)};
    }
  }
  return xi0;
}

CaseCurve ch_curve_cases(const Point3& xi0,
                         double alpha,
                         double beta,
                         double tau,
                         int m,
                         std::optional<CurveCase> expected,
                         const Tolerances& tol)
{
  if (!(tau > 0.0) || m < 2) {
    throw PreconditionError("ch_curve_cases: need tau > 0 and m >= 2");
  }
  CaseCurve out;
  out.which = classify_curve(xi0, alpha, beta, tau, tol);
  if (expected && *expected != out.which) {
    throw PreconditionError(std::string("ch_curve_cases: inputs select case ") + to_string(out.which) +
                            ", not case " + to_string(*expected));
  }
  double s0 = 0.0;
  double s1 = 1.0;
  if (out.which == CurveCase::i) {
    s0 = xi0.x;
    s1 = (xi0.x + alpha) / tau;
  } else if (out.which == CurveCase::ii) {
    s0 = xi0.y;
    s1 = (xi0.y + beta) / tau;
  }
  for (int j = 0; j < m; ++j) {
    const double u = static_cast<double>(j) / static_cast<double>(m - 1);
    const double s = j + 1 == m ? s1 : s0 + u * (s1 - s0);
    out.s.push_back(s);
    out.points.push_back(ch_case_point(out.which, xi0, alpha, beta, tau, s));
  }
  return out;
}

ChSearchResult falsify_ch(const SetOracle& k,
                          std::int64_t budget,
                          int m,
                          std::uint64_t seed,
                          const Tolerances& tol,
                          const FalsifyOptions& options)
{
  if (budget < 1 || m < 3) {
    throw PreconditionError("falsify_ch: need budget >= 1 and m >= 3");
  }
  tol.validate();
  if (options.check_preconditions) {
    const AxiomReport ax = check_axioms(k, options.precondition_samples, seed, tol);
    if (!ax.a_holds || !ax.b_holds) {
      throw PreconditionError("falsify_ch: '" + k.label() + "' fails assumption " + (ax.a_holds ? "b" : "a"));
    }
  }

  auto trial = [&](std::size_t i) -> std::optional<ChWitness> {
    if (options.taus == TauFilter::unit_only) {
      Rng rng = horizontal_pair_rng(seed, i);
      const auto pair = sample_horizontal_pair(k, rng, tol);
      if (!pair) {
        throw SamplingError("no horizontal pair inside '" + k.label() + "'");
      }
      return curve_escape(k, pair->p, pair->q, 1.0, pair->v, m, tol);
    }
    Rng rng = stream_rng(seed, Stream::ch_pair, i);
    const auto [xi0, xi1] = sample_pair(k, rng, tol);
    for (const TauSolution& root : solve_tau(xi0, xi1, tol).roots) {
      if (auto w = curve_escape(k, xi0, xi1, root.tau, root.v, m, tol)) {
        return w;
      }
    }
    return std::nullopt;
  };

  ChSearchResult result;
  const auto hit = parallel_first<ChWitness>(static_cast<std::size_t>(budget), trial);
  if (hit) {
    result.witness = hit->value;
    result.pairs_tested = static_cast<std::int64_t>(hit->index + 1);
  } else {
    result.pairs_tested = budget;
  }
  return result;
}

ReplayResult replay(const ChWitness& w, const SetOracle& k, const Tolerances& tol)
{
  ReplayResult out;
  if (!k.contains(w.xi0) || !k.contains(w.xi1)) {
    out.reason = "endpoint outside K";
    return out;
  }
  if (!(w.tau > 0.0) || !(w.theta_star > 0.0 && w.theta_star < 1.0)) {
    out.reason = "tau or theta out of range";
    return out;
  }
  const auto reach = horizontal_reach(w.xi0, dilate(w.tau, w.xi1), tol);
  if (!reach) {
    out.reason = "xi0 does not reach delta_tau xi1 horizontally";
    return out;
  }
  const double slack = tol.eps_geom * (1.0 + euclidean_norm(w.v));
  if (std::abs(reach->a - w.v.a) > slack || std::abs(reach->b - w.v.b) > slack) {
    out.reason = "stored v does not connect xi0 to delta_tau xi1";
    return out;
  }
  const Point3 q = ch_curve_point(w.xi0, w.v, w.tau, w.theta_star);
  if (k.contains(q)) {
    out.reason = "curve point lies in K";
    return out;
  }
  out.margin = outside_clearance(k, q, tol);
  if (!(out.margin > tol.eps_geom)) {
    out.reason = "escape clearance not above eps_geom";
    return out;
  }
  out.ok = true;
  return out;
}

ChWitness transport(const ChWitness& w, double alpha)
{
  return {dilate(alpha, w.xi0),
          dilate(alpha, w.xi1),
          w.tau,
          {alpha * w.v.a, alpha * w.v.b},
          w.theta_star,
          dilate(alpha, w.escape_point),
          alpha * w.margin};
}

}  // namespace hconvex
