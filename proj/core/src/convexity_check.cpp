#include "hconvex/convexity_check.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hconvex/errors.hpp"
#include "hconvex/parallel.hpp"

namespace hconvex {

namespace {

enum class Rule
{
  convex,
  quasiconvex,
};

double right_side(Rule rule, double theta, double f0, double f1)
{
  return rule == Rule::convex ? (1.0 - theta) * f0 + theta * f1 : std::max(f0, f1);
}

std::optional<ConvexityWitness> check_segment(const FnOracle& f,
                                              const Point3& base,
                                              const HVec& v,
                                              const std::vector<double>& thetas,
                                              Rule rule,
                                              const Tolerances& tol)
{
  const double f0 = f(base);
  const double f1 = f(step(base, v));
  for (const double theta : thetas) {
    const double lhs = f(step(base, {theta * v.a, theta * v.b}));
    const double rhs = right_side(rule, theta, f0, f1);
    if (lhs > rhs + tol.eps_eq) {
      return ConvexityWitness{base, v, theta, lhs, rhs};
    }
  }
  return std::nullopt;
}

std::optional<ConvexityWitness> run_check(const FnOracle& f,
                                          const SetOracle& domain,
                                          std::int64_t n,
                                          int grid,
                                          std::uint64_t seed,
                                          const Tolerances& tol,
                                          Rule rule)
{
  if (n < 1 || grid < 1) {
    throw PreconditionError("convexity check: n and grid must be positive");
  }
  tol.validate();
  const std::vector<double> thetas = theta_grid(grid);
  const auto hit = parallel_first<ConvexityWitness>(
      static_cast<std::size_t>(n), [&](std::size_t i) -> std::optional<ConvexityWitness> {
        Rng rng = stream_rng(seed, Stream::function_segment, i);
        const auto pair = sample_horizontal_pair(domain, rng, tol);
        if (!pair) {
          throw SamplingError("domain '" + domain.label() + "' too thin: no horizontal pair found");
        }
        return check_segment(f, pair->p, pair->v, thetas, rule, tol);
      });
  if (hit) {
    return hit->value;
  }
  return std::nullopt;
}

bool replay(const FnOracle& f, const ConvexityWitness& w, Rule rule, const Tolerances& tol)
{
  const double lhs = f(step(w.base, {w.theta * w.v.a, w.theta * w.v.b}));
  const double rhs = right_side(rule, w.theta, f(w.base), f(step(w.base, w.v)));
  return lhs > rhs + tol.eps_eq;
}

Point3 rotate(const Point3& p, double angle)
{
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * p.x - s * p.y, s * p.x + c * p.y, p.t};
}

HVec rotate(const HVec& v, double angle)
{
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.a - s * v.b, s * v.a + c * v.b};
}

}  // namespace

std::vector<double> theta_grid(int grid)
{
  std::vector<double> out;
  for (int k = 1; k <= grid; ++k) {
    out.push_back(static_cast<double>(k) / static_cast<double>(grid + 1));
  }
  if (std::find(out.begin(), out.end(), 0.5) == out.end()) {
    out.insert(std::lower_bound(out.begin(), out.end(), 0.5), 0.5);
  }
  return out;
}

std::optional<ConvexityWitness> check_hconvex_fn(const FnOracle& f,
                                                 const SetOracle& domain,
                                                 std::int64_t n,
                                                 int grid,
                                                 std::uint64_t seed,
                                                 const Tolerances& tol)
{
  return run_check(f, domain, n, grid, seed, tol, Rule::convex);
}

std::optional<ConvexityWitness> check_hquasiconvex_fn(const FnOracle& f,
                                                      const SetOracle& domain,
                                                      std::int64_t n,
                                                      int grid,
                                                      std::uint64_t seed,
                                                      const Tolerances& tol)
{
  return run_check(f, domain, n, grid, seed, tol, Rule::quasiconvex);
}

bool replay_convexity(const FnOracle& f, const ConvexityWitness& w, const Tolerances& tol)
{
  return replay(f, w, Rule::convex, tol);
}

bool replay_quasiconvexity(const FnOracle& f, const ConvexityWitness& w, const Tolerances& tol)
{
  return replay(f, w, Rule::quasiconvex, tol);
}

HomogeneityReport check_homogeneous(const FnOracle& f,
                                    std::int64_t n,
                                    std::uint64_t seed,
                                    const Tolerances& tol,
                                    const Box& box,
                                    ScalingKind kind)
{
  HomogeneityReport report;
  for (std::int64_t i = 0; i < n; ++i) {
    Rng rng = stream_rng(seed, Stream::homogeneity, static_cast<std::uint64_t>(i));
    const double lambda = 4.0 * (1.0 - uniform(rng, 0.0, 1.0));
    const Point3 xi = box.sample(rng);
    const double fx = f(xi);
    const double dev = std::abs(f(scale(kind, lambda, xi)) - lambda * fx) / ((1.0 + std::abs(fx)) * lambda);
    if (!(dev <= report.max_deviation)) {
      report.max_deviation = dev;
      report.worst_point = xi;
      report.worst_lambda = lambda;
    }
  }
  report.samples = n;
  report.ok = report.max_deviation <= tol.eps_eq;
  return report;
}

std::optional<HVec> subdiff_violation(const FnOracle& f,
                                      const Point3& xi,
                                      const HVec& p,
                                      std::int64_t n,
                                      double radius,
                                      std::uint64_t seed,
                                      const Tolerances& tol)
{
  if (!(radius > 0.0)) {
    throw PreconditionError("subdiff_contains: radius must be positive");
  }
  const double f0 = f(xi);
  auto violates = [&](const HVec& v) { return f(step(xi, v)) < f0 + dot(p, v) - tol.eps_eq; };
  for (const double s : {radius, 0.5 * radius, 1e-3 * radius}) {
    for (const HVec v : {HVec{s, 0}, HVec{-s, 0}, HVec{0, s}, HVec{0, -s}}) {
      if (violates(v)) {
        return v;
      }
    }
  }
  for (std::int64_t i = 0; i < n; ++i) {
    Rng rng = stream_rng(seed, Stream::subdifferential, static_cast<std::uint64_t>(i));
    const HVec d = random_direction(rng);
    const double r = radius * std::sqrt(uniform(rng, 0.0, 1.0));
    const HVec v{r * d.a, r * d.b};
    if (violates(v)) {
      return v;
    }
  }
  return std::nullopt;
}

bool subdiff_contains(const FnOracle& f,
                      const Point3& xi,
                      const HVec& p,
                      std::int64_t n,
                      double radius,
                      std::uint64_t seed,
                      const Tolerances& tol)
{
  return !subdiff_violation(f, xi, p, n, radius, seed, tol).has_value();
}

HVec horizontal_gradient(const FnOracle& f, const Point3& xi, double h)
{
  const double fx = (f(step(xi, {h, 0})) - f(step(xi, {-h, 0}))) / (2.0 * h);
  const double fy = (f(step(xi, {0, h})) - f(step(xi, {0, -h}))) / (2.0 * h);
  return {fx, fy};
}

SubdiffReport subdiff_properties(const FnOracle& f, std::int64_t n, std::uint64_t seed, const Tolerances& tol)
{
  constexpr std::int64_t kProbes = 64;
  SubdiffReport report;
  const HomogeneityReport homog = check_homogeneous(f, std::max<std::int64_t>(n, 256), seed, tol);
  if (!homog.ok) {
    report.note = "precondition failed: f is not homogeneous (max deviation " +
                  std::to_string(homog.max_deviation) + ")";
    return report;
  }
  report.precondition_ok = true;
  report.rotation_checked = f.radial;
  const Box box = Box::centered(2, 2, 2);

  for (std::int64_t i = 0; i < n; ++i) {
    Rng rng = stream_rng(seed, Stream::subdifferential, (1ull << 40) + static_cast<std::uint64_t>(i));
    const Point3 xi = box.sample(rng);
    if (koranyi_norm(xi) < 0.1) {
      continue;
    }
    const HVec p = horizontal_gradient(f, xi);
    const std::uint64_t sub = rng();
    if (!subdiff_contains(f, xi, p, kProbes, 1.0, sub, tol)) {
      continue;
    }
    ++report.candidates;

    const double lambda = log_uniform(rng, 0.25, 4.0);
    const Point3 dil = dilate(lambda, xi);
    if (report.persistence_holds && !subdiff_contains(f, dil, p, kProbes, lambda, sub + 1, tol)) {
      report.persistence_holds = false;
      report.persistence_witness = SubdiffFailure{xi, p, dil, p};
    }
    if (f.radial && report.rotation_holds) {
      const double angle = uniform(rng, 0.0, 2.0 * std::numbers::pi);
      const Point3 rot = rotate(xi, angle);
      const HVec rp = rotate(p, angle);
      if (!subdiff_contains(f, rot, rp, kProbes, 1.0, sub + 2, tol)) {
        report.rotation_holds = false;
        report.rotation_witness = SubdiffFailure{xi, p, rot, rp};
      }
    }
  }
  if (report.candidates == 0) {
    report.note = "no subgradient candidates accepted";
  }
  return report;
}

}  // namespace hconvex
