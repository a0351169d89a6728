#include "hconvex/cone_builder.hpp"

#include <algorithm>
#include <cmath>

#include "hconvex/errors.hpp"

namespace hconvex {

namespace {

double closed_form_param(const GalleryParams& params, std::string_view key, double fallback)
{
  const auto it = params.find(key);
  if (it == params.end() || it->second.empty()) {
    return fallback;
  }
  return it->second.front();
}

Box scaled_box(const Box& b, ScalingKind kind, double alpha)
{
  const double at = kind == ScalingKind::heisenberg ? alpha * alpha : alpha;
  return {{alpha * b.lo.x, alpha * b.lo.y, at * b.lo.t}, {alpha * b.hi.x, alpha * b.hi.y, at * b.hi.t}};
}

bool member(const SetOracle& k, ScalingKind kind, double tau, const Point3& xi)
{
  return k.contains(scale(kind, 1.0 / tau, xi));
}

}  // namespace

ConeFunction::ConeFunction(SetOracle k, ScalingKind kind, const Tolerances& tol, AxiomReport axioms)
    : source_(std::move(k)), kind_(kind), tol_(tol), axioms_(std::move(axioms))
{
}

ConeFunction ConeFunction::build(SetOracle k,
                                 ScalingKind kind,
                                 const Tolerances& tol,
                                 std::int64_t axiom_samples,
                                 std::uint64_t seed)
{
  tol.validate();
  AxiomReport axioms = check_axioms(k, axiom_samples, seed, tol, kind);
  if (!axioms.a_holds) {
    throw PreconditionError("cone builder refuses '" + k.label() +
                            "': assumption a failed (compact with e interior)" +
                            (axioms.note.empty() ? "" : "; " + axioms.note));
  }
  if (!axioms.b_holds) {
    throw PreconditionError("cone builder refuses '" + k.label() +
                            "': assumption b failed (scale(tau, K) not inside K), bisection would not be monotone" +
                            (axioms.note.empty() ? "" : "; " + axioms.note));
  }
  return ConeFunction(std::move(k), kind, tol, std::move(axioms));
}

FnOracle ConeFunction::as_function() const
{
  ConeFunction self = *this;
  return FnOracle{[self](const Point3& p) { return self(p); }, "cone(" + source_.label() + ")", source_.is_radial()};
}

SetOracle scaled(const SetOracle& k, ScalingKind kind, double alpha)
{
  if (kind == ScalingKind::heisenberg) {
    return dilated(k, alpha);
  }
  if (!(alpha > 0.0)) {
    throw PreconditionError("scaled: alpha must be positive");
  }
  const double inv = 1.0 / alpha;
  SetOracle out(k.label() + "@scale(" + std::to_string(alpha) + ")", scaled_box(k.bbox(), kind, alpha),
                [k, inv](const Point3& p) { return k.contains({inv * p.x, inv * p.y, inv * p.t}); }, k.compact());
  if (const auto& prof = k.profile()) {
    out = out.with_profile({[prof = *prof, inv](double r, double t) { return prof.contains(inv * r, inv * t); },
                            alpha * prof->r_max, alpha * prof->t_lo, alpha * prof->t_hi});
  }
  return out;
}

FamilyReport family_axioms_check(const SetOracle& k,
                                 ScalingKind kind,
                                 std::int64_t n,
                                 std::uint64_t seed,
                                 const Tolerances& tol)
{
  tol.validate();
  FamilyReport report;
  report.seed = seed;
  const Box big = scaled_box(k.bbox(), kind, 4.0);

  for (std::int64_t i = 0; i < n; ++i) {
    Rng rng = stream_rng(seed, Stream::family, static_cast<std::uint64_t>(i));
    ++report.samples;

    const Point3 xi = big.sample(rng);
    try {
      const GaugeBracket g = dilation_bracket(k, kind, xi, tol);
      if (report.axiom_III && g.hi > 0.0) {
        double eps = 0.5;
        for (int j = 0; j < 30; ++j, eps *= 0.5) {
          if (!member(k, kind, g.hi * (1.0 + eps), xi)) {
            report.axiom_III = false;
            report.closedness_witness = xi;
            break;
          }
        }
      }
    } catch (const BracketingError& e) {
      if (report.axiom_I) {
        report.axiom_I = false;
        report.note = e.what();
      }
    }

    if (report.axiom_II) {
      const auto p = sample_inside(k, rng);
      if (!p) {
        report.axiom_II = false;
        report.note = "no point of '" + k.label() + "' found by rejection sampling";
        continue;
      }
      const double tau1 = uniform(rng, 0.05, 2.0);
      const double tau2 = tau1 * uniform(rng, 1.0, 4.0);
      const NestingWitness w{tau1, tau2, scale(kind, tau1, *p)};
      if (replay_nesting(k, kind, w)) {
        report.axiom_II = false;
        report.nesting_witness = w;
      }
    }
  }
  return report;
}

FamilyReport family_axioms_check(const ConeFunction& c, std::int64_t n, std::uint64_t seed)
{
  return family_axioms_check(c.source(), c.kind(), n, seed, c.tol());
}

bool replay_nesting(const SetOracle& k, ScalingKind kind, const NestingWitness& w)
{
  return w.tau1 < w.tau2 && member(k, kind, w.tau1, w.xi) && !member(k, kind, w.tau2, w.xi);
}

std::string ValidationReport::verdict() const
{
  if (!homogeneity.ok) {
    return "falsified: not homogeneous";
  }
  if (witness) {
    return "falsified: H-convexity witness";
  }
  return "candidate H-cone-function (not falsified)";
}

ValidationReport cone_validate(const ConeFunction& c, std::int64_t n, std::uint64_t seed, int grid)
{
  ValidationReport report;
  report.seed = seed;
  report.samples = n;
  const FnOracle f = c.as_function();
  const SetOracle domain = scaled(c.source(), c.kind(), 2.0);
  report.homogeneity = check_homogeneous(f, n, seed, c.tol(), domain.bbox(), c.kind());
  report.witness = check_hconvex_fn(f, domain, n, grid, seed, c.tol());
  return report;
}

double euclidean_ball_cone(const Point3& p, double radius)
{
  const double rho2 = p.x * p.x + p.y * p.y;
  const double r2 = radius * radius;
  const double u = (rho2 + std::sqrt(rho2 * rho2 + 4.0 * r2 * p.t * p.t)) / (2.0 * r2);
  return std::sqrt(u);
}

double cylinder_hat_cone(const Point3& p)
{
  return std::max(horizontal_norm(p), 0.5 * koranyi_norm(p));
}

std::optional<FnOracle> gallery_closed_form(std::string_view name, const GalleryParams& params, ScalingKind kind)
{
  const bool heis = kind == ScalingKind::heisenberg;
  if (name == "koranyi_ball" && heis) {
    const double r = closed_form_param(params, "r", 1.0);
    return FnOracle{[r](const Point3& p) { return koranyi_norm(p) / r; }, "koranyi_norm", true};
  }
  if (name == "euclidean_ball") {
    const double r = closed_form_param(params, "r", 1.0);
    if (heis) {
      return FnOracle{[r](const Point3& p) { return euclidean_ball_cone(p, r); }, "euclidean_ball_cone", true};
    }
    return FnOracle{[r](const Point3& p) { return euclidean_norm(p) / r; }, "euclidean_norm", true};
  }
  if (name == "cylinder") {
    const double rho = closed_form_param(params, "radius", 1.0);
    const double h = closed_form_param(params, "height", 1.0);
    if (heis) {
      return FnOracle{[rho, h](const Point3& p) { return std::max(horizontal_norm(p) / rho, std::sqrt(std::abs(p.t) / h)); },
                      "cylinder_cone", true};
    }
    return FnOracle{[rho, h](const Point3& p) { return std::max(horizontal_norm(p) / rho, std::abs(p.t) / h); },
                    "cylinder_euclidean_cone", true};
  }
  if (name == "cylinder_hat" && heis) {
    return FnOracle{cylinder_hat_cone, "cylinder_hat_cone", true};
  }
  return std::nullopt;
}

}  // namespace hconvex
