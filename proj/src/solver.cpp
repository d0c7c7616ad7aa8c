#include "magsob/solver.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "magsob/errors.hpp"

namespace magsob {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_q(double q) {
  if (!(q > 2.0)) {
    std::ostringstream os;
    os << "exponent q must satisfy q > 2, got q = " << q;
    throw DomainError(os.str());
  }
}

}  // namespace

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::ConstantMinimizer: return "constant";
    case Regime::Critical: return "critical";
    case Regime::SymmetryBroken: return "broken";
  }
  return "?";
}

double normalize_flux(double alpha_raw) {
  if (!std::isfinite(alpha_raw)) throw DomainError("flux must be finite");
  double a = std::remainder(alpha_raw, 1.0);  // lands in [-1/2, 1/2]
  if (a == -0.5) a = 0.5;
  return a;
}

Regime classify(double q, double alpha) {
  require_q(q);
  const double s = (q + 2.0) * alpha * alpha;
  if (std::abs(s - 1.0) <= 1e-12) return Regime::Critical;
  return s < 1.0 ? Regime::ConstantMinimizer : Regime::SymmetryBroken;
}

double mu_constant(double q, double alpha) {
  require_q(q);
  if (classify(q, alpha) == Regime::SymmetryBroken) {
    std::ostringstream os;
    os << "constant-branch formula called in the broken regime: (q+2) alpha^2 = "
       << (q + 2.0) * alpha * alpha << " > 1";
    throw DomainError(os.str());
  }
  return rpow(kTwoPi, 0.5 - 1.0 / q) * std::abs(alpha);
}

double solve_gamma(double q, double alpha, const SolveOptions& opts) {
  require_q(q);
  const double aa = std::abs(alpha);
  if (!((q + 2.0) * aa * aa > 1.0))
    throw DomainError("solve_gamma: flux below the symmetry-breaking threshold");
  if (!(aa < 0.5))
    throw BoundaryFluxError("solve_gamma: |alpha| = 1/2 is the boundary flux; "
                            "the flux equation has no interior solution");

  const double gm = gamma_max(q);
  const double target = kTwoPi * aa;
  double lo = gm * 1e-12;
  double hi = gm * (1.0 - 1e-12);

  // M is strictly decreasing: M(lo) ~ pi is the supremum side.
  const double mlo = flux_integral(lo, q, opts.quad);
  const double mhi = flux_integral(hi, q, opts.quad);
  if (!(target < mlo && target > mhi)) {
    std::ostringstream os;
    os << "flux equation unsolvable: 2 pi |alpha| = " << target
       << " outside the sampled range (" << mhi << ", " << mlo
       << ") of the flux integral; flux too close to the boundary or regime misclassified";
    throw DomainError(os.str());
  }

  double gamma = 0.5 * (lo + hi);
  for (int it = 0; it < opts.max_iter; ++it) {
    gamma = 0.5 * (lo + hi);
    const double m = flux_integral(gamma, q, opts.quad);
    if (std::abs(m - target) <= opts.tol) return gamma;
    if (m > target)
      lo = gamma;
    else
      hi = gamma;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * gm) break;
  }
  const double resid = std::abs(flux_integral(gamma, q, opts.quad) - target);
  if (resid <= opts.tol) return gamma;
  std::ostringstream os;
  os << "gamma bisection stalled at gamma = " << gamma << " with flux residual "
     << resid << " > tol = " << opts.tol;
  throw ConvergenceError(os.str());
}

Scales recover_scales(double q, double gamma, const QuadratureConfig& cfg) {
  require_q(q);
  // s = a^2/lambda from inverting t = (lambda/a^2)(1+2/q) r^2,
  // p = a/lambda from the half-period condition pi = (a/(2 lambda (1+2/q))) P.
  const double one2q = 1.0 + 2.0 / q;
  const double s = rpow(0.5 * q * gamma * rpow(one2q, 0.5 * q + 1.0), 2.0 / q);
  const double P = period_integral(gamma, q, cfg);
  const double p = kTwoPi * one2q / P;
  Scales out;
  out.a = s / p;
  out.lambda = s / (p * p);
  out.c = out.lambda * (0.5 + 1.0 / q);
  return out;
}

OvalSolution oval_solution_at(double q, double gamma, double alpha_sign,
                              const QuadratureConfig& cfg) {
  const Scales sc = recover_scales(q, gamma, cfg);
  const OvalShape shape = bracket_roots(gamma, q);
  const double one2q = 1.0 + 2.0 / q;
  const double s = sc.a * sc.a / sc.lambda;
  OvalSolution sol;
  sol.gamma = gamma;
  sol.a = (alpha_sign < 0.0 ? -sc.a : sc.a);
  sol.lambda = sc.lambda;
  sol.c = sc.c;
  sol.r1 = std::sqrt(s * shape.t1 / one2q);
  sol.r2 = std::sqrt(s * shape.t2 / one2q);
  sol.mu = std::sqrt(rpow(kTwoPi, 1.0 - 2.0 / q) * sc.lambda);
  return sol;
}

SharpResult sharp_constant(double q, double alpha_raw, const SolveOptions& opts) {
  require_q(q);
  const double alpha = normalize_flux(alpha_raw);
  const Regime regime = classify(q, alpha);

  if (regime != Regime::SymmetryBroken)
    return SharpResult{mu_constant(q, alpha), regime, std::nullopt};

  if (std::abs(alpha) >= 0.5) {
    if (!opts.extrapolate_boundary)
      throw BoundaryFluxError(
          "|alpha| = 1/2: the flux integral reaches 2 pi |alpha| = pi only in the "
          "gamma -> 0 limit; pass the extrapolation option to estimate mu");
    // Aitken extrapolation of mu(gamma) along a geometric gamma sequence.
    const double gm = gamma_max(q);
    double m0 = oval_solution_at(q, 1e-4 * gm, alpha, opts.quad).mu;
    double m1 = oval_solution_at(q, 1e-5 * gm, alpha, opts.quad).mu;
    double m2 = oval_solution_at(q, 1e-6 * gm, alpha, opts.quad).mu;
    const double den = (m2 - m1) - (m1 - m0);
    const double mu = (den != 0.0) ? m2 - (m2 - m1) * (m2 - m1) / den : m2;
    return SharpResult{mu, regime, std::nullopt};
  }

  const double gamma = solve_gamma(q, alpha, opts);
  OvalSolution sol = oval_solution_at(q, gamma, alpha, opts.quad);
  return SharpResult{sol.mu, regime, sol};
}

}  // namespace magsob
