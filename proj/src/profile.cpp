#include "magsob/profile.hpp"

#include <cmath>
#include <sstream>

#include "magsob/errors.hpp"

namespace magsob {

namespace {

void require_valid_q(double q) {
  if (!(q > 2.0)) {
    std::ostringstream os;
    os << "exponent q must satisfy q > 2, got q = " << q;
    throw DomainError(os.str());
  }
}

void require_valid_gamma(double gamma, double q) {
  const double gm = gamma_max(q);
  if (!(gamma > 0.0) || !(gamma < gm)) {
    std::ostringstream os;
    os << "gamma must lie in (0, gamma_max) = (0, " << gm << "), got " << gamma;
    throw DomainError(os.str());
  }
}

}  // namespace

double rpow(double t, double e) { return std::exp(e * std::log(t)); }

double eval_f(double t, double gamma, double q) {
  if (!(t > 0.0)) throw DomainError("eval_f: t must be positive");
  return t - gamma * rpow(t, q / 2.0 + 1.0) - 1.0;
}

ProfileDerivs eval_f_derivs(double t, double gamma, double q) {
  if (!(t > 0.0)) throw DomainError("eval_f_derivs: t must be positive");
  const double tq2 = rpow(t, q / 2.0);
  ProfileDerivs d;
  d.d1 = 1.0 - gamma * (q + 2.0) / 2.0 * tq2;
  d.d2 = -gamma * q * (q + 2.0) / 4.0 * tq2 / t;
  d.d3 = -gamma * q * (q + 2.0) * (q - 2.0) / 8.0 * tq2 / (t * t);
  return d;
}

double gamma_max(double q) {
  require_valid_q(q);
  return 2.0 / (q + 2.0) * rpow(1.0 + 2.0 / q, -q / 2.0);
}

double critical_point(double gamma, double q) {
  require_valid_q(q);
  require_valid_gamma(gamma, q);
  return rpow(2.0 / (gamma * (q + 2.0)), 2.0 / q);
}

namespace {

// Newton iteration on f with a maintained sign bracket; any step that
// leaves the bracket is replaced by bisection.
double refine_root(double lo, double hi, double gamma, double q) {
  double flo = eval_f(lo, gamma, q);
  double t = 0.5 * (lo + hi);
  const int max_iter = 200;
  for (int it = 0; it < max_iter; ++it) {
    const double ft = eval_f(t, gamma, q);
    if ((ft < 0.0) == (flo < 0.0)) {
      lo = t;
      flo = ft;
    } else {
      hi = t;
    }
    const double d1 = eval_f_derivs(t, gamma, q).d1;
    double tn = (d1 != 0.0) ? t - ft / d1 : 0.5 * (lo + hi);
    if (!(tn > lo && tn < hi)) tn = 0.5 * (lo + hi);
    if (std::abs(tn - t) <= 1e-13 * t) return tn;
    t = tn;
  }
  std::ostringstream os;
  os << "root refinement did not converge: bracket [" << lo << ", " << hi
     << "], last iterate " << t << " (gamma = " << gamma << ", q = " << q << ")";
  throw ConvergenceError(os.str());
}

}  // namespace

OvalShape bracket_roots(double gamma, double q) {
  require_valid_q(q);
  require_valid_gamma(gamma, q);
  const double gm = gamma_max(q);
  const double t0 = critical_point(gamma, q);

  OvalShape s;
  s.gamma = gamma;
  s.t0 = t0;

  if (gm - gamma < 1e-10 * gm) {
    // Nearly degenerate oval: Newton conditioning collapses at the double
    // root, so use the quadratic model f ~ f(t0) + f''(t0)(t-t0)^2/2.
    const double ft0 = eval_f(t0, gamma, q);
    const double d2 = eval_f_derivs(t0, gamma, q).d2;
    const double w = std::sqrt(std::max(-2.0 * ft0 / d2, 0.0));
    s.t1 = t0 - w;
    s.t2 = t0 + w;
    return s;
  }

  // f(1) = -gamma < 0 < f(t0), and f(gamma^{-2/q}) = -1.
  s.t1 = refine_root(1.0, t0, gamma, q);
  s.t2 = refine_root(t0, rpow(gamma, -2.0 / q), gamma, q);
  return s;
}

}  // namespace magsob
