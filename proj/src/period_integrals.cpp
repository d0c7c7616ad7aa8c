#include "magsob/period_integrals.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <vector>

#include "magsob/errors.hpp"

namespace magsob {

namespace {

constexpr double kPi = std::numbers::pi;

// Below this fraction of gamma_max the oval is stretched enough
// (t2 ~ gamma^{-2/q}) that the single weighted rule stalls; switch to the
// split-and-substitute scheme.
constexpr double kSplitFraction = 0.05;

// ---------------------------------------------------------------------------
// Gauss-Legendre nodes on [0, 1], cached per order.

struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

GaussRule make_legendre(int n) {
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-based initial guess, then Newton on P_n.
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p0 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    // map [-1,1] -> [0,1]
    r.x[i] = 0.5 * (1.0 - z);
    r.x[n - 1 - i] = 0.5 * (1.0 + z);
    r.w[i] = r.w[n - 1 - i] = 1.0 / ((1.0 - z * z) * pp * pp);
  }
  return r;
}

const GaussRule& legendre_rule(int n) {
  static std::mutex mtx;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_legendre(n)).first;
  return it->second;
}

// ---------------------------------------------------------------------------
// Oval context: roots plus frozen endpoint derivatives for the Taylor-safe
// evaluation of the smooth factor.

struct Oval {
  double gamma, q;
  double t1, t0, t2;
  ProfileDerivs d1;  // derivatives of f at t1
  ProfileDerivs d2;  // derivatives of f at t2
  double switch_left;   // distance below which w_left uses the Taylor form
  double switch_right;

  Oval(double gamma_, double q_, double delta) : gamma(gamma_), q(q_) {
    const OvalShape s = bracket_roots(gamma_, q_);
    t1 = s.t1;
    t0 = s.t0;
    t2 = s.t2;
    d1 = eval_f_derivs(t1, gamma_, q_);
    d2 = eval_f_derivs(t2, gamma_, q_);
    // The Taylor form is valid over distances set by the local scale of f's
    // derivatives (~ the root location), not by the oval length, which can
    // be orders of magnitude larger on stretched ovals.
    const double len = t2 - t1;
    switch_left = delta * std::min(len, t1);
    switch_right = delta * std::min(len, t2);
  }

  // f(t)/(t - t1): direct quotient away from t1, cubic Taylor of f near it.
  double w_left(double t) const {
    const double d = t - t1;
    if (d > switch_left) return eval_f(t, gamma, q) / d;
    return d1.d1 + d1.d2 * d / 2.0 + d1.d3 * d * d / 6.0;
  }

  // f(t)/(t2 - t), same treatment at the right root.
  double w_right(double t) const {
    const double d = t2 - t;
    if (d > switch_right) return eval_f(t, gamma, q) / d;
    return -d2.d1 + d2.d2 * d / 2.0 - d2.d3 * d * d / 6.0;
  }

  // Smooth factor g(t) = f(t)/((t-t1)(t2-t)) > 0 on [t1, t2].
  double g(double t) const {
    const double dl = t - t1;
    const double dr = t2 - t;
    return (dl <= dr) ? w_left(t) / dr : w_right(t) / dl;
  }
};

// Dyadic panel edges [0, a, 2a, 4a, ...] covering [0, width]; resolves the
// 1/t decay of the integrand on stretched left halves.
std::vector<double> dyadic_panels(double width, double first) {
  std::vector<double> e{0.0};
  double a = std::min(first, width);
  while (e.back() < width) {
    e.push_back(std::min(e.back() + a, width));
    a *= 2.0;
  }
  return e;
}

// int_{t1}^{tend} dt / (t^power sqrt(f)) via u = sqrt(t - t1).
double left_partial(const Oval& ov, double tend, int power, int nleg) {
  if (tend <= ov.t1) return 0.0;
  const GaussRule& gl = legendre_rule(nleg);
  const double U = std::sqrt(tend - ov.t1);
  const auto edges = dyadic_panels(U, std::min(std::sqrt(ov.t1), U));
  double s = 0.0;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double lo = edges[p], len = edges[p + 1] - edges[p];
    for (int i = 0; i < nleg; ++i) {
      const double u = lo + len * gl.x[i];
      const double t = ov.t1 + u * u;
      const double den = (power == 1 ? t : 1.0) * std::sqrt(ov.w_left(t));
      s += gl.w[i] * len * 2.0 / den;
    }
  }
  return s;
}

// int_{tend}^{t2} dt / (t^power sqrt(f)) via v = sqrt(t2 - t).
double right_partial(const Oval& ov, double tend, int power, int nleg) {
  if (tend >= ov.t2) return 0.0;
  const GaussRule& gl = legendre_rule(nleg);
  const double V = std::sqrt(ov.t2 - tend);
  double s = 0.0;
  for (int i = 0; i < nleg; ++i) {
    const double v = V * gl.x[i];
    const double t = ov.t2 - v * v;
    const double den = (power == 1 ? t : 1.0) * std::sqrt(ov.w_right(t));
    s += gl.w[i] * V * 2.0 / den;
  }
  return s;
}

// Full integral int dt/(t^power sqrt(f)) with the Gauss-Chebyshev weight
// 1/sqrt((t-t1)(t2-t)); exact spectral convergence for compact ovals.
double cheb_weighted(const Oval& ov, int power, int n) {
  const double m = 0.5 * (ov.t1 + ov.t2);
  const double h = 0.5 * (ov.t2 - ov.t1);
  double s = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double th = (2.0 * k - 1.0) * kPi / (2.0 * n);
    const double t = m + h * std::cos(th);
    s += 1.0 / ((power == 1 ? t : 1.0) * std::sqrt(ov.g(t)));
  }
  return s * kPi / n;
}

bool use_split(double gamma, double q) {
  return gamma < kSplitFraction * gamma_max(q);
}

double full_integral(double gamma, double q, int power, const QuadratureConfig& cfg) {
  const Oval ov(gamma, q, cfg.endpoint_taylor_delta);
  if (use_split(gamma, q)) {
    return left_partial(ov, ov.t0, power, cfg.n_legendre) +
           right_partial(ov, ov.t0, power, cfg.n_legendre);
  }
  return cheb_weighted(ov, power, cfg.n_nodes);
}

}  // namespace

void QuadratureConfig::validate() const {
  if (n_nodes < 16 || n_legendre < 16)
    throw DomainError("QuadratureConfig: node counts must be >= 16");
  if (!(endpoint_taylor_delta > 0.0) || !(endpoint_taylor_delta < 0.1))
    throw DomainError("QuadratureConfig: endpoint_taylor_delta must be in (0, 0.1)");
}

double flux_integral(double gamma, double q, const QuadratureConfig& cfg) {
  cfg.validate();
  return full_integral(gamma, q, 1, cfg);
}

double flux_integral_checked(double gamma, double q, const QuadratureConfig& cfg,
                             double rel_tol) {
  const double a = flux_integral(gamma, q, cfg);
  QuadratureConfig dbl = cfg;
  dbl.n_nodes *= 2;
  dbl.n_legendre *= 2;
  const double b = flux_integral(gamma, q, dbl);
  if (std::abs(a - b) > rel_tol * std::abs(b)) {
    std::ostringstream os;
    os << "flux integral did not converge: N = " << cfg.n_nodes << " gives " << a
       << ", doubled nodes give " << b << " (gamma = " << gamma << ", q = " << q << ")";
    throw ConvergenceError(os.str());
  }
  return b;
}

double period_integral(double gamma, double q, const QuadratureConfig& cfg) {
  cfg.validate();
  return full_integral(gamma, q, 0, cfg);
}

namespace {

double partial_integral(double gamma, double q, double t, int power,
                        const QuadratureConfig& cfg) {
  cfg.validate();
  const Oval ov(gamma, q, cfg.endpoint_taylor_delta);
  if (!(t >= ov.t1 && t <= ov.t2)) {
    std::ostringstream os;
    os << "partial integral endpoint t = " << t << " outside [t1, t2] = ["
       << ov.t1 << ", " << ov.t2 << "]";
    throw DomainError(os.str());
  }
  if (t <= ov.t0) return left_partial(ov, t, power, cfg.n_legendre);
  return left_partial(ov, ov.t0, power, cfg.n_legendre) +
         right_partial(ov, ov.t0, power, cfg.n_legendre) -
         right_partial(ov, t, power, cfg.n_legendre);
}

}  // namespace

double partial_period_integral(double gamma, double q, double t,
                               const QuadratureConfig& cfg) {
  return partial_integral(gamma, q, t, 0, cfg);
}

double partial_flux_integral(double gamma, double q, double t,
                             const QuadratureConfig& cfg) {
  return partial_integral(gamma, q, t, 1, cfg);
}

double h_beta(double t, double gamma, double q, double beta) {
  const double ff = eval_f(t, gamma, q);
  const ProfileDerivs d = eval_f_derivs(t, gamma, q);
  return beta * (3.0 * d.d1 * d.d1 * d.d2 + 2.0 * ff * d.d1 * d.d3 -
                 6.0 * ff * d.d2 * d.d2) -
         q * (q - 2.0) * rpow(t, q / 2.0 - 2.0) / 2.0;
}

double beta_choice(double gamma, double q) {
  const double t0 = critical_point(gamma, q);
  const double ft0 = eval_f(t0, gamma, q);
  if (!(ft0 > 0.0)) throw DomainError("beta_choice: f(t0) must be positive");
  const double d2 = eval_f_derivs(t0, gamma, q).d2;
  return -q * (q - 2.0) * rpow(t0, q / 2.0 - 2.0) / (12.0 * ft0 * d2 * d2);
}

double flux_integral_derivative(double gamma, double q, const QuadratureConfig& cfg) {
  cfg.validate();
  const Oval ov(gamma, q, cfg.endpoint_taylor_delta);
  const double beta = beta_choice(gamma, q);

  const auto shape_factor = [&](double t) {
    const ProfileDerivs d = eval_f_derivs(t, gamma, q);
    const double ff = eval_f(t, gamma, q);
    const double psi = d.d1 * d.d1 - 2.0 * ff * d.d2;
    return d.d1 * h_beta(t, gamma, q, beta) / (psi * psi);
  };

  if (use_split(gamma, q)) {
    // sqrt(f) = u sqrt(w): the substituted integrands vanish quadratically
    // at the roots, so plain Gauss-Legendre applies on each panel.
    const GaussRule& gl = legendre_rule(cfg.n_legendre);
    double s = 0.0;
    const double U = std::sqrt(ov.t0 - ov.t1);
    const auto edges = dyadic_panels(U, std::min(std::sqrt(ov.t1), U));
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
      const double lo = edges[p], len = edges[p + 1] - edges[p];
      for (int i = 0; i < cfg.n_legendre; ++i) {
        const double u = lo + len * gl.x[i];
        const double t = ov.t1 + u * u;
        s += gl.w[i] * len * 2.0 * u * u * std::sqrt(ov.w_left(t)) * shape_factor(t);
      }
    }
    const double V = std::sqrt(ov.t2 - ov.t0);
    for (int i = 0; i < cfg.n_legendre; ++i) {
      const double v = V * gl.x[i];
      const double t = ov.t2 - v * v;
      s += gl.w[i] * V * 2.0 * v * v * std::sqrt(ov.w_right(t)) * shape_factor(t);
    }
    return s;
  }

  // sqrt(f) = sqrt((t-t1)(t2-t)) sqrt(g): pull the root factor into a
  // Chebyshev weight of the second kind.
  const int n = cfg.n_legendre;
  const double m = 0.5 * (ov.t1 + ov.t2);
  const double h = 0.5 * (ov.t2 - ov.t1);
  double s = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double th = k * kPi / (n + 1.0);
    const double t = m + h * std::cos(th);
    const double sn = std::sin(th);
    s += sn * sn * std::sqrt(ov.g(t)) * shape_factor(t);
  }
  return s * h * h * kPi / (n + 1.0);
}

HFamily h_family(double t, double gamma, double q) {
  if (!(t > 0.0)) throw DomainError("h_family: t must be positive");
  const double tq2 = rpow(t, q / 2.0);        // t^{q/2}
  const double tq2p1 = tq2 * t;               // t^{q/2+1}
  const double tqp1 = tq2 * tq2 * t;          // t^{q+1}
  HFamily r;
  r.h = 4.0 * (q - 2.0) - 4.0 * (q + 1.0) * t -
        4.0 * gamma * (q + 1.0) * (q - 2.0) * tq2p1 +
        4.0 * gamma * (q + 2.0) * (q + 1.0) * tq2 +
        gamma * gamma * (q + 2.0) * (q - 2.0) * tqp1;
  r.h1 = (q + 1.0) * (-4.0 - 2.0 * gamma * (q - 2.0) * (q + 2.0) * tq2 +
                      2.0 * gamma * q * (q + 2.0) * tq2 / t +
                      gamma * gamma * (q + 2.0) * (q - 2.0) * tq2 * tq2);
  r.h2 = -gamma * q * (q + 1.0) * (q - 2.0) * (q + 2.0) * rpow(t, q / 2.0 - 2.0) *
         eval_f(t, gamma, q);
  return r;
}

}  // namespace magsob
