#include "magsob/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "magsob/errors.hpp"
#include "magsob/fourier.hpp"
#include "magsob/profile.hpp"

namespace magsob {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_q(double q) {
  if (!(q > 2.0)) throw DomainError("oracle: q must be > 2");
}

std::vector<cdouble> apply_derivative(const std::vector<cdouble>& u) {
  return spectral_derivative(u);
}

double qnorm_pow(const std::vector<cdouble>& u, double q, double dx) {
  double s = 0.0;
  for (const cdouble& z : u) s += rpow(std::abs(z), q);
  return s * dx;
}

// Objective F = log ||Du + i a u||_2^2 - (2/q) log ||u||_q^q and its
// Wirtinger gradient; also reports the quotient itself.
struct Objective {
  double q, alpha, dx;
  int n;

  struct Eval {
    double F;
    double mu;
    std::vector<cdouble> grad;
  };

  Eval operator()(const std::vector<cdouble>& u) const {
    std::vector<cdouble> Au = apply_derivative(u);
    for (int i = 0; i < n; ++i) Au[i] += cdouble(0.0, alpha) * u[i];
    double N = 0.0;
    for (const cdouble& z : Au) N += std::norm(z);
    N *= dx;
    const double Q = qnorm_pow(u, q, dx);

    // A^dag A u with A = D + i alpha (D anti-Hermitian)
    std::vector<cdouble> AtAu = apply_derivative(Au);
    for (int i = 0; i < n; ++i)
      AtAu[i] = -AtAu[i] - cdouble(0.0, alpha) * Au[i];

    Eval e;
    e.F = std::log(N) - (2.0 / q) * std::log(Q);
    e.mu = std::sqrt(N) / rpow(Q, 1.0 / q);
    e.grad.resize(n);
    for (int i = 0; i < n; ++i) {
      const double m = std::abs(u[i]);
      const cdouble qterm = (m > 0.0) ? rpow(m, q - 2.0) * u[i] : cdouble(0.0, 0.0);
      e.grad[i] = AtAu[i] / N - qterm / Q;
    }
    return e;
  }
};

std::vector<cdouble> precondition(const std::vector<cdouble>& g) {
  const int n = int(g.size());
  std::vector<cdouble> a = g;
  fourier_transform(a, false);
  for (int k = 0; k < n; ++k) {
    const double freq = double(signed_frequency(k, n));
    a[k] /= (1.0 + freq * freq);
  }
  fourier_transform(a, true);
  return a;
}

void renormalize(std::vector<cdouble>& u, double q, double dx) {
  const double Q = qnorm_pow(u, q, dx);
  const double c = rpow(kTwoPi / Q, 1.0 / q);
  for (cdouble& z : u) z *= c;
}

struct StartResult {
  double mu = 0.0;
  std::vector<cdouble> u;
  bool converged = false;
  int iterations = 0;
};

// Barzilai-Borwein steps on the preconditioned gradient with a halving
// safeguard; the q-norm is pinned back to 2 pi after every accepted step.
StartResult descend(std::vector<cdouble> u, const Objective& obj,
                    const OracleConfig& cfg) {
  const double dx = obj.dx;
  renormalize(u, obj.q, dx);
  Objective::Eval cur = obj(u);
  std::vector<cdouble> pg = precondition(cur.grad);
  double eta = 1.0;

  StartResult out;
  int it = 0;
  for (; it < cfg.max_iters; ++it) {
    double gnorm2 = 0.0;
    for (int i = 0; i < obj.n; ++i)
      gnorm2 += (std::conj(cur.grad[i]) * pg[i]).real();
    const double gnorm = std::sqrt(std::max(gnorm2, 0.0) * dx);
    if (gnorm < cfg.grad_tol) {
      out.converged = true;
      break;
    }

    std::vector<cdouble> un(obj.n);
    for (int i = 0; i < obj.n; ++i) un[i] = u[i] - eta * pg[i];
    renormalize(un, obj.q, dx);
    Objective::Eval next = obj(un);

    if (next.F < cur.F) {
      // BB1 step from the accepted move
      double num = 0.0, den = 0.0;
      std::vector<cdouble> dg(obj.n);
      for (int i = 0; i < obj.n; ++i) dg[i] = next.grad[i] - cur.grad[i];
      const std::vector<cdouble> pdg = precondition(dg);
      for (int i = 0; i < obj.n; ++i) {
        const cdouble du = un[i] - u[i];
        num += std::norm(du);
        den += (std::conj(du) * pdg[i]).real();
      }
      eta = (den > 0.0 && std::isfinite(den))
                ? std::clamp(num / den, 1e-8, 1e4)
                : eta * 2.0;
      u = std::move(un);
      cur = std::move(next);
      pg = precondition(cur.grad);
    } else {
      eta *= 0.5;
      if (eta < 1e-14) break;  // stalled at the resolution limit
    }
  }
  out.mu = cur.mu;
  out.u = std::move(u);
  out.iterations = it;
  return out;
}

}  // namespace

double rayleigh_quotient(std::span<const std::complex<double>> u, double q,
                         double alpha) {
  require_q(q);
  const int n = int(u.size());
  if (n == 0) throw DomainError("rayleigh_quotient: empty grid");
  bool all_zero = true;
  for (const auto& z : u)
    if (z != cdouble(0.0, 0.0)) {
      all_zero = false;
      break;
    }
  if (all_zero) throw DomainError("rayleigh_quotient: zero function");

  const double dx = kTwoPi / n;
  std::vector<cdouble> v(u.begin(), u.end());
  std::vector<cdouble> Au = apply_derivative(v);
  for (int i = 0; i < n; ++i) Au[i] += cdouble(0.0, alpha) * v[i];
  double N = 0.0;
  for (const cdouble& z : Au) N += std::norm(z);
  N *= dx;
  return std::sqrt(N) / rpow(qnorm_pow(v, q, dx), 1.0 / q);
}

MinimizeResult minimize_rayleigh(double q, double alpha, const OracleConfig& cfg) {
  require_q(q);
  if (cfg.n < 64) throw DomainError("oracle grid must have n >= 64");

  const int n = cfg.n;
  const double dx = kTwoPi / n;
  const Objective obj{q, alpha, dx, n};

  std::vector<std::pair<std::string, std::vector<cdouble>>> starts;
  if (cfg.start_constant)
    starts.emplace_back("constant", std::vector<cdouble>(n, cdouble(1.0, 0.0)));
  if (cfg.start_modulated) {
    std::vector<cdouble> u(n);
    for (int i = 0; i < n; ++i)
      u[i] = cdouble(1.0 + 0.3 * std::sin(kTwoPi * i / n), 0.0);
    starts.emplace_back("modulated", std::move(u));
  }
  if (cfg.start_random) {
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cdouble> u(n);
    for (int i = 0; i < n; ++i)
      u[i] = cdouble(1.0 + 0.3 * gauss(rng), 0.3 * gauss(rng));
    starts.emplace_back("random", std::move(u));
  }
  if (starts.empty()) throw DomainError("no descent starts configured");

  MinimizeResult best;
  best.mu_est = std::numeric_limits<double>::infinity();
  best.converged_starts = 0;
  for (auto& [tag, u0] : starts) {
    StartResult r = descend(std::move(u0), obj, cfg);
    if (r.converged) ++best.converged_starts;
    if (r.mu < best.mu_est) {
      best.mu_est = r.mu;
      best.u_best = std::move(r.u);
      best.best_start = tag;
      best.iterations = r.iterations;
    }
  }
  if (best.converged_starts == 0) {
    std::ostringstream os;
    os << "no descent start reached grad_tol = " << cfg.grad_tol << " within "
       << cfg.max_iters << " iterations (q = " << q << ", alpha = " << alpha << ")";
    throw ConvergenceError(os.str());
  }

  // gauge fix: global phase so that arg u[0] = 0
  const cdouble u0 = best.u_best.empty() ? cdouble(1, 0) : best.u_best[0];
  if (std::abs(u0) > 0.0) {
    const cdouble rot = std::conj(u0) / std::abs(u0);
    for (cdouble& z : best.u_best) z *= rot;
  }
  return best;
}

double second_order_margin(double q, double alpha) {
  require_q(q);
  return 1.0 - alpha * alpha * (q + 2.0);
}

namespace {

// Jacobi eigenvalue sweep for small dense symmetric matrices.
double smallest_eigenvalue(std::vector<std::vector<double>> a) {
  const int n = int(a.size());
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-24) break;
    for (int p = 0; p < n; ++p) {
      for (int qq = p + 1; qq < n; ++qq) {
        if (std::abs(a[p][qq]) < 1e-18) continue;
        const double theta = (a[qq][qq] - a[p][p]) / (2.0 * a[p][qq]);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][qq];
          a[k][p] = c * akp - s * akq;
          a[k][qq] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[qq][k];
          a[p][k] = c * apk - s * aqk;
          a[qq][k] = s * apk + c * aqk;
        }
      }
    }
  }
  double mn = a[0][0];
  for (int i = 1; i < n; ++i) mn = std::min(mn, a[i][i]);
  return mn;
}

}  // namespace

double second_order_margin_discrete(double q, double alpha, int n) {
  require_q(q);
  if (n < 8 || n % 2 != 0)
    throw DomainError("margin grid must be even and >= 8");

  // Quadratic form h mapsto int (h'^2 - (q+2) a^2 h^2) on zero-mean h,
  // assembled as -Laplacian (spectral, Nyquist included) minus the mass
  // term; the constant mode is pushed away by a large penalty.
  std::vector<std::vector<double>> B(n, std::vector<double>(n, 0.0));
  std::vector<cdouble> col(n);
  for (int j = 0; j < n; ++j) {
    std::fill(col.begin(), col.end(), cdouble(0.0, 0.0));
    col[j] = cdouble(1.0, 0.0);
    fourier_transform(col, false);
    for (int k = 0; k < n; ++k) {
      const double freq = double(signed_frequency(k, n));
      col[k] *= freq * freq;
    }
    fourier_transform(col, true);
    for (int i = 0; i < n; ++i) B[i][j] = col[i].real();
  }
  const double mass = alpha * alpha * (q + 2.0);
  const double penalty = 1e8;
  for (int i = 0; i < n; ++i) {
    B[i][i] -= mass;
    for (int j = 0; j < n; ++j) B[i][j] += penalty / n;
  }
  // symmetrize away roundoff
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = 0.5 * (B[i][j] + B[j][i]);
      B[i][j] = B[j][i] = v;
    }
  return smallest_eigenvalue(std::move(B));
}

int count_modulus_maxima(std::span<const std::complex<double>> u) {
  const int n = int(u.size());
  int count = 0;
  for (int i = 0; i < n; ++i) {
    const double prev = std::abs(u[(i + n - 1) % n]);
    const double cur = std::abs(u[i]);
    const double next = std::abs(u[(i + 1) % n]);
    if (cur > prev && cur > next) ++count;
  }
  return count;
}

}  // namespace magsob
