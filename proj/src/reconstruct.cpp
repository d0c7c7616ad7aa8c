#include "magsob/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>

#include "magsob/errors.hpp"
#include "magsob/fourier.hpp"

namespace magsob {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Monotone cubic interpolant (Fritsch-Carlson slopes); the data here is
// strictly monotone, so the limiter only guards roundoff.
class MonotoneCubic {
 public:
  MonotoneCubic(std::vector<double> x, std::vector<double> y)
      : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      h[i] = x_[i + 1] - x_[i];
      delta[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    d_.assign(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (delta[i - 1] * delta[i] <= 0.0) {
        d_[i] = 0.0;
      } else {
        const double w1 = 2.0 * h[i] + h[i - 1];
        const double w2 = h[i] + 2.0 * h[i - 1];
        d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
      }
    }
    d_[0] = edge_slope(h[0], h[1], delta[0], delta[1]);
    d_[n - 1] = edge_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  }

  double operator()(double x) const {
    const std::size_t n = x_.size();
    if (x <= x_.front()) return y_.front();
    if (x >= x_.back()) return y_.back();
    std::size_t i = std::upper_bound(x_.begin(), x_.end(), x) - x_.begin() - 1;
    if (i >= n - 1) i = n - 2;
    const double h = x_[i + 1] - x_[i];
    const double s = (x - x_[i]) / h;
    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1;
    const double h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2;
    const double h11 = s3 - s2;
    return h00 * y_[i] + h * h10 * d_[i] + h01 * y_[i + 1] + h * h11 * d_[i + 1];
  }

 private:
  // Three-point one-sided slope, clamped as in the classic shape-preserving
  // boundary treatment.
  static double edge_slope(double h0, double h1, double del0, double del1) {
    double d = ((2.0 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
    if (d * del0 <= 0.0)
      d = 0.0;
    else if (del0 * del1 < 0.0 && std::abs(d) > 3.0 * std::abs(del0))
      d = 3.0 * del0;
    return d;
  }

  std::vector<double> x_, y_, d_;
};

}  // namespace

MinimizerSample constant_sample(double q, double alpha, int n) {
  if (n < 16 || n % 2 != 0)
    throw DomainError("sample grid size must be even and >= 16");
  MinimizerSample s;
  s.x.resize(n + 1);
  s.r.assign(n + 1, 1.0);
  s.theta.assign(n + 1, 0.0);
  for (int i = 0; i <= n; ++i) s.x[i] = kTwoPi * i / n;
  s.a = alpha;
  s.lambda = alpha * alpha;
  s.mu = rpow(kTwoPi, 0.5 - 1.0 / q) * std::abs(alpha);
  s.residuals = compute_residuals(s, q, alpha);
  return s;
}

MinimizerSample sample_minimizer(const OvalSolution& sol, double q, double alpha,
                                 int n, const QuadratureConfig& cfg) {
  if (n < 16 || n % 2 != 0)
    throw DomainError("sample grid size must be even and >= 16");
  if (!(sol.gamma > 0.0) || !(sol.r1 < 1.0 && sol.r2 > 1.0) || sol.r1 == sol.r2)
    throw DomainError(
        "sample_minimizer needs a symmetry-broken oval solution; the constant "
        "profile is produced by constant_sample");

  const double gamma = sol.gamma;
  const double one2q = 1.0 + 2.0 / q;
  const double s_ratio = sol.a * sol.a / sol.lambda;  // a^2/lambda
  const OvalShape shape = bracket_roots(gamma, q);

  // Chebyshev-Lobatto t-nodes concentrate where r' -> 0; x(t) and the
  // half-phase come from the partial integrals at those nodes.
  const int K = std::max(8 * n, 4096);
  std::vector<double> tn(K + 1), xn(K + 1), ph(K + 1);
  const double mid = 0.5 * (shape.t1 + shape.t2);
  const double half = 0.5 * (shape.t2 - shape.t1);
  const double Pfull = period_integral(gamma, q, cfg);
  const double Mfull = flux_integral(gamma, q, cfg);
  for (int j = 0; j <= K; ++j) {
    tn[j] = mid - half * std::cos(kPi * j / K);
  }
  tn[0] = shape.t1;
  tn[K] = shape.t2;
  for (int j = 0; j <= K; ++j) {
    if (j == 0) {
      xn[j] = 0.0;
      ph[j] = 0.0;
    } else if (j == K) {
      xn[j] = Pfull;
      ph[j] = Mfull;
    } else {
      xn[j] = partial_period_integral(gamma, q, tn[j], cfg);
      ph[j] = partial_flux_integral(gamma, q, tn[j], cfg);
    }
  }
  // rescale so x(t2) = pi exactly
  const double xscale = kPi / xn[K];
  for (double& v : xn) v *= xscale;

  const MonotoneCubic t_of_x(xn, tn);
  const MonotoneCubic phi_of_x(xn, ph);

  const double sign = (alpha < 0.0) ? -1.0 : 1.0;

  MinimizerSample out;
  out.x.resize(n + 1);
  out.r.resize(n + 1);
  out.theta.resize(n + 1);
  out.a = sol.a;
  out.lambda = sol.lambda;
  out.mu = sol.mu;

  std::vector<double> phi(n + 1);
  const int nh = n / 2;
  for (int i = 0; i <= nh; ++i) {
    const double x = kTwoPi * i / n;
    out.x[i] = x;
    const double t = t_of_x(x);
    out.r[i] = std::sqrt(s_ratio * t / one2q);
    phi[i] = 0.5 * sign * phi_of_x(x);  // d phi = (1/2) dt/(t sqrt(f))
  }
  out.r[0] = sol.r1;
  out.r[nh] = sol.r2;
  // falling half by reflection: r(2 pi - x) = r(x), phi(2 pi - x) = 2 phi(pi) - phi(x)
  for (int i = nh + 1; i <= n; ++i) {
    out.x[i] = kTwoPi * i / n;
    out.r[i] = out.r[n - i];
    phi[i] = 2.0 * phi[nh] - phi[n - i];
  }
  for (int i = 0; i <= n; ++i) out.theta[i] = phi[i] - alpha * out.x[i];

  out.residuals = compute_residuals(out, q, alpha);
  return out;
}

SampleResiduals compute_residuals(const MinimizerSample& s, double q, double alpha) {
  const int n = int(s.x.size()) - 1;
  const double dx = kTwoPi / n;

  // periodic samples (drop the duplicated endpoint)
  std::vector<double> r(s.r.begin(), s.r.end() - 1);

  double norm = 0.0, flux = 0.0;
  for (int i = 0; i < n; ++i) {
    norm += rpow(r[i], q);
    flux += s.a / (r[i] * r[i]);
  }
  SampleResiduals res;
  res.norm_residual = std::abs(norm * dx - kTwoPi);
  res.flux_residual = std::abs(flux * dx - kTwoPi * alpha);

  const std::vector<double> rp = spectral_derivative(r);
  double energy = 0.0;
  for (int i = 0; i < n; ++i)
    energy += rp[i] * rp[i] + s.a * s.a / (r[i] * r[i]);
  res.energy = energy * dx;

  // Second differences, skipping the 2 points nearest each modulus extremum
  // (x = 0, pi, 2 pi) where interpolation error dominates.
  double worst = 0.0;
  for (int i = 1; i < n; ++i) {
    const double x = s.x[i];
    const double dist = std::min({std::abs(x), std::abs(x - kPi), std::abs(x - kTwoPi)});
    if (dist <= 2.0 * dx * (1.0 + 1e-12)) continue;
    const double rxx = (s.r[i - 1] - 2.0 * s.r[i] + s.r[i + 1]) / (dx * dx);
    const double ri = s.r[i];
    const double resid =
        -rxx + s.a * s.a / (ri * ri * ri) - s.lambda * rpow(ri, q - 1.0);
    worst = std::max(worst, std::abs(resid));
  }
  res.ode_residual = worst;
  return res;
}

double first_integral_drift(const MinimizerSample& s, double q) {
  const int n = int(s.x.size()) - 1;
  std::vector<double> r(s.r.begin(), s.r.end() - 1);
  const std::vector<double> rp = spectral_derivative(r);
  const double two_c = 2.0 * s.lambda * (0.5 + 1.0 / q);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double val =
        rp[i] * rp[i] + s.a * s.a / (r[i] * r[i]) + (2.0 * s.lambda / q) * rpow(r[i], q);
    worst = std::max(worst, std::abs(val - two_c));
  }
  return worst / two_c;
}

void write_minimizer_csv(const MinimizerSample& s, std::ostream& os) {
  os << "x,r,theta,re_u,im_u\n";
  char buf[160];
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    const std::complex<double> u = s.u(i);
    std::snprintf(buf, sizeof(buf), "%.16e,%.16e,%.16e,%.16e,%.16e\n", s.x[i],
                  s.r[i], s.theta[i], u.real(), u.imag());
    os << buf;
  }
}

}  // namespace magsob
