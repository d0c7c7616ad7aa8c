#include "magsob/fourier.hpp"

#include <cmath>
#include <numbers>

namespace magsob {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fft_radix2(std::vector<cdouble>& a, bool inverse) {
  const std::size_t n = a.size();
  // bit-reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * std::numbers::pi / double(len);
    const cdouble wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cdouble w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cdouble u = a[i + k];
        const cdouble v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

void dft_direct(std::vector<cdouble>& a, bool inverse) {
  const std::size_t n = a.size();
  std::vector<cdouble> out(n, cdouble(0.0, 0.0));
  const double sgn = inverse ? 1.0 : -1.0;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      const double ang = sgn * 2.0 * std::numbers::pi * double(k * j % n) / double(n);
      out[k] += a[j] * cdouble(std::cos(ang), std::sin(ang));
    }
  }
  a = std::move(out);
}

}  // namespace

void fourier_transform(std::vector<cdouble>& a, bool inverse) {
  if (a.empty()) return;
  if (is_pow2(a.size()))
    fft_radix2(a, inverse);
  else
    dft_direct(a, inverse);
  if (inverse) {
    const double inv = 1.0 / double(a.size());
    for (auto& z : a) z *= inv;
  }
}

int signed_frequency(int k, int n) { return (k <= n / 2) ? k : k - n; }

std::vector<cdouble> spectral_derivative(const std::vector<cdouble>& u) {
  const int n = int(u.size());
  std::vector<cdouble> a = u;
  fourier_transform(a, false);
  for (int k = 0; k < n; ++k) {
    int freq = signed_frequency(k, n);
    if (2 * k == n) freq = 0;  // drop the ambiguous Nyquist mode
    a[k] *= cdouble(0.0, double(freq));
  }
  fourier_transform(a, true);
  return a;
}

std::vector<double> spectral_derivative(const std::vector<double>& u) {
  std::vector<cdouble> z(u.begin(), u.end());
  const std::vector<cdouble> d = spectral_derivative(z);
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = d[i].real();
  return out;
}

}  // namespace magsob
