#pragma once

// Stand-alone oracle for Verlinde numbers without marked points, written
// directly from the trigonometric formula in long double arithmetic. It
// shares no code with the library: alcove enumeration, phases and the
// S-matrix row are all recomputed here.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

using Complex = std::complex<long double>;

/// V_{n,d}(g, k) = sum over alcove labels m (m_j >= 1, sum m_j <= r - 1) of
/// e^{-2 pi i sum_j (m_j - 1) c_j} (sqrt(n) r^{(n-1)/2} / prod_{a<b} 2 sin(pi (m_a + ... + m_{b-1}) / r))^{2g-2},
/// with c_j = j d / n - max(0, j - (n - d)) the pairing of omega_j with the
/// central element.
inline Complex verlinde_sine_sum(int n, int d, int g, long k) {
  const long r = k + n;
  const long double pi = std::acos(-1.0L);
  const int l = n - 1;
  std::vector<long double> c(static_cast<std::size_t>(l));
  for (int j = 1; j <= l; ++j) c[j - 1] = static_cast<long double>(j) * d / n - std::max(0, j - (n - d));

  Complex total = 0;
  std::vector<long> m(static_cast<std::size_t>(l), 1);
  std::function<void(int, long)> rec = [&](int j, long used) {
    if (j == l) {
      long double prod = 1;
      for (int a = 0; a < l; ++a) {
        long partial = 0;
        for (int b = a; b < l; ++b) {
          partial += m[b];
          prod *= 2 * std::sin(pi * partial / r);
        }
      }
      long double angle = 0;
      for (int i = 0; i < l; ++i) angle += (m[i] - 1) * c[i];
      const long double base = std::sqrt(static_cast<long double>(n)) * std::pow(static_cast<long double>(r), l / 2.0L) / prod;
      total += std::polar(std::pow(base, 2 * g - 2), -2 * pi * angle);
      return;
    }
    for (long v = 1; used + v <= r - 1; ++v) {
      m[j] = v;
      rec(j + 1, used + v);
    }
  };
  rec(0, 0);
  return total;
}

/// Nearest integer to the real part; the caller checks the residual.
inline std::int64_t rounded(const Complex& z) { return static_cast<std::int64_t>(std::llround(z.real())); }

}  // namespace oracle
