#pragma once

// Exact arithmetic in the cyclotomic fields Q(zeta_N).
//
// An element is a polynomial in zeta_N of degree < phi(N), reduced modulo the
// N-th cyclotomic polynomial, so equality within one conductor is coefficient
// equality. Coefficients are stored as integer numerators over one common
// positive denominator kept in lowest terms. Binary operations on different
// conductors lift both operands to the lcm.

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "verlinde/errors.hpp"
#include "verlinde/rational.hpp"

namespace verlinde {

using FloatReal = boost::multiprecision::mpfr_float;

/// Complex number over MPFR reals. Only what the float backend needs.
struct FloatComplex {
  FloatReal re;
  FloatReal im;

  FloatComplex operator+(const FloatComplex& o) const { return {re + o.re, im + o.im}; }
  FloatComplex operator-(const FloatComplex& o) const { return {re - o.re, im - o.im}; }
  FloatComplex operator*(const FloatComplex& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  FloatComplex operator/(const FloatComplex& o) const {
    FloatReal den = o.re * o.re + o.im * o.im;
    if (den == 0) throw DivisionByZero("complex division by zero");
    return {(re * o.re + im * o.im) / den, (im * o.re - re * o.im) / den};
  }
  FloatReal abs() const { return boost::multiprecision::sqrt(re * re + im * im); }
};

/// Sets the MPFR default precision for the lifetime of the guard.
class FloatPrecisionGuard {
 public:
  explicit FloatPrecisionGuard(unsigned digits10) : saved_(FloatReal::default_precision()) {
    FloatReal::default_precision(digits10);
  }
  ~FloatPrecisionGuard() { FloatReal::default_precision(saved_); }
  FloatPrecisionGuard(const FloatPrecisionGuard&) = delete;
  FloatPrecisionGuard& operator=(const FloatPrecisionGuard&) = delete;

 private:
  unsigned saved_;
};

inline FloatComplex unit_root_float(long N, long a) {
  a %= N;
  if (a < 0) a += N;
  const FloatReal angle = 2 * boost::math::constants::pi<FloatReal>() * a / N;
  return {boost::multiprecision::cos(angle), boost::multiprecision::sin(angle)};
}

namespace detail {

using IntPoly = std::vector<BigInt>;

inline long euler_phi(long N) {
  long result = N;
  long m = N;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

inline IntPoly compute_cyclotomic_poly(long N);

/// Integer coefficients of Phi_N, low degree first. Cached; entries are
/// written once and never mutated.
inline const IntPoly& cyclotomic_poly(long N) {
  static std::mutex mutex;
  static std::map<long, std::shared_ptr<const IntPoly>> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(N);
    if (it != cache.end()) return *it->second;
  }
  auto poly = std::make_shared<const IntPoly>(compute_cyclotomic_poly(N));
  std::lock_guard<std::mutex> lock(mutex);
  auto [it, inserted] = cache.emplace(N, std::move(poly));
  return *it->second;
}

inline IntPoly compute_cyclotomic_poly(long N) {
  // Phi_N = (x^N - 1) / prod_{d | N, d < N} Phi_d, exact division by monic
  // integer polynomials.
  IntPoly num(static_cast<std::size_t>(N + 1));
  num[0] = -1;
  num[static_cast<std::size_t>(N)] = 1;
  for (long d = 1; d < N; ++d) {
    if (N % d != 0) continue;
    const IntPoly& den = cyclotomic_poly(d);
    const std::size_t dd = den.size() - 1;
    IntPoly quot(num.size() - dd);
    for (std::size_t i = num.size(); i-- > dd;) {
      BigInt c = num[i];
      quot[i - dd] = c;
      if (c != 0)
        for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
    }
    num = std::move(quot);
  }
  return num;
}

}  // namespace detail

class Cyclotomic {
 public:
  /// Zero of Q(zeta_1) = Q.
  Cyclotomic() : Cyclotomic(1) {}

  explicit Cyclotomic(long N) : N_(N), num_(static_cast<std::size_t>(detail::euler_phi(check(N)))), den_(1) {}

  static Cyclotomic rational(const BigRational& q, long N = 1) {
    Cyclotomic x(N);
    x.num_[0] = q.get_num();
    x.den_ = q.get_den();
    return x;
  }
  static Cyclotomic integer(long v, long N = 1) { return rational(BigRational(v), N); }

  /// zeta_N^a.
  static Cyclotomic root_of_unity(long N, long a) {
    check(N);
    std::vector<BigInt> dense(static_cast<std::size_t>(N));
    long e = a % N;
    if (e < 0) e += N;
    dense[static_cast<std::size_t>(e)] = 1;
    return from_dense(N, std::move(dense), BigInt(1));
  }

  long conductor() const { return N_; }

  /// Coefficients of zeta_N^j, j < phi(N), in canonical form.
  std::vector<BigRational> coeffs() const {
    std::vector<BigRational> out;
    out.reserve(num_.size());
    for (const auto& c : num_) {
      BigRational q(c, den_);
      q.canonicalize();
      out.push_back(q);
    }
    return out;
  }

  bool is_zero() const {
    for (const auto& c : num_)
      if (c != 0) return false;
    return true;
  }

  bool is_rational() const {
    for (std::size_t j = 1; j < num_.size(); ++j)
      if (num_[j] != 0) return false;
    return true;
  }

  BigRational rational_part() const {
    BigRational q(num_[0], den_);
    q.canonicalize();
    return q;
  }

  /// Same element in Q(zeta_M), M a multiple of N.
  Cyclotomic lift(long M) const {
    if (M == N_) return *this;
    if (M % N_ != 0) throw ValidationError("lift target conductor must be a multiple of the source");
    const long step = M / N_;
    std::vector<BigInt> dense(static_cast<std::size_t>(M));
    for (std::size_t j = 0; j < num_.size(); ++j) dense[j * static_cast<std::size_t>(step)] = num_[j];
    return from_dense(M, std::move(dense), den_);
  }

  /// Galois automorphism zeta -> zeta^a, gcd(a, N) = 1.
  Cyclotomic galois(long a) const {
    if (gcd_long(a, N_) != 1) throw ValidationError("Galois exponent must be coprime to the conductor");
    std::vector<BigInt> dense(static_cast<std::size_t>(N_));
    long am = a % N_;
    if (am < 0) am += N_;
    for (std::size_t j = 0; j < num_.size(); ++j) {
      if (num_[j] == 0) continue;
      dense[static_cast<std::size_t>((static_cast<long>(j) * am) % N_)] += num_[j];
    }
    return from_dense(N_, std::move(dense), den_);
  }

  Cyclotomic conj() const { return galois(N_ - 1 == 0 ? 1 : N_ - 1); }

  Cyclotomic operator-() const {
    Cyclotomic x = *this;
    for (auto& c : x.num_) c = -c;
    return x;
  }

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) { return add(a, b, 1); }
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return add(a, b, -1); }

  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    const long M = lcm_long(a.N_, b.N_);
    const Cyclotomic x = a.lift(M);
    const Cyclotomic y = b.lift(M);
    std::vector<BigInt> prod(x.num_.size() + y.num_.size() - 1);
    for (std::size_t i = 0; i < x.num_.size(); ++i) {
      if (x.num_[i] == 0) continue;
      for (std::size_t j = 0; j < y.num_.size(); ++j) {
        if (y.num_[j] == 0) continue;
        mpz_addmul(prod[i + j].get_mpz_t(), x.num_[i].get_mpz_t(), y.num_[j].get_mpz_t());
      }
    }
    return from_poly(M, std::move(prod), x.den_ * y.den_);
  }

  friend Cyclotomic operator*(const Cyclotomic& a, const BigRational& q) {
    Cyclotomic x = a;
    for (auto& c : x.num_) c *= q.get_num();
    x.den_ *= q.get_den();
    x.normalize();
    return x;
  }
  friend Cyclotomic operator*(const BigRational& q, const Cyclotomic& a) { return a * q; }

  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }

  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

  /// Multiplicative inverse: the product of the nontrivial Galois conjugates
  /// divided by the (rational) field norm.
  Cyclotomic inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero cyclotomic element");
    if (is_rational()) return rational(1 / rational_part(), N_);
    Cyclotomic others = integer(1, N_);
    for (long a = 2; a < N_; ++a) {
      if (gcd_long(a, N_) == 1) others = others * galois(a);
    }
    const Cyclotomic norm = *this * others;
    if (!norm.is_rational()) throw std::logic_error("cyclotomic norm is not rational");
    return others * (1 / norm.rational_part());
  }

  Cyclotomic pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Cyclotomic result = integer(1, N_);
    Cyclotomic base = *this;
    while (e > 0) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    const long M = lcm_long(a.N_, b.N_);
    const Cyclotomic x = a.lift(M);
    const Cyclotomic y = b.lift(M);
    return x.den_ == y.den_ && x.num_ == y.num_;
  }

  /// Evaluation at zeta_N = exp(2 pi i / N) with absolute error below
  /// 10^-digits.
  FloatComplex to_float(unsigned digits = 64) const {
    // Guard digits cover the magnitude of the coefficient sum.
    BigInt mag = 0;
    for (const auto& c : num_) mag += abs(c);
    const unsigned guard = 20 + static_cast<unsigned>(mpz_sizeinbase(mag.get_mpz_t(), 10));
    FloatPrecisionGuard prec(digits + guard);
    FloatComplex acc{0, 0};
    const FloatReal den(den_.get_str());
    for (std::size_t j = 0; j < num_.size(); ++j) {
      if (num_[j] == 0) continue;
      const FloatReal c = FloatReal(num_[j].get_str()) / den;
      const FloatComplex z = unit_root_float(N_, static_cast<long>(j));
      acc.re += c * z.re;
      acc.im += c * z.im;
    }
    return acc;
  }

  std::string to_string() const {
    std::string s;
    const auto cs = coeffs();
    for (std::size_t j = 0; j < cs.size(); ++j) {
      if (cs[j] == 0) continue;
      if (!s.empty()) s += " + ";
      s += "(" + cs[j].get_str() + ")";
      if (j > 0) s += "*z" + std::to_string(N_) + "^" + std::to_string(j);
    }
    return s.empty() ? "0" : s;
  }

 private:
  static long check(long N) {
    if (N < 1) throw ValidationError("cyclotomic conductor must be >= 1");
    return N;
  }

  static Cyclotomic add(const Cyclotomic& a, const Cyclotomic& b, int sign) {
    const long M = lcm_long(a.N_, b.N_);
    Cyclotomic x = a.lift(M);
    const Cyclotomic y = b.lift(M);
    const BigInt xden = x.den_;
    for (std::size_t j = 0; j < x.num_.size(); ++j) {
      x.num_[j] *= y.den_;
      if (sign > 0)
        mpz_addmul(x.num_[j].get_mpz_t(), y.num_[j].get_mpz_t(), xden.get_mpz_t());
      else
        mpz_submul(x.num_[j].get_mpz_t(), y.num_[j].get_mpz_t(), xden.get_mpz_t());
    }
    x.den_ = xden * y.den_;
    x.normalize();
    return x;
  }

  /// Dense vector indexed by exponent mod N (length N).
  static Cyclotomic from_dense(long N, std::vector<BigInt> dense, BigInt den) {
    return from_poly(N, std::move(dense), std::move(den));
  }

  /// Arbitrary-length polynomial in zeta_N; folds x^N = 1 then reduces mod Phi_N.
  static Cyclotomic from_poly(long N, std::vector<BigInt> poly, BigInt den) {
    const auto NN = static_cast<std::size_t>(N);
    if (poly.size() > NN) {
      for (std::size_t i = NN; i < poly.size(); ++i) poly[i % NN] += poly[i];
      poly.resize(NN);
    }
    const auto& phi = detail::cyclotomic_poly(N);
    const std::size_t deg = phi.size() - 1;
    for (std::size_t i = poly.size(); i-- > deg;) {
      if (poly[i] == 0) continue;
      const BigInt c = poly[i];
      for (std::size_t j = 0; j <= deg; ++j) mpz_submul(poly[i - deg + j].get_mpz_t(), c.get_mpz_t(), phi[j].get_mpz_t());
    }
    poly.resize(deg);
    Cyclotomic x(N);
    x.num_ = std::move(poly);
    x.den_ = std::move(den);
    x.normalize();
    return x;
  }

  void normalize() {
    if (den_ < 0) {
      den_ = -den_;
      for (auto& c : num_) c = -c;
    }
    BigInt g = den_;
    for (const auto& c : num_) {
      if (g == 1) break;
      if (c != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    }
    if (is_zero()) {
      den_ = 1;
      return;
    }
    if (g != 1) {
      for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
      mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
    }
  }

  long N_;
  std::vector<BigInt> num_;
  BigInt den_;
};

inline std::ostream& operator<<(std::ostream& os, const Cyclotomic& x) { return os << x.to_string(); }

inline Cyclotomic root_of_unity(long N, long a) { return Cyclotomic::root_of_unity(N, a); }

/// 2 sin(pi m / r) = -i (zeta_{4r}^{2m} - zeta_{4r}^{-2m}), for 0 < m < r.
inline Cyclotomic two_sin(long m, long r) {
  if (m <= 0 || m >= r) throw ValidationError("two_sin requires 0 < m < r (singular sine)");
  const Cyclotomic minus_i = root_of_unity(4, 3);
  return minus_i * (root_of_unity(4 * r, 2 * m) - root_of_unity(4 * r, -2 * m));
}

inline Cyclotomic invert(const Cyclotomic& x) { return x.inverse(); }

/// The integer value of x, or IntegralityError carrying x.
inline BigInt try_integer(const Cyclotomic& x) {
  if (!x.is_rational()) throw IntegralityError("value is not rational", x.to_string());
  const BigRational q = x.rational_part();
  if (!is_integer(q)) throw IntegralityError("value is not an integer", q.get_str());
  return q.get_num();
}

inline FloatComplex to_float(const Cyclotomic& x, unsigned digits = 64) { return x.to_float(digits); }

/// Positive square root of a positive integer, built from quadratic Gauss
/// sums; lives in Q(zeta_{4m}).
inline Cyclotomic sqrt_positive_integer(long m) {
  if (m < 1) throw ValidationError("sqrt_positive_integer needs m >= 1");
  Cyclotomic out = Cyclotomic::integer(1);
  long rest = m;
  for (long p = 2; p <= rest; ++p) {
    if (rest % p != 0) continue;
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) out = out * Cyclotomic::integer(p);
    if (e % 2 == 0) continue;
    Cyclotomic root;
    if (p == 2) {
      root = root_of_unity(8, 1) + root_of_unity(8, -1);
    } else {
      Cyclotomic gauss(p);
      for (long a = 1; a < p; ++a) {
        // Legendre symbol via Euler's criterion.
        long s = 1, base = a % p, ex = (p - 1) / 2;
        while (ex > 0) {
          if (ex & 1) s = s * base % p;
          base = base * base % p;
          ex >>= 1;
        }
        gauss = gauss + (s == 1 ? root_of_unity(p, a) : -root_of_unity(p, a));
      }
      root = (p % 4 == 1) ? gauss : root_of_unity(4, 3) * gauss;
    }
    if (root.to_float(30).re < 0) root = -root;
    out = out * root;
  }
  return out;
}

}  // namespace verlinde
