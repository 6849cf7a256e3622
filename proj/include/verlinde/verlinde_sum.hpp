#pragma once

// Alcove-weight sums: S-matrix entries of affine su(n) at level k = r - n
// and the Verlinde numbers built from them, in exact cyclotomic arithmetic.
//
// Alcove labels mu are regular dominant (already rho-shifted). The pairing
// in s_pair is <v(lambda + rho), mu>, which makes s_pair(0, mu) = s_zero(mu)
// exactly through the Weyl denominator identity.

#include <vector>

#include "verlinde/cyclotomic.hpp"
#include "verlinde/errors.hpp"
#include "verlinde/problem.hpp"
#include "verlinde/rational.hpp"
#include "verlinde/root_system.hpp"

namespace verlinde {

namespace detail {

inline void check_alcove_label(int n, long r, const Weight& mu) {
  if (mu.n() != n) throw ValidationError("alcove label has the wrong rank");
  if (!mu.is_regular_dominant()) throw ValidationError("alcove label mu is not regular (a sine factor vanishes)");
  if (mu.level() >= r) throw ValidationError("alcove label mu lies outside Delta(r)");
}

/// 1 / (sqrt(n) r^{(n-1)/2}) = sqrt(n)/n * r^{-floor(l/2)} * (sqrt(r)/r)^{l mod 2}.
inline Cyclotomic s_matrix_prefactor(int n, long r) {
  const int l = n - 1;
  Cyclotomic out = sqrt_positive_integer(n) * BigRational(1, n);
  out = out * qpow(BigRational(r), -(l / 2));
  if (l % 2 == 1) out = out * sqrt_positive_integer(r) * BigRational(1, r);
  return out;
}

/// e^{-2 pi i x} for x with denominator dividing `den`.
inline Cyclotomic phase_of(const BigRational& x, long den) {
  const BigRational e = -x * BigRational(den);
  if (!is_integer(e)) throw std::logic_error("phase exponent has unexpected denominator");
  return root_of_unity(den, e.get_num().get_si() % den);
}

}  // namespace detail

/// S_{0 mu}(r) = (1 / (sqrt(n) r^{(n-1)/2})) prod_{gamma > 0} 2 sin(pi <gamma, mu> / r).
inline Cyclotomic s_zero(const ProblemSpec& spec, const Weight& mu) {
  const long r = spec.r();
  detail::check_alcove_label(spec.n, r, mu);
  const RootSystemA rs = build_root_system(spec.n);
  Cyclotomic sines = Cyclotomic::integer(1);
  for (const auto& gamma : rs.positive_roots) sines = sines * two_sin(gamma.pair(mu), r);
  return detail::s_matrix_prefactor(spec.n, r) * sines;
}

/// i^{n(n-1)/2} / (sqrt(n) r^{(n-1)/2}) sum_{v in W} (-1)^v e^{-2 pi i <v(lambda + rho), mu> / r}.
inline Cyclotomic s_pair(const ProblemSpec& spec, const Weight& lambda, const Weight& mu) {
  const long r = spec.r();
  const int n = spec.n;
  detail::check_alcove_label(n, r, mu);
  if (lambda.n() != n) throw ValidationError("weight lambda has the wrong rank");
  if (!lambda.is_dominant()) throw ValidationError("weight lambda is not dominant");
  if (lambda.level() > r - n) throw ValidationError("weight lambda exceeds the level");
  const TVector shifted = (lambda + Weight::rho(n)).to_tvector();
  const TVector mu_t = mu.to_tvector();
  Cyclotomic acc(n * r);
  for (const auto& v : weyl_group(n)) {
    const Cyclotomic term = detail::phase_of(inner(v.apply(shifted), mu_t) / BigRational(r), n * r);
    acc = (v.sign() > 0) ? acc + term : acc - term;
  }
  const Cyclotomic i_power = root_of_unity(4, (n * (n - 1) / 2) % 4);
  return i_power * detail::s_matrix_prefactor(n, r) * acc;
}

/// e^{-2 pi i <mu - rho, c_tilde>}, an n-th root of unity.
inline Cyclotomic central_phase(const ProblemSpec& spec, const Weight& mu) {
  detail::check_alcove_label(spec.n, spec.r(), mu);
  const CentralElement c = central_element(spec.n, spec.d);
  return detail::phase_of(inner((mu - Weight::rho(spec.n)).to_tvector(), c.c_tilde), spec.n);
}

/// sum_{mu in Delta(r)} phase(mu) prod_s S_{lambda_s mu} / S_{0 mu}^{2g-2+b}, exact.
inline Cyclotomic alcove_sum_exact(const ProblemSpec& spec) {
  validate_problem(spec);
  const long r = spec.r();
  const int power = 2 * spec.g - 2 + spec.b();
  Cyclotomic total = Cyclotomic::integer(0);
  for (const auto& mu : enumerate_alcove(spec.n, static_cast<int>(r))) {
    Cyclotomic term = central_phase(spec, mu) * s_zero(spec, mu).pow(-power);
    for (const auto& lam : spec.weights) term = term * s_pair(spec, lam, mu);
    total = total + term;
  }
  return total;
}

/// Verlinde number of the moduli space itself (no marked points).
inline BigInt verlinde_number(const ProblemSpec& spec) {
  if (spec.b() != 0) throw ValidationError("verlinde_number expects no parabolic weights");
  return try_integer(alcove_sum_exact(spec));
}

inline BigInt parabolic_one_point(const ProblemSpec& spec) {
  if (spec.b() != 1) throw ValidationError("parabolic_one_point expects exactly one weight");
  return try_integer(alcove_sum_exact(spec));
}

inline BigInt parabolic_multi_point(const ProblemSpec& spec) {
  if (spec.b() < 1) throw ValidationError("parabolic_multi_point expects at least one weight");
  return try_integer(alcove_sum_exact(spec));
}

/// Dispatch on b.
inline BigInt verlinde_by_sum(const ProblemSpec& spec) { return try_integer(alcove_sum_exact(spec)); }

// ---------------------------------------------------------------------------
// Float backend: the same alcove sum evaluated directly in MPFR arithmetic.

inline FloatComplex alcove_sum_float(const ProblemSpec& spec, unsigned digits = 64) {
  validate_problem(spec);
  FloatPrecisionGuard prec(digits + 20);
  const int n = spec.n;
  const long r = spec.r();
  const int l = n - 1;
  const RootSystemA rs = build_root_system(n);
  const FloatReal pi = boost::math::constants::pi<FloatReal>();
  const FloatReal prefactor =
      1 / (boost::multiprecision::sqrt(FloatReal(n)) * boost::multiprecision::pow(FloatReal(r), FloatReal(l) / 2));
  const int power = 2 * spec.g - 2 + spec.b();
  const CentralElement c = central_element(n, spec.d);
  const auto W = weyl_group(n);
  auto phase = [&](const BigRational& x) {
    const FloatReal angle = -2 * pi * FloatReal(x.get_num().get_str()) / FloatReal(x.get_den().get_str());
    return FloatComplex{boost::multiprecision::cos(angle), boost::multiprecision::sin(angle)};
  };
  FloatComplex i_power{1, 0};
  for (int j = 0; j < rs.n_plus; ++j) i_power = i_power * FloatComplex{0, 1};

  FloatComplex total{0, 0};
  for (const auto& mu : enumerate_alcove(n, static_cast<int>(r))) {
    FloatReal s0 = prefactor;
    for (const auto& gamma : rs.positive_roots) s0 *= 2 * boost::multiprecision::sin(pi * gamma.pair(mu) / r);
    FloatComplex term = phase(inner((mu - Weight::rho(n)).to_tvector(), c.c_tilde));
    term = term / FloatComplex{boost::multiprecision::pow(s0, power), 0};
    const TVector mu_t = mu.to_tvector();
    for (const auto& lam : spec.weights) {
      const TVector shifted = (lam + Weight::rho(n)).to_tvector();
      FloatComplex acc{0, 0};
      for (const auto& v : W) {
        const FloatComplex z = phase(inner(v.apply(shifted), mu_t) / BigRational(r));
        acc = (v.sign() > 0) ? acc + z : acc - z;
      }
      term = term * i_power * FloatComplex{prefactor, 0} * acc;
    }
    total = total + term;
  }
  return total;
}

/// Nearest integer to the float alcove sum; IntegralityError when the value
/// is not within `tol` of an integer on the real axis.
inline BigInt verlinde_by_sum_float(const ProblemSpec& spec, unsigned digits = 64, double tol = 1e-9) {
  const FloatComplex v = alcove_sum_float(spec, digits);
  FloatPrecisionGuard prec(digits + 20);
  const FloatReal rounded = boost::multiprecision::round(v.re);
  if (boost::multiprecision::abs(v.re - rounded) > tol || boost::multiprecision::abs(v.im) > tol)
    throw IntegralityError("float alcove sum is not near an integer", v.re.str(30) + " + " + v.im.str(30) + "i");
  BigInt out;
  mpfr_get_z(out.get_mpz_t(), rounded.backend().data(), MPFR_RNDN);
  return out;
}

}  // namespace verlinde
