#include <gtest/gtest.h>

#include <random>

#include "grid.hpp"
#include "oracle/sine_sum_oracle.hpp"
#include "verlinde/residue.hpp"
#include "verlinde/verlinde_sum.hpp"

using namespace verlinde;

namespace {

Exponent ex(std::initializer_list<int> e) { return Exponent(e); }

LaurentSeries random_power_series(std::mt19937& rng, int nvars, int cap) {
  std::uniform_int_distribution<int> coef(-4, 4), deg(0, 2);
  LaurentSeries s = LaurentSeries::constant(nvars, 1 + (rng() % 3));
  for (int t = 0; t < 5; ++t) {
    Exponent e(static_cast<std::size_t>(nvars));
    for (auto& x : e) x = deg(rng);
    s = s + LaurentSeries::monomial(e, make_rational(coef(rng), 1 + t));
  }
  return s.truncated(TailBounds(static_cast<std::size_t>(nvars), cap));
}

/// Bernoulli numbers (B_1 = -1/2) by the Akiyama-Tanigawa algorithm.
std::vector<BigRational> bernoulli_numbers(int count) {
  std::vector<BigRational> out, a(static_cast<std::size_t>(count));
  for (int m = 0; m < count; ++m) {
    a[m] = BigRational(1, m + 1);
    for (int j = m; j >= 1; --j) {
      a[j - 1] = BigRational(j) * (a[j - 1] - a[j]);
      a[j - 1].canonicalize();
    }
    out.push_back(a[0]);
  }
  out[1] = -out[1];  // the algorithm yields B_1 = +1/2
  return out;
}

}  // namespace

TEST(LaurentSeries, ProductAndCap) {
  const auto a = LaurentSeries::monomial(ex({1, 0}), 2) + LaurentSeries::constant(2, 1);
  const auto b = LaurentSeries::monomial(ex({0, 1}), 3);
  const auto p = a * b;
  EXPECT_EQ(p.coefficient(ex({1, 1})), 6);
  EXPECT_EQ(p.coefficient(ex({0, 1})), 3);
  const auto t = p.truncated({1, 1});
  EXPECT_THROW(t.coefficient(ex({1, 1})), TruncationError);
  EXPECT_EQ(t.coefficient(ex({0, 1})), 3);
}

TEST(LaurentSeries, RingLawsOnRandomSeries) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_power_series(rng, 2, 4), b = random_power_series(rng, 2, 4), c = random_power_series(rng, 2, 4);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    const auto one = (a * a.inverse()).truncated({4, 4});
    EXPECT_EQ(one, LaurentSeries::constant(2, 1));
  }
}

TEST(LaurentSeries, ResidueOfSimpleArrangementVanishes) {
  // 1/(Y1 Y2 (Y1 + Y2)) with Y1 >> Y2: Res_{Y2} leaves 1/Y1^2, whose Y1-residue is 0.
  const int l = 2;
  std::vector<Factor> fs{Factor::linear_power(LinearForm::variable(l, 0), -1),
                         Factor::linear_power(LinearForm::variable(l, 1), -1),
                         Factor::linear_power(LinearForm{{1, 1}}, -1)};
  for (int extra : {0, 2, 4}) EXPECT_EQ(iterated_residue(product_to_cap(fs, residue_target(l, extra))), 0);
  // Without the 1/Y1 factor the leading term 1/(Y1 Y2) survives: Res = 1.
  std::vector<Factor> gs{Factor::linear_power(LinearForm::variable(l, 1), -1),
                         Factor::linear_power(LinearForm{{1, 1}}, -1)};
  EXPECT_EQ(iterated_residue(product_to_cap(gs, residue_target(l))), 1);
}

TEST(Factors, BernoulliExpansionToOrderEight) {
  const auto B = bernoulli_numbers(10);
  const auto s = Factor::inv_exp_minus_one(LinearForm::variable(1, 0)).expand({8});
  for (int k = 0; k <= 9; ++k) {
    // coefficient of Y^{k-1} is B_k / k!
    EXPECT_EQ(s.coefficient({k - 1}), B[k] / BigRational(factorial(k))) << k;
  }
  EXPECT_THROW(s.coefficient({9}), TruncationError);
}

TEST(Factors, InverseSinhSquared) {
  // 1/(2 sinh(Y/2))^2 = 1/Y^2 - 1/12 + Y^2/240 - ...
  const auto s = Factor::inv_sinh_power(LinearForm::variable(1, 0), 2).expand({2});
  EXPECT_EQ(s.coefficient({-2}), 1);
  EXPECT_EQ(s.coefficient({-1}), 0);
  EXPECT_EQ(s.coefficient({0}), BigRational(-1, 12));
  EXPECT_EQ(s.coefficient({2}), BigRational(1, 240));
}

TEST(Factors, ExpOfLinearForm) {
  const auto s = Factor::exp(LinearForm{{BigRational(1, 2), BigRational(-3)}}).expand({3, 3});
  EXPECT_EQ(s.coefficient({1, 1}), BigRational(-3, 2));
  EXPECT_EQ(s.coefficient({0, 2}), BigRational(9, 2));
  EXPECT_EQ(s.coefficient({3, 0}), BigRational(1, 48));
}

TEST(Factors, DominanceExpansionOfInverseLinearForm) {
  // 1/(2 Y1 - Y2) = sum_k Y2^k / (2^{k+1} Y1^{k+1}).
  const auto s = Factor::linear_power(LinearForm{{2, -1}}, -1).expand({0, 4});
  for (int k = 0; k <= 4; ++k) EXPECT_EQ(s.coefficient({-k - 1, k}), BigRational(1, 1 << (k + 1)));
  // The inverse times the form is 1 within the window.
  const auto lin = LinearForm{{2, -1}}.as_series();
  EXPECT_EQ((s * lin).truncated({0, 3}), LaurentSeries::constant(2, 1));
}

TEST(Factors, OneVariableResidueAgreesWithRationalFunction) {
  // Res_{Y=0} e^{-aY} / ((2 sinh(Y/2))^2 (e^{-rY} - 1)), from the three
  // Laurent expansions multiplied out by hand: -(r^2 - 1)/(12 r) + a(r - a)/(2 r).
  const long r = 4;
  for (long a : {0L, 1L, 2L, 3L}) {
    std::vector<Factor> fs{Factor::exp(LinearForm{{BigRational(-a)}}),
                           Factor::inv_sinh_power(LinearForm::variable(1, 0), 2),
                           Factor::inv_exp_minus_one(LinearForm::variable(1, 0, -r))};
    const BigRational res = iterated_residue(product_to_cap(fs, residue_target(1)));
    BigRational expect = BigRational(a * (r - a), 2 * r) - BigRational(r * r - 1, 12 * r);
    expect.canonicalize();
    EXPECT_EQ(res, expect) << a;
  }
}

TEST(Residue, TorusIntegralConstant) {
  EXPECT_EQ(torus_integral_constant(2, 1, 4), 8);
  EXPECT_EQ(torus_integral_constant(2, 2, 4), 64);
  EXPECT_EQ(torus_integral_constant(3, 2, 6), 11664);
}

TEST(Residue, BenchmarkValues) {
  EXPECT_EQ(verlinde_by_residue({2, 1, 2, 2, {}}), 6);
  EXPECT_EQ(verlinde_by_residue({2, 1, 2, 4, {}}), 19);
  EXPECT_EQ(verlinde_by_residue({2, 1, 3, 2, {}}), 28);
}

TEST(Residue, CrossMethodOnSmallGrid) {
  for (int b = 0; b <= 1; ++b)
    for (const auto& s : grid::grid_specs(b)) EXPECT_EQ(verlinde_by_residue(s), verlinde_by_sum(s)) << grid::describe(s);
}

TEST(Residue, HigherRank) {
  for (auto [n, d, k] : std::vector<std::tuple<int, int, long>>{{4, 1, 4}, {4, 3, 8}, {5, 2, 5}})
    EXPECT_EQ(verlinde_by_residue({n, d, 2, k, {}}), verlinde_by_sum({n, d, 2, k, {}}));
}

TEST(Residue, CapStability) {
  for (const auto& s : grid::grid_specs(1)) {
    if (s.g != 3) continue;
    const ResidueOptions base{0, false}, raised{2, false};
    EXPECT_EQ(residue_value(s, base), residue_value(s, raised)) << grid::describe(s);
  }
}

TEST(Residue, RejectsInvalidInput) {
  EXPECT_THROW(verlinde_by_residue({4, 2, 2, 4, {}}), ValidationError);
  EXPECT_THROW(verlinde_by_residue({2, 1, 2, 2, {Weight({1})}}), ValidationError);
}

TEST(Pairing, VolumeIsLeadingCoefficientOfVerlindePolynomial) {
  // V_{n,d}(g, k) is a polynomial in r on each residue class of k mod n,
  // of degree dim M = (n^2 - 1)(g - 1) whose leading coefficient is the
  // pairing with eta = 1. It is read off the independent oracle by finite
  // differences with step n.
  for (auto [n, g] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
    const int D = (n * n - 1) * (g - 1);
    std::vector<BigRational> values;
    for (int i = 0; i <= D; ++i) {
      const long k = static_cast<long>(n) * (i + 1);
      values.emplace_back(static_cast<long>(oracle::rounded(oracle::verlinde_sine_sum(n, 1, g, k))));
    }
    for (int step = 0; step < D; ++step)
      for (int i = 0; i + 1 < static_cast<int>(values.size()) - step; ++i) values[i] = values[i + 1] - values[i];
    BigRational lead = values[0] / BigRational(factorial(D) * ipow(BigInt(n), D));
    lead.canonicalize();
    EXPECT_EQ(intersection_pairing(n, 1, g, {{std::vector<int>(static_cast<std::size_t>(n - 1), 0), 1}}), lead)
        << n << " " << g;
  }
}

TEST(Pairing, StableUnderLargerMargin) {
  InvariantPolynomial tau2{{{1}, 1}};
  EXPECT_EQ(intersection_pairing(2, 1, 2, tau2, std::nullopt, {0, false}),
            intersection_pairing(2, 1, 2, tau2, std::nullopt, {3, false}));
  EXPECT_EQ(intersection_pairing(2, 1, 2, {}), 0);
  EXPECT_THROW(intersection_pairing(2, 1, 1, {{{0}, 1}}), ValidationError);
}

TEST(Pairing, EtaPolynomialInY) {
  // n = 2: X_1 = Y/2, X_2 = -Y/2, tau_2 = X_1 X_2 = -Y^2/4.
  const auto eta = invariant_polynomial_in_y(2, {{{1}, 1}});
  EXPECT_EQ(eta, LaurentSeries::monomial({2}, BigRational(-1, 4)));
}

TEST(Vsz, IntegralPointsAgree) {
  for (long r : {2L, 4L, 6L})
    for (int q : {0, 2}) {
      const auto c = vsz_identity_check(2, r, TVector::from_simple_coords({BigRational(q, 4)}), 2);
      EXPECT_TRUE(c.equal) << r << " " << q << ": " << c.lhs << " vs " << c.rhs;
    }
  for (int d : {1, 2}) {
    const auto c = vsz_identity_check(3, 6, central_element(3, d).c_tilde, 2);
    EXPECT_TRUE(c.equal) << d;
  }
}

TEST(Vsz, NonIntegralPointShowsTheGap) {
  // r nu not integral: the alcove side is not rational and cannot match.
  const auto c = vsz_identity_check(2, 2, TVector::from_simple_coords({BigRational(1, 4)}), 2);
  EXPECT_FALSE(c.equal);
  EXPECT_EQ(c.lhs, BigRational(1, 2));
  EXPECT_FALSE(c.rhs.is_rational());
}

namespace {

/// (1 / 2 pi i) \oint f(Y) dY on |Y| = rad by the trapezoidal rule, which
/// converges geometrically for functions analytic on an annulus.
template <class F>
oracle::Complex contour_residue(F&& f, long double rad = 1.0L, int points = 512) {
  const long double pi = std::acos(-1.0L);
  oracle::Complex acc = 0;
  for (int j = 0; j < points; ++j) {
    const oracle::Complex y = std::polar(rad, 2 * pi * j / points);
    acc += f(y) * y;
  }
  return acc / static_cast<long double>(points);
}

}  // namespace

TEST(Pairing, NuVariantAgainstContourIntegral) {
  // n = 2: c_tilde has simple coordinate 1/2, nu has simple coordinate t and
  // the two Weyl terms shift it to 1/2 + t and 1/2 - t.
  const BigRational t(1, 10);
  const TVector nu = TVector::from_simple_coords({t});
  for (int g : {2, 3})
    for (int q : {0, 1}) {
      InvariantPolynomial Q{{{q}, 1}};
      const BigRational exact = intersection_pairing(2, 1, g, Q, nu);
      const long double tt = 0.1L;
      const auto f = [&](oracle::Complex y) {
        const oracle::Complex eta = q == 0 ? oracle::Complex(1) : -y * y / 4.0L;
        const oracle::Complex num = std::exp((0.5L + tt) * y) - std::exp((0.5L - tt) * y);
        return num * eta / (std::pow(y, 2 * g - 2) * (std::exp(y) - 1.0L) * (2.0L * std::sinh(y / 2.0L)));
      };
      const long double sign = (g % 2 == 0) ? -1 : 1;  // (-1)^{g-1}
      const oracle::Complex value = sign / 2 * std::pow(2.0L, g) * contour_residue(f);
      EXPECT_NEAR(static_cast<double>(value.real()), exact.get_d(), 1e-12) << g << " " << q;
      EXPECT_NEAR(static_cast<double>(value.imag()), 0.0, 1e-12);
    }
}

TEST(Residue, NTwoVerlindeAgainstContourIntegral) {
  // The genus-g, b = 0 integrand at n = 2 evaluated as a contour integral.
  for (auto [g, k] : std::vector<std::pair<int, long>>{{2, 2}, {2, 4}, {3, 2}, {3, 6}}) {
    const long r = k + 2;
    const auto f = [&](oracle::Complex y) {
      const oracle::Complex s = 2.0L * std::sinh(y / 2.0L);
      return std::exp(-static_cast<long double>(r) / 2 * y) /
             (std::pow(s, 2 * g - 2) * (std::exp(-static_cast<long double>(r) * y) - 1.0L));
    };
    // prefactor (-1)^{1 + (g-1)} / 2 * r^g 2^g; the contour must avoid the
    // poles of 1/(e^{-rY} - 1) at 2 pi i m / r.
    const long double rad = 3.0L / r;
    const long double sign = (g % 2 == 0) ? 1 : -1;
    const oracle::Complex value =
        sign / 2 * std::pow(static_cast<long double>(r), g) * std::pow(2.0L, g) * contour_residue(f, rad, 1024);
    EXPECT_NEAR(static_cast<double>(value.real()), verlinde_by_residue({2, 1, g, k, {}}).get_d(), 1e-6) << g << k;
  }
}
