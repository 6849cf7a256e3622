#include <gtest/gtest.h>

#include <set>

#include "verlinde/problem.hpp"
#include "verlinde/root_system.hpp"

using namespace verlinde;

TEST(RootSystem, CountsAndHighestRoot) {
  for (int n = 2; n <= 6; ++n) {
    const auto rs = build_root_system(n);
    EXPECT_EQ(rs.n_plus, n * (n - 1) / 2);
    EXPECT_EQ(static_cast<int>(rs.positive_roots.size()), rs.n_plus);
    EXPECT_EQ(rs.rank(), n - 1);
    EXPECT_EQ(rs.gamma_max.first, 1);
    EXPECT_EQ(rs.gamma_max.last, n - 1);
  }
  EXPECT_THROW(build_root_system(1), ValidationError);
}

TEST(RootSystem, FundamentalWeightsAreDual) {
  // <alpha_i, omega_j> = t_i - t_{i+1} = delta_ij.
  for (int n = 2; n <= 5; ++n) {
    for (int j = 1; j < n; ++j) {
      const TVector w = fundamental_weight(n, j);
      for (int i = 1; i < n; ++i) EXPECT_EQ(w[i - 1] - w[i], i == j ? 1 : 0) << n << " " << j << " " << i;
    }
  }
}

TEST(RootSystem, SimpleCoordsArePairingsWithFundamentalWeights) {
  const TVector x = TVector::from_diag({BigRational(1, 2), BigRational(1, 3), BigRational(-5, 6)});
  const auto c = x.simple_coords();
  for (int j = 1; j < 3; ++j) EXPECT_EQ(c[j - 1], inner(x, fundamental_weight(3, j)));
}

TEST(RootSystem, RhoPairsToOneWithSimpleRoots) {
  const auto rs = build_root_system(4);
  for (const auto& gamma : rs.positive_roots) EXPECT_EQ(gamma.pair(Weight::rho(4)), gamma.last - gamma.first + 1);
}

TEST(RootSystem, TVectorRejectsNonzeroTrace) {
  EXPECT_THROW(TVector::from_diag({1, 0, 0}), ValidationError);
  const auto t = TVector::from_simple_coords({BigRational(1, 3), BigRational(2, 3)});
  EXPECT_EQ(TVector::from_simple_coords(t.simple_coords()), t);
}

TEST(WeylGroup, OrderAndSigns) {
  const auto W = weyl_group(4);
  EXPECT_EQ(W.size(), 24u);
  int total = 0;
  for (const auto& w : W) total += w.sign();
  EXPECT_EQ(total, 0);
  EXPECT_EQ(weyl_subgroup_first(4).size(), 6u);
  for (const auto& w : weyl_subgroup_first(4)) EXPECT_EQ(w.perm().back(), 3);
  EXPECT_THROW(WeylElement({0, 0, 1}), ValidationError);
}

TEST(WeylGroup, PreservesInnerProduct) {
  const TVector x = TVector::from_diag({BigRational(1, 2), BigRational(-1, 3), BigRational(-1, 6)});
  const TVector y = TVector::from_diag({2, -3, 1});
  for (const auto& w : weyl_group(3)) EXPECT_EQ(inner(w.apply(x), w.apply(y)), inner(x, y));
}

TEST(Alcove, SizeIsBinomial) {
  // |Delta(r)| = C(r-1, n-1).
  for (int n = 2; n <= 4; ++n)
    for (int r = n; r <= 12; ++r) {
      const auto alcove = enumerate_alcove(n, r);
      EXPECT_EQ(BigInt(static_cast<long>(alcove.size())), binomial(r - 1, n - 1)) << n << " " << r;
      std::set<std::vector<long>> seen;
      for (const auto& mu : alcove) {
        EXPECT_TRUE(mu.is_regular_dominant());
        EXPECT_LT(mu.level(), r);
        seen.insert(mu.fund());
      }
      EXPECT_EQ(seen.size(), alcove.size());
    }
  EXPECT_EQ(enumerate_alcove(2, 2).size(), 1u);
  EXPECT_THROW(enumerate_alcove(3, 2), ValidationError);
}

TEST(CentralElement, TwoRhoPairing) {
  for (int n = 2; n <= 7; ++n)
    for (int d = 1; d < n; ++d) {
      if (gcd_long(n, d) != 1) {
        EXPECT_THROW(central_element(n, d), ValidationError);
        continue;
      }
      const auto c = central_element(n, d);
      EXPECT_EQ(c.two_rho_pairing, d * (n - d));
      EXPECT_EQ(inner(Weight::rho(n).to_tvector() * BigRational(2), c.c_tilde), d * (n - d));
      // exp(2 pi i c_tilde) is central: its diagonal entries agree mod 1.
      for (const auto& v : c.c_tilde.diag()) EXPECT_EQ(frac_of(v), BigRational(d, n));
    }
}

TEST(CentralElement, RejectsBadDegree) {
  EXPECT_THROW(central_element(3, 0), ValidationError);
  EXPECT_THROW(central_element(3, 3), ValidationError);
  try {
    central_element(4, 2);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("d not coprime to n"), std::string::npos);
  }
}

TEST(FundamentalDomain, ReductionIsIdempotentAndIntegralShift) {
  const TVector x = TVector::from_simple_coords({BigRational(7, 3), BigRational(-5, 6)});
  const TVector red = reduce_to_fundamental_domain(x);
  for (const auto& v : red.simple_coords()) {
    EXPECT_GE(v, 0);
    EXPECT_LT(v, 1);
  }
  EXPECT_EQ(reduce_to_fundamental_domain(red), red);
  for (const auto& v : (x - red).simple_coords()) EXPECT_TRUE(is_integer(v));
}

TEST(Chamber, SinglePoint) {
  EXPECT_TRUE(chamber_valid(3, {Weight({1, 1}).to_tvector() / BigRational(3)}));
  EXPECT_TRUE(chamber_valid(3, {Weight({3, 0}).to_tvector() / BigRational(3)}));
  EXPECT_FALSE(chamber_valid(3, {Weight({3, 3}).to_tvector() / BigRational(3)}));
  EXPECT_TRUE(chamber_valid(2, {}));
}

TEST(Chamber, MultiPointMatchesPartialSumCriterion) {
  // For dominant Lambda_s the W^b test reduces to sum_s v_j(Lambda_s) < 1.
  const auto ws = std::vector<Weight>{Weight({0, 0}), Weight({1, 0}), Weight({0, 1}), Weight({1, 1}),
                                      Weight({2, 0}), Weight({0, 2}), Weight({2, 1})};
  for (const auto& a : ws)
    for (const auto& b : ws) {
      const std::vector<TVector> lams{a.to_tvector() / BigRational(3), b.to_tvector() / BigRational(3)};
      bool expect = true;
      for (int j = 1; j < 3; ++j) {
        BigRational s = 0;
        for (const auto& l : lams) s += l.simple_coords()[static_cast<std::size_t>(j - 1)];
        if (s >= 1) expect = false;
      }
      EXPECT_EQ(chamber_valid(3, lams), expect) << to_string(a) << to_string(b);
      EXPECT_EQ(chamber_diagnostics(3, lams).valid, expect);
      EXPECT_EQ(chamber_diagnostics(3, lams).max_pairing < 1, expect);
    }
}

TEST(Problem, ValidationMessages) {
  auto first = [](const ProblemSpec& s) {
    const auto errs = check_problem(s);
    return errs.empty() ? std::string() : errs.front();
  };
  EXPECT_EQ(first({2, 1, 2, 2, {}}), "");
  EXPECT_EQ(first({4, 2, 2, 4, {}}), "d not coprime to n");
  EXPECT_EQ(first({2, 1, 2, 3, {}}), "k not divisible by n");
  EXPECT_EQ(first({2, 1, 1, 2, {}}), "genus g must be at least 2");
  EXPECT_NE(first({2, 1, 2, 2, {Weight({1})}}).find("n-ality"), std::string::npos);
  EXPECT_NE(first({2, 1, 2, 2, {Weight({4})}}).find("exceeds the level"), std::string::npos);
  EXPECT_NE(first({2, 1, 2, 2, {Weight({2}), Weight({2})}}).find("chamber wall"), std::string::npos);
  EXPECT_NE(first({3, 1, 2, 3, {Weight({1})}}).find("fundamental coordinates"), std::string::npos);
  EXPECT_THROW(validate_problem({3, 3, 2, 3, {}}), ValidationError);
}
