#pragma once

#include <string>
#include <vector>

#include "verlinde/errors.hpp"
#include "verlinde/rational.hpp"
#include "verlinde/root_system.hpp"

namespace verlinde {

/// One Verlinde-number instance: group SU(n), degree d, genus g, level k and
/// the parabolic weights lambda^(s) = k Lambda^(s) (possibly none).
struct ProblemSpec {
  int n = 2;
  int d = 1;
  int g = 2;
  long k = 2;
  std::vector<Weight> weights;

  long r() const { return k + n; }
  int b() const { return static_cast<int>(weights.size()); }

  /// Lambda^(s) = lambda^(s) / k as Cartan-algebra vectors.
  std::vector<TVector> scaled_weights() const {
    std::vector<TVector> out;
    out.reserve(weights.size());
    for (const auto& w : weights) out.push_back(w.to_tvector() / BigRational(k));
    return out;
  }
};

struct ChamberDiagnostics {
  bool valid = true;
  /// Largest |v_j(sum_s w_s Lambda_s)| over fundamental weights and W^b
  /// (b = 1: largest v_j(Lambda)). Valid iff strictly below 1.
  BigRational max_pairing = 0;
};

inline ChamberDiagnostics chamber_diagnostics(int n, const std::vector<TVector>& lams) {
  ChamberDiagnostics diag;
  diag.valid = chamber_valid(n, lams);
  if (lams.empty()) return diag;
  if (lams.size() == 1) {
    for (const auto& v : lams.front().fundamental_pairings())
      if (v > diag.max_pairing) diag.max_pairing = v;
    return diag;
  }
  // Over W^b, v_j(sum_s w_s Lambda_s) peaks at sum_s v_j(Lambda_s) for
  // dominant Lambda_s; its minimum is -sum_s v_{n-j}(Lambda_s).
  for (int j = 1; j < n; ++j) {
    BigRational hi = 0;
    for (const auto& lam : lams) {
      BigRational part = 0;
      for (int i = 0; i < j; ++i) part += lam[static_cast<std::size_t>(i)];
      hi += part;
    }
    if (hi > diag.max_pairing) diag.max_pairing = hi;
  }
  return diag;
}

/// All violated preconditions, in a fixed order; empty when valid.
inline std::vector<std::string> check_problem(const ProblemSpec& spec) {
  std::vector<std::string> errs;
  if (spec.n < 2) {
    errs.push_back("n must be at least 2");
    return errs;
  }
  if (spec.d < 1 || spec.d > spec.n - 1)
    errs.push_back("d must lie in [1, n-1]");
  else if (gcd_long(spec.n, spec.d) != 1)
    errs.push_back("d not coprime to n");
  if (spec.g < 2) errs.push_back("genus g must be at least 2");
  if (spec.k <= 0)
    errs.push_back("level k must be positive");
  else if (spec.k % spec.n != 0)
    errs.push_back("k not divisible by n");
  bool weights_ok = true;
  long total_n_ality = 0;
  for (std::size_t s = 0; s < spec.weights.size(); ++s) {
    const auto& w = spec.weights[s];
    const std::string tag = "weight " + std::to_string(s + 1) + " " + to_string(w);
    if (w.n() != spec.n) {
      errs.push_back(tag + ": expected " + std::to_string(spec.n - 1) + " fundamental coordinates");
      weights_ok = false;
      continue;
    }
    if (!w.is_dominant()) {
      errs.push_back(tag + ": not dominant (negative fundamental coordinate)");
      weights_ok = false;
      continue;
    }
    if (spec.k > 0 && w.level() > spec.k) {
      errs.push_back(tag + ": <lambda, gamma_max> exceeds the level k");
      weights_ok = false;
    }
    total_n_ality += w.n_ality();
  }
  if (weights_ok && !spec.weights.empty() && total_n_ality % spec.n != 0)
    errs.push_back("total n-ality of the weights is not divisible by n (sum of weights not in the root lattice)");
  if (weights_ok && spec.k > 0 && !spec.weights.empty() && !chamber_valid(spec.n, spec.scaled_weights()))
    errs.push_back("weights lambda/k cross a chamber wall (some fundamental pairing reaches 1)");
  return errs;
}

inline void validate_problem(const ProblemSpec& spec) {
  const auto errs = check_problem(spec);
  if (!errs.empty()) throw ValidationError(errs.front());
}

}  // namespace verlinde
