#pragma once

// Truncated multivariate Laurent series over Q in Y_1, ..., Y_l, expanded
// under the dominance order Y_1 >> Y_2 >> ... >> Y_l: an inverse linear form
// 1/(c Y_p + (later variables)) is expanded in powers of the later variables
// divided by Y_p. Such expansions have infinitely many terms of a fixed total
// degree, so truncation is by tail sums
//
//     sigma_s(e) = e_s + e_{s+1} + ... + e_l,   s = 1..l
//
// (sigma_1 is the total degree). A series stores
//   floor_s : a structural lower bound on sigma_s over all of its true terms,
//   cap_s   : every coefficient with sigma_s(e) <= cap_s for all s is exact.
// Within [floor, cap] only finitely many exponents exist, and a product is
// exact up to cap_s = min(capA_s + floorB_s, capB_s + floorA_s).

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "verlinde/errors.hpp"
#include "verlinde/rational.hpp"

namespace verlinde {

using Exponent = std::vector<int>;
using TailBounds = std::vector<int>;

/// Caps at or above this value mean "exact in that direction".
inline constexpr int kUnbounded = std::numeric_limits<int>::max() / 4;

inline int bounded_add(int a, int b) {
  if (a >= kUnbounded || b >= kUnbounded) return kUnbounded;
  return std::min(a + b, kUnbounded);
}

inline TailBounds tail_sums(const Exponent& e) {
  TailBounds t(e.size());
  int acc = 0;
  for (std::size_t s = e.size(); s-- > 0;) {
    acc += e[s];
    t[s] = acc;
  }
  return t;
}

class LaurentSeries {
 public:
  LaurentSeries() = default;

  /// The zero series in `nvars` variables with the given window.
  LaurentSeries(int nvars, TailBounds floor, TailBounds cap)
      : nvars_(nvars), floor_(std::move(floor)), cap_(std::move(cap)) {
    if (static_cast<int>(floor_.size()) != nvars_ || static_cast<int>(cap_.size()) != nvars_)
      throw ValidationError("LaurentSeries window has the wrong length");
  }

  static LaurentSeries constant(int nvars, const BigRational& c) {
    LaurentSeries s(nvars, TailBounds(static_cast<std::size_t>(nvars), 0),
                    TailBounds(static_cast<std::size_t>(nvars), kUnbounded));
    s.add_term(Exponent(static_cast<std::size_t>(nvars), 0), c);
    return s;
  }

  /// Exact monomial c * Y^e.
  static LaurentSeries monomial(const Exponent& e, const BigRational& c) {
    const int nv = static_cast<int>(e.size());
    LaurentSeries s(nv, tail_sums(e), TailBounds(static_cast<std::size_t>(nv), kUnbounded));
    s.add_term(e, c);
    return s;
  }

  int nvars() const { return nvars_; }
  const TailBounds& floor() const { return floor_; }
  const TailBounds& cap() const { return cap_; }
  const std::map<Exponent, BigRational>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool in_window(const Exponent& e) const {
    const auto t = tail_sums(e);
    for (int s = 0; s < nvars_; ++s)
      if (t[s] > cap_[s]) return false;
    return true;
  }

  /// Adds c * Y^e; terms outside the cap are dropped, terms below the floor
  /// are a logic error.
  void add_term(const Exponent& e, BigRational c) {
    c.canonicalize();
    if (c == 0) return;
    const auto t = tail_sums(e);
    for (int s = 0; s < nvars_; ++s) {
      if (t[s] > cap_[s]) return;
      if (t[s] < floor_[s]) throw std::logic_error("LaurentSeries term below its declared floor");
    }
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  /// Exact coefficient of Y^e, or TruncationError if e is beyond the cap.
  BigRational coefficient(const Exponent& e) const {
    if (static_cast<int>(e.size()) != nvars_) throw ValidationError("exponent has the wrong length");
    if (!in_window(e)) throw TruncationError("coefficient requested beyond the series cap");
    auto it = terms_.find(e);
    return it == terms_.end() ? BigRational(0) : it->second;
  }

  /// Drops everything beyond `cap` (componentwise min with the current cap).
  LaurentSeries truncated(const TailBounds& cap) const {
    TailBounds c(cap_);
    for (int s = 0; s < nvars_; ++s) c[s] = std::min(c[s], cap[s]);
    LaurentSeries out(nvars_, floor_, c);
    for (const auto& [e, v] : terms_) out.add_term(e, v);
    return out;
  }

  LaurentSeries operator-() const {
    LaurentSeries out = *this;
    for (auto& [e, v] : out.terms_) v = -v;
    return out;
  }

  LaurentSeries operator*(const BigRational& q) const {
    LaurentSeries out(nvars_, floor_, cap_);
    if (q == 0) return out;
    out.terms_ = terms_;
    for (auto& [e, v] : out.terms_) v *= q;
    return out;
  }

  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
    a.check_same(b);
    TailBounds fl(a.floor_), cp(a.cap_);
    for (int s = 0; s < a.nvars_; ++s) {
      fl[s] = std::min(a.floor_[s], b.floor_[s]);
      cp[s] = std::min(a.cap_[s], b.cap_[s]);
    }
    LaurentSeries out(a.nvars_, fl, cp);
    for (const auto& [e, v] : a.terms_) out.add_term(e, v);
    for (const auto& [e, v] : b.terms_) out.add_term(e, v);
    return out;
  }

  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a + (-b); }

  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    a.check_same(b);
    const int nv = a.nvars_;
    TailBounds fl(static_cast<std::size_t>(nv)), cp(static_cast<std::size_t>(nv));
    for (int s = 0; s < nv; ++s) {
      fl[s] = a.floor_[s] + b.floor_[s];
      cp[s] = std::min(bounded_add(a.cap_[s], b.floor_[s]), bounded_add(b.cap_[s], a.floor_[s]));
    }
    LaurentSeries out(nv, fl, cp);
    // Pre-compute tail sums once per operand.
    std::vector<std::pair<TailBounds, const std::pair<const Exponent, BigRational>*>> bt;
    bt.reserve(b.terms_.size());
    for (const auto& kv : b.terms_) bt.emplace_back(tail_sums(kv.first), &kv);
    Exponent e(static_cast<std::size_t>(nv));
    BigRational prod;
    for (const auto& ka : a.terms_) {
      const TailBounds ta = tail_sums(ka.first);
      for (const auto& [tb, kb] : bt) {
        bool inside = true;
        for (int s = 0; s < nv && inside; ++s) inside = ta[s] + tb[s] <= cp[s];
        if (!inside) continue;
        for (int s = 0; s < nv; ++s) e[s] = ka.first[s] + kb->first[s];
        mpq_mul(prod.get_mpq_t(), ka.second.get_mpq_t(), kb->second.get_mpq_t());
        auto [it, inserted] = out.terms_.try_emplace(e, prod);
        if (!inserted) it->second += prod;
      }
    }
    for (auto it = out.terms_.begin(); it != out.terms_.end();) {
      if (it->second == 0)
        it = out.terms_.erase(it);
      else
        ++it;
    }
    return out;
  }

  /// Coefficient of Y^target in a*b without forming the full product.
  static BigRational product_coefficient(const LaurentSeries& a, const LaurentSeries& b, const Exponent& target) {
    a.check_same(b);
    const auto tt = tail_sums(target);
    for (int s = 0; s < a.nvars_; ++s) {
      const int cp = std::min(bounded_add(a.cap_[s], b.floor_[s]), bounded_add(b.cap_[s], a.floor_[s]));
      if (tt[s] > cp) throw TruncationError("product coefficient requested beyond the product cap");
    }
    BigRational acc = 0;
    Exponent need(target.size());
    for (const auto& [ea, va] : a.terms_) {
      for (std::size_t s = 0; s < target.size(); ++s) need[s] = target[s] - ea[s];
      auto it = b.terms_.find(need);
      if (it != b.terms_.end()) acc += va * it->second;
    }
    return acc;
  }

  /// Multiplicative inverse of a power series (floor 0) with nonzero
  /// constant term, to the same cap.
  LaurentSeries inverse() const {
    const Exponent zero(static_cast<std::size_t>(nvars_), 0);
    for (int s = 0; s < nvars_; ++s)
      if (floor_[s] < 0) throw ValidationError("inverse() needs a power series (nonnegative floor)");
    auto it = terms_.find(zero);
    if (it == terms_.end()) throw DivisionByZero("series inverse needs a nonzero constant term");
    const BigRational c0 = it->second;
    for (int s = 0; s < nvars_; ++s)
      if (cap_[s] >= kUnbounded) throw ValidationError("inverse() needs a finite cap");
    // 1/(c0 (1 + u)) = (1/c0) sum_k (-u)^k. Every term of u has some
    // sigma_s >= 1, so sum_s sigma_s >= k on u^k and the loop ends.
    LaurentSeries u = *this * (1 / c0);
    u.terms_.erase(zero);
    u = -u;
    LaurentSeries sum = constant(nvars_, 1).truncated(cap_);
    LaurentSeries power = sum;
    while (true) {
      power = power * u;
      if (power.terms_.empty()) break;
      sum = sum + power;
    }
    return sum * (1 / c0);
  }

  /// Coefficient of Y_l^{-1}, as a series in Y_1..Y_{l-1}.
  LaurentSeries residue_in_last() const {
    if (nvars_ == 0) throw ValidationError("no variable left to take a residue in");
    const int l = nvars_;
    if (cap_[l - 1] < -1) throw TruncationError("residue needs the Y^-1 coefficient, beyond the cap");
    TailBounds fl(static_cast<std::size_t>(l - 1)), cp(static_cast<std::size_t>(l - 1));
    for (int s = 0; s < l - 1; ++s) {
      fl[s] = floor_[s] + 1;
      cp[s] = bounded_add(cap_[s], 1);
    }
    LaurentSeries out(l - 1, fl, cp);
    for (const auto& [e, v] : terms_) {
      if (e.back() != -1) continue;
      out.add_term(Exponent(e.begin(), e.end() - 1), v);
    }
    return out;
  }

  /// Value of a series in zero variables.
  BigRational scalar() const {
    if (nvars_ != 0) throw ValidationError("scalar() needs a series in zero variables");
    auto it = terms_.find(Exponent{});
    return it == terms_.end() ? BigRational(0) : it->second;
  }

  bool operator==(const LaurentSeries& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  std::string to_string() const {
    std::string out;
    for (const auto& [e, v] : terms_) {
      if (!out.empty()) out += " + ";
      out += "(" + v.get_str() + ")";
      for (int s = 0; s < nvars_; ++s)
        if (e[s] != 0) out += "*Y" + std::to_string(s + 1) + "^" + std::to_string(e[s]);
    }
    return out.empty() ? "0" : out;
  }

 private:
  void check_same(const LaurentSeries& o) const {
    if (o.nvars_ != nvars_) throw ValidationError("series in different numbers of variables");
  }

  int nvars_ = 0;
  std::map<Exponent, BigRational> terms_;
  TailBounds floor_;
  TailBounds cap_;
};

inline std::ostream& operator<<(std::ostream& os, const LaurentSeries& s) { return os << s.to_string(); }

/// Res_{Y_1=0} ... Res_{Y_l=0}: innermost (Y_l) first, outward to Y_1.
inline BigRational iterated_residue(const LaurentSeries& s) {
  LaurentSeries cur = s;
  while (cur.nvars() > 0) cur = cur.residue_in_last();
  return cur.scalar();
}

}  // namespace verlinde
