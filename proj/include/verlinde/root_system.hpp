#pragma once

// Lie-combinatorial data for SU(n): roots, weights, Weyl group, the level-r
// alcove, the central element and the fractional-part reduction.
//
// Canonical coordinates for the Cartan algebra are diagonal: a TVector holds
// n rationals summing to zero. In these coordinates the Weyl group acts by
// permutation and the invariant inner product is the dot product, so roots
// have squared length 2.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "verlinde/errors.hpp"
#include "verlinde/rational.hpp"

namespace verlinde {

class TVector {
 public:
  TVector() = default;

  /// Validates that the coordinates sum to zero.
  static TVector from_diag(std::vector<BigRational> diag) {
    if (diag.size() < 2) throw ValidationError("TVector needs at least 2 coordinates");
    BigRational total = 0;
    for (const auto& x : diag) total += x;
    if (total != 0) throw ValidationError("TVector diagonal coordinates must sum to 0");
    TVector t;
    t.diag_ = std::move(diag);
    return t;
  }

  static TVector zero(int n) { return from_diag(std::vector<BigRational>(static_cast<std::size_t>(n))); }

  /// Inverse of simple_coords(): t = sum_j c_j (e_j - e_{j+1}).
  static TVector from_simple_coords(const std::vector<BigRational>& coords) {
    std::vector<BigRational> diag(coords.size() + 1);
    BigRational prev = 0;
    for (std::size_t j = 0; j < coords.size(); ++j) {
      diag[j] = coords[j] - prev;
      prev = coords[j];
    }
    diag.back() = -prev;
    TVector t;
    t.diag_ = std::move(diag);
    return t;
  }

  int n() const { return static_cast<int>(diag_.size()); }
  const std::vector<BigRational>& diag() const { return diag_; }
  const BigRational& operator[](std::size_t i) const { return diag_[i]; }

  /// Coordinates in the simple-root basis: the partial sums t_1, t_1+t_2, ...
  /// These coincide with the pairings against the fundamental weights.
  std::vector<BigRational> simple_coords() const {
    std::vector<BigRational> out;
    out.reserve(diag_.size() - 1);
    BigRational acc = 0;
    for (std::size_t i = 0; i + 1 < diag_.size(); ++i) {
      acc += diag_[i];
      out.push_back(acc);
    }
    return out;
  }

  std::vector<BigRational> fundamental_pairings() const { return simple_coords(); }

  bool is_dominant() const {
    for (std::size_t i = 0; i + 1 < diag_.size(); ++i)
      if (diag_[i] < diag_[i + 1]) return false;
    return true;
  }

  TVector operator+(const TVector& o) const {
    check_same(o);
    TVector t = *this;
    for (std::size_t i = 0; i < diag_.size(); ++i) t.diag_[i] += o.diag_[i];
    return t;
  }
  TVector operator-(const TVector& o) const {
    check_same(o);
    TVector t = *this;
    for (std::size_t i = 0; i < diag_.size(); ++i) t.diag_[i] -= o.diag_[i];
    return t;
  }
  TVector operator*(const BigRational& s) const {
    TVector t = *this;
    for (auto& x : t.diag_) x *= s;
    return t;
  }
  TVector operator/(const BigRational& s) const {
    if (s == 0) throw DivisionByZero("TVector divided by zero");
    TVector t = *this;
    for (auto& x : t.diag_) x /= s;
    return t;
  }

  bool operator==(const TVector& o) const { return diag_ == o.diag_; }

 private:
  void check_same(const TVector& o) const {
    if (o.diag_.size() != diag_.size()) throw ValidationError("TVector rank mismatch");
  }
  std::vector<BigRational> diag_;
};

inline BigRational inner(const TVector& x, const TVector& y) {
  if (x.n() != y.n()) throw ValidationError("inner product of vectors of different rank");
  BigRational acc = 0;
  for (int i = 0; i < x.n(); ++i) acc += x[i] * y[i];
  return acc;
}

inline std::ostream& operator<<(std::ostream& os, const TVector& t) {
  os << "diag(";
  for (int i = 0; i < t.n(); ++i) os << (i ? ", " : "") << t[i].get_str();
  return os << ")";
}

/// Fundamental weight omega_j (1-based) of SU(n) in diagonal coordinates.
inline TVector fundamental_weight(int n, int j) {
  std::vector<BigRational> diag(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) diag[i] = (i < j) ? make_rational(n - j, n) : make_rational(-j, n);
  for (auto& x : diag) x.canonicalize();
  return TVector::from_diag(std::move(diag));
}

/// Integral weight in fundamental-weight coordinates (m_1, ..., m_{n-1}).
class Weight {
 public:
  Weight() = default;
  explicit Weight(std::vector<long> fund) : fund_(std::move(fund)) {
    if (fund_.empty()) throw ValidationError("Weight needs at least one coordinate");
  }

  static Weight zero(int n) { return Weight(std::vector<long>(static_cast<std::size_t>(n - 1), 0)); }
  static Weight rho(int n) { return Weight(std::vector<long>(static_cast<std::size_t>(n - 1), 1)); }

  int n() const { return static_cast<int>(fund_.size()) + 1; }
  const std::vector<long>& fund() const { return fund_; }
  long operator[](std::size_t j) const { return fund_[j]; }

  bool is_dominant() const {
    return std::all_of(fund_.begin(), fund_.end(), [](long m) { return m >= 0; });
  }
  bool is_regular_dominant() const {
    return std::all_of(fund_.begin(), fund_.end(), [](long m) { return m >= 1; });
  }

  /// Pairing with the highest coroot: m_1 + ... + m_{n-1}.
  long level() const { return std::accumulate(fund_.begin(), fund_.end(), 0L); }

  /// n-ality sum_j j m_j mod n; zero exactly on the root lattice.
  long n_ality() const {
    long acc = 0;
    for (std::size_t j = 0; j < fund_.size(); ++j) acc += static_cast<long>(j + 1) * fund_[j];
    long m = acc % n();
    return m < 0 ? m + n() : m;
  }

  TVector to_tvector() const {
    TVector t = TVector::zero(n());
    for (std::size_t j = 0; j < fund_.size(); ++j)
      if (fund_[j] != 0) t = t + fundamental_weight(n(), static_cast<int>(j + 1)) * BigRational(fund_[j]);
    return t;
  }

  Weight operator+(const Weight& o) const {
    if (o.fund_.size() != fund_.size()) throw ValidationError("Weight rank mismatch");
    Weight w = *this;
    for (std::size_t j = 0; j < fund_.size(); ++j) w.fund_[j] += o.fund_[j];
    return w;
  }
  Weight operator-(const Weight& o) const {
    if (o.fund_.size() != fund_.size()) throw ValidationError("Weight rank mismatch");
    Weight w = *this;
    for (std::size_t j = 0; j < fund_.size(); ++j) w.fund_[j] -= o.fund_[j];
    return w;
  }

  auto operator<=>(const Weight&) const = default;

 private:
  std::vector<long> fund_;
};

inline std::string to_string(const Weight& w) {
  std::string s = "(";
  for (std::size_t j = 0; j < w.fund().size(); ++j) s += (j ? "," : "") + std::to_string(w[j]);
  return s + ")";
}

inline std::ostream& operator<<(std::ostream& os, const Weight& w) { return os << to_string(w); }

/// Permutation of the diagonal coordinates; perm[i] is the source index of
/// output coordinate i, i.e. (w t)_i = t_{perm[i]}.
class WeylElement {
 public:
  WeylElement() = default;
  explicit WeylElement(std::vector<int> perm) : perm_(std::move(perm)) {
    std::vector<int> seen(perm_.size(), 0);
    for (int p : perm_) {
      if (p < 0 || p >= static_cast<int>(perm_.size()) || seen[p]++)
        throw ValidationError("WeylElement is not a permutation");
    }
    int inversions = 0;
    for (std::size_t i = 0; i < perm_.size(); ++i)
      for (std::size_t j = i + 1; j < perm_.size(); ++j)
        if (perm_[i] > perm_[j]) ++inversions;
    sign_ = (inversions % 2 == 0) ? 1 : -1;
  }

  static WeylElement identity(int n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    return WeylElement(std::move(p));
  }

  const std::vector<int>& perm() const { return perm_; }
  int sign() const { return sign_; }
  int n() const { return static_cast<int>(perm_.size()); }

  TVector apply(const TVector& t) const {
    if (t.n() != n()) throw ValidationError("Weyl element and vector rank mismatch");
    std::vector<BigRational> out(perm_.size());
    for (std::size_t i = 0; i < perm_.size(); ++i) out[i] = t[static_cast<std::size_t>(perm_[i])];
    return TVector::from_diag(std::move(out));
  }

  bool operator==(const WeylElement&) const = default;

 private:
  std::vector<int> perm_;
  int sign_ = 1;
};

/// All of W = S_n in lexicographic order of the permutation.
inline std::vector<WeylElement> weyl_group(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<WeylElement> out;
  do {
    out.emplace_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// W_{n-1}: permutations of the first n-1 coordinates, fixing the last.
inline std::vector<WeylElement> weyl_subgroup_first(int n) {
  std::vector<int> p(static_cast<std::size_t>(n - 1));
  std::iota(p.begin(), p.end(), 0);
  std::vector<WeylElement> out;
  do {
    std::vector<int> full = p;
    full.push_back(n - 1);
    out.emplace_back(std::move(full));
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Positive root e_first - e_{last+1}; in the simple-root basis this is the
/// 0/1 interval vector with ones on [first, last] (1-based).
struct Root {
  int first = 1;
  int last = 1;

  bool operator==(const Root&) const = default;

  bool contains(int j) const { return first <= j && j <= last; }

  /// Pairing with a weight given in fundamental coordinates.
  long pair(const Weight& mu) const {
    long acc = 0;
    for (int j = first; j <= last; ++j) acc += mu[static_cast<std::size_t>(j - 1)];
    return acc;
  }

  TVector to_tvector(int n) const {
    std::vector<BigRational> diag(static_cast<std::size_t>(n));
    diag[static_cast<std::size_t>(first - 1)] = 1;
    diag[static_cast<std::size_t>(last)] = -1;
    return TVector::from_diag(std::move(diag));
  }
};

struct RootSystemA {
  int n = 2;
  std::vector<Root> positive_roots;
  std::vector<TVector> fundamental_weights;
  Weight rho;
  Root gamma_max;
  int n_plus = 1;

  int rank() const { return n - 1; }
};

inline RootSystemA build_root_system(int n) {
  if (n < 2) throw ValidationError("rank parameter n must be at least 2");
  RootSystemA rs;
  rs.n = n;
  for (int p = 1; p < n; ++p)
    for (int q = p; q < n; ++q) rs.positive_roots.push_back({p, q});
  for (int j = 1; j < n; ++j) rs.fundamental_weights.push_back(fundamental_weight(n, j));
  rs.rho = Weight::rho(n);
  rs.gamma_max = {1, n - 1};
  rs.n_plus = n * (n - 1) / 2;
  return rs;
}

/// Delta(r): regular dominant weights mu with <mu, gamma_max> < r, in
/// lexicographic order of (m_1, ..., m_{n-1}).
inline std::vector<Weight> enumerate_alcove(int n, int r) {
  if (n < 2) throw ValidationError("rank parameter n must be at least 2");
  if (r < n) throw ValidationError("alcove level r must satisfy r >= n");
  std::vector<Weight> out;
  std::vector<long> m(static_cast<std::size_t>(n - 1), 1);
  const long budget = r - 1;
  // Odometer over m_j >= 1 with sum <= r - 1; last coordinate varies fastest.
  while (true) {
    out.emplace_back(m);
    int j = n - 2;
    while (j >= 0) {
      ++m[static_cast<std::size_t>(j)];
      if (std::accumulate(m.begin(), m.end(), 0L) <= budget) break;
      m[static_cast<std::size_t>(j)] = 1;
      --j;
    }
    if (j < 0) break;
  }
  return out;
}

/// [[x]]: fractional parts of the simple-root coordinates.
inline TVector reduce_to_fundamental_domain(const TVector& x) {
  auto c = x.simple_coords();
  for (auto& v : c) v = frac_of(v);
  return TVector::from_simple_coords(c);
}

struct CentralElement {
  TVector c_tilde;
  /// <2 rho, c_tilde> = d (n - d).
  long two_rho_pairing = 0;
};

/// Logarithm of c = exp(2 pi i d / n) Id in the closed fundamental alcove.
inline CentralElement central_element(int n, int d) {
  if (n < 2) throw ValidationError("rank parameter n must be at least 2");
  if (d < 1 || d > n - 1) throw ValidationError("degree d must lie in [1, n-1]");
  if (gcd_long(n, d) != 1) throw ValidationError("d not coprime to n");
  std::vector<BigRational> diag(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    diag[i] = BigRational(d, n);
    diag[i].canonicalize();
    if (i >= n - d) diag[i] -= 1;
  }
  return {TVector::from_diag(std::move(diag)), static_cast<long>(d) * (n - d)};
}

/// True iff the tuple of dominant weights lies in the chamber of the walls
/// {v(Lambda) = m} whose closure contains 0. For b > 1 every combination
/// sum_s w_s Lambda_s over W^b must have all fundamental pairings strictly
/// inside (-1, 1). A pairing equal to 1 is on a wall and is rejected.
inline bool chamber_valid(int n, const std::vector<TVector>& weights) {
  for (const auto& lam : weights) {
    if (lam.n() != n) throw ValidationError("weight rank does not match n");
    if (!lam.is_dominant()) throw ValidationError("parabolic weight is not dominant");
  }
  if (weights.empty()) return true;
  if (weights.size() == 1) {
    for (const auto& v : weights.front().fundamental_pairings())
      if (v >= 1) return false;
    return true;
  }
  const auto W = weyl_group(n);
  std::vector<std::size_t> idx(weights.size(), 0);
  while (true) {
    TVector acc = TVector::zero(n);
    for (std::size_t s = 0; s < weights.size(); ++s) acc = acc + W[idx[s]].apply(weights[s]);
    for (const auto& v : acc.fundamental_pairings())
      if (v >= 1 || v <= -1) return false;
    std::size_t s = 0;
    while (s < idx.size() && ++idx[s] == W.size()) idx[s++] = 0;
    if (s == idx.size()) break;
  }
  return true;
}

}  // namespace verlinde
