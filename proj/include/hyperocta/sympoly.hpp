#pragma once

#include <algorithm>
#include <compare>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hyperocta/errors.hpp"
#include "hyperocta/numeric.hpp"
#include "hyperocta/subsets.hpp"

namespace hyperocta {

// Squarefree-or-not monomial: sparse (index, exponent) pairs, indices >= 1,
// exponents > 0, sorted by index.  Ordering is graded colex on exponent
// vectors; it is the canonical term order for printing and map iteration.
class Monomial {
 public:
  Monomial() = default;

  explicit Monomial(std::vector<std::pair<int, int>> exps)
      : exps_(std::move(exps)) {
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      if (exps_[i].first < 1) throw DomainError("Monomial: indices must be >= 1");
      if (exps_[i].second <= 0) throw DomainError("Monomial: exponents must be > 0");
      if (i > 0 && exps_[i - 1].first >= exps_[i].first)
        throw DomainError("Monomial: indices must be strictly increasing");
    }
  }

  static Monomial one() { return Monomial(); }

  static Monomial var(int i, int e = 1) {
    return Monomial({{i, e}});
  }

  static Monomial squarefree(const Subset& s) {
    std::vector<std::pair<int, int>> exps;
    exps.reserve(s.elements().size());
    for (int i : s.elements()) exps.push_back({i, 1});
    return Monomial(std::move(exps));
  }

  const std::vector<std::pair<int, int>>& exps() const { return exps_; }
  bool is_one() const { return exps_.empty(); }

  int total_degree() const {
    int d = 0;
    for (const auto& [i, e] : exps_) d += e;
    return d;
  }

  int distinct_vars() const { return static_cast<int>(exps_.size()); }
  int max_index() const { return exps_.empty() ? 0 : exps_.back().first; }

  int exponent_of(int i) const {
    for (const auto& [j, e] : exps_)
      if (j == i) return e;
    return 0;
  }

  Monomial operator*(const Monomial& o) const {
    std::vector<std::pair<int, int>> out;
    out.reserve(exps_.size() + o.exps_.size());
    std::size_t a = 0, b = 0;
    while (a < exps_.size() || b < o.exps_.size()) {
      if (b == o.exps_.size() ||
          (a < exps_.size() && exps_[a].first < o.exps_[b].first)) {
        out.push_back(exps_[a++]);
      } else if (a == exps_.size() || o.exps_[b].first < exps_[a].first) {
        out.push_back(o.exps_[b++]);
      } else {
        out.push_back({exps_[a].first, exps_[a].second + o.exps_[b].second});
        ++a; ++b;
      }
    }
    return Monomial(std::move(out));
  }

  // Relabel indices through f; f must be injective on the support.
  Monomial relabel(const std::function<int(int)>& f) const {
    std::vector<std::pair<int, int>> out;
    out.reserve(exps_.size());
    for (const auto& [i, e] : exps_) out.push_back({f(i), e});
    std::sort(out.begin(), out.end());
    for (std::size_t i = 1; i < out.size(); ++i)
      if (out[i - 1].first == out[i].first)
        throw DomainError("Monomial::relabel: mapping not injective");
    return Monomial(std::move(out));
  }

  // d/dx_i without the cofactor coefficient; (multiplier, reduced monomial).
  // Multiplier 0 means the variable is absent.
  std::pair<int, Monomial> derivative(int i) const {
    std::vector<std::pair<int, int>> out;
    int mult = 0;
    for (const auto& [j, e] : exps_) {
      if (j == i) {
        mult = e;
        if (e > 1) out.push_back({j, e - 1});
      } else {
        out.push_back({j, e});
      }
    }
    return {mult, Monomial(std::move(out))};
  }

  std::string to_string() const {
    if (exps_.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      if (i) s += "*";
      s += "x" + std::to_string(exps_[i].first);
      if (exps_[i].second > 1) s += "^" + std::to_string(exps_[i].second);
    }
    return s;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) = default;

  // Graded colex: total degree first, then the largest index with differing
  // exponent decides (larger exponent there sorts later).
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (int c = a.total_degree() - b.total_degree(); c != 0)
      return c <=> 0;
    auto i = a.exps_.rbegin();
    auto j = b.exps_.rbegin();
    while (i != a.exps_.rend() && j != b.exps_.rend()) {
      if (i->first != j->first) {
        // the larger index has positive exponent on one side, zero on the other
        return (i->first > j->first) ? std::strong_ordering::greater
                                     : std::strong_ordering::less;
      }
      if (i->second != j->second) return i->second <=> j->second;
      ++i; ++j;
    }
    if (i != a.exps_.rend()) return std::strong_ordering::greater;
    if (j != b.exps_.rend()) return std::strong_ordering::less;
    return std::strong_ordering::equal;
  }

 private:
  std::vector<std::pair<int, int>> exps_;
};

// Sparse polynomial with exact rational coefficients; zero coefficients are
// never stored.
class Poly {
 public:
  Poly() = default;

  static Poly zero() { return Poly(); }

  static Poly constant(const Rat& c) {
    Poly p;
    p.add_term(Monomial::one(), c);
    return p;
  }

  static Poly monomial(const Monomial& m, const Rat& c = 1) {
    Poly p;
    p.add_term(m, c);
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, Rat>& terms() const { return terms_; }

  Rat coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rat(0) : it->second;
  }

  void add_term(const Monomial& m, const Rat& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  bool is_integral() const {
    for (const auto& [m, c] : terms_)
      if (boost::multiprecision::denominator(c) != 1) return false;
    return true;
  }

  void assert_integral() const {
    if (!is_integral())
      throw InvariantViolation("polynomial expected to have integer coefficients");
  }

  int max_index() const {
    int mx = 0;
    for (const auto& [m, c] : terms_) mx = std::max(mx, m.max_index());
    return mx;
  }

  Poly operator+(const Poly& o) const {
    Poly out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(m, c);
    return out;
  }

  Poly operator-(const Poly& o) const {
    Poly out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(m, -c);
    return out;
  }

  Poly operator*(const Poly& o) const {
    Poly out;
    for (const auto& [ma, ca] : terms_)
      for (const auto& [mb, cb] : o.terms_)
        out.add_term(ma * mb, ca * cb);
    return out;
  }

  Poly scaled(const Rat& c) const {
    Poly out;
    if (c == 0) return out;
    for (const auto& [m, v] : terms_) out.add_term(m, c * v);
    return out;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (!first) s += " + ";
      first = false;
      if (c == 1 && !m.is_one()) {
        s += m.to_string();
      } else if (m.is_one()) {
        s += rat_to_string(c);
      } else {
        s += rat_to_string(c) + "*" + m.to_string();
      }
    }
    return s;
  }

  friend bool operator==(const Poly& a, const Poly& b) = default;

 private:
  std::map<Monomial, Rat> terms_;
};

// Sum over k-element subsets S of A of the squarefree monomial prod_{i in S} x_i.
inline Poly elem_sym(const Subset& A, int k) {
  const int sz = A.size();
  if (k < 0 || k > sz) throw DomainError("elem_sym: need 0 <= k <= |A|");
  Poly out;
  std::vector<int> pick(k);
  // iterate k-subsets of A's element list
  std::function<void(int, int)> rec = [&](int start, int chosen) {
    if (chosen == k) {
      std::vector<int> elems(pick.begin(), pick.end());
      out.add_term(Monomial::squarefree(Subset(elems)), 1);
      return;
    }
    for (int i = start; i <= sz - (k - chosen); ++i) {
      pick[chosen] = A.elements()[i];
      rec(i + 1, chosen + 1);
    }
  };
  rec(0, 0);
  return out;
}

// e_k on variables x_1..x_m.
inline Poly elem_sym(int m, int k) {
  std::vector<int> all(m);
  for (int i = 0; i < m; ++i) all[i] = i + 1;
  return elem_sym(Subset(all), k);
}

// f(A): substitute variable i by the i-th smallest element of A.
inline Poly apply_subset(const Poly& f, const Subset& A) {
  const int m = A.size();
  if (f.max_index() > m)
    throw DomainError("apply_subset: polynomial references an index beyond |A|");
  const auto& a = A.elements();
  Poly out;
  for (const auto& [mono, c] : f.terms())
    out.add_term(mono.relabel([&](int i) { return a[i - 1]; }), c);
  return out;
}

// True iff f is invariant under all adjacent transpositions of 1..m.
inline bool is_symmetric(const Poly& f, int m) {
  if (f.max_index() > m)
    throw DomainError("is_symmetric: polynomial references an index beyond m");
  for (int i = 1; i < m; ++i) {
    Poly swapped;
    for (const auto& [mono, c] : f.terms()) {
      swapped.add_term(mono.relabel([&](int j) {
        if (j == i) return i + 1;
        if (j == i + 1) return i;
        return j;
      }), c);
    }
    if (!(swapped == f)) return false;
  }
  return true;
}

// Evaluate a subset-indexed sum against a symmetric polynomial on m
// variables: sum over A of lambda_A * f(A).
inline Poly evaluate(const FormalSum& lam, const Poly& f) {
  if (!is_symmetric(f, lam.m()))
    throw DomainError("evaluate: polynomial is not symmetric in 1..m");
  Poly out;
  for (const auto& [A, c] : lam.terms()) {
    Poly fa = apply_subset(f, A);
    for (const auto& [mono, v] : fa.terms()) out.add_term(mono, Rat(c) * v);
  }
  return out;
}

// Largest count of distinct variables in a nonzero monomial of f.
inline int max_distinct_vars(const Poly& f) {
  if (f.is_zero()) throw DomainError("max_distinct_vars: zero polynomial");
  int mx = 0;
  for (const auto& [m, c] : f.terms()) mx = std::max(mx, m.distinct_vars());
  return mx;
}

// (1/(m-k+1)) * sum_i d/dx_i, summed over every index that appears in p.
inline Poly diff_operator(const Poly& p, int m, int k) {
  if (m - k + 1 == 0) throw DomainError("diff_operator: m - k + 1 must be nonzero");
  const Rat scale = Rat(1) / Rat(m - k + 1);
  std::vector<int> indices;
  for (const auto& [mono, c] : p.terms())
    for (const auto& [i, e] : mono.exps()) indices.push_back(i);
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  Poly out;
  for (int i : indices) {
    for (const auto& [mono, c] : p.terms()) {
      auto [mult, reduced] = mono.derivative(i);
      if (mult != 0) out.add_term(reduced, c * mult * scale);
    }
  }
  return out;
}

// Writes the squarefree monomial prod_{i in S} x_i (|S| = k, ambient
// {1..m+k}) as an exact Q-combination of the e_k(A) with A ranging over
// m-subsets of {1..m+k}.  Uses the rewriting identity
//
//   (m-(k-l)) * x_{i_1}...x_{i_l} * e_{k-l}(B)
//     = x_{i_1}...x_{i_{l-1}} * ( sum_{b in B} e_{k-l+1}({i_l} u B\{b})
//                                 - (m-(k-l+1)) * e_{k-l+1}(B) )
//
// applied down from l = k to l = 0.  The output is re-expanded and compared
// against the target monomial before returning.
inline std::vector<std::pair<Rat, Subset>> monomial_span_certificate(
    const Subset& S, int m, int k) {
  if (k < 0 || m < 0 || k > m)
    throw DomainError("monomial_span_certificate: need 0 <= k <= m");
  if (S.size() != k)
    throw DomainError("monomial_span_certificate: |S| must equal k");
  const int n = m + k;
  if (S.max_element() > n)
    throw DomainError("monomial_span_certificate: S must lie in {1..m+k}");

  std::map<Subset, Rat> acc;
  // mult holds the still-attached prefix x_{i_1}..x_{i_l}
  std::function<void(std::vector<int>&, const Subset&, const Rat&)> rec =
      [&](std::vector<int>& mult, const Subset& B, const Rat& q) {
        if (q == 0) return;
        const int l = static_cast<int>(mult.size());
        if (l == 0) {
          acc[B] += q;
          return;
        }
        const Rat c = Rat(m - (k - l));
        const int il = mult.back();
        mult.pop_back();
        for (int b : B.elements())
          rec(mult, B.without(b).with(il), q / c);
        rec(mult, B, -q * Rat(m - (k - l + 1)) / c);
        mult.push_back(il);
      };

  std::vector<int> mult = S.elements();
  rec(mult, S.complement(n), Rat(1));

  std::vector<std::pair<Rat, Subset>> out;
  Poly check;
  for (const auto& [A, q] : acc) {
    if (q == 0) continue;
    out.push_back({q, A});
    check = check + apply_subset(elem_sym(m, k), A).scaled(q);
  }
  if (!(check == Poly::monomial(Monomial::squarefree(S))))
    throw InvariantViolation(
        "monomial_span_certificate: expansion does not match the target monomial");
  return out;
}

}  // namespace hyperocta
