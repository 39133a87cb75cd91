#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "hyperocta/errors.hpp"
#include "hyperocta/numeric.hpp"

namespace hyperocta {

// An m-subset of {1..n}: strictly increasing 1-based indices.  Ordering is
// colexicographic (decides map iteration order and all vectorizations).
class Subset {
 public:
  Subset() = default;

  explicit Subset(std::vector<int> elems) : elems_(std::move(elems)) {
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      if (elems_[i] < 1)
        throw DomainError("Subset: indices must be >= 1");
      if (i > 0 && elems_[i - 1] >= elems_[i])
        throw DomainError("Subset: elements must be strictly increasing");
    }
  }

  Subset(std::initializer_list<int> elems)
      : Subset(std::vector<int>(elems)) {}

  int size() const { return static_cast<int>(elems_.size()); }
  bool empty() const { return elems_.empty(); }
  const std::vector<int>& elements() const { return elems_; }
  int max_element() const { return elems_.empty() ? 0 : elems_.back(); }

  bool contains(int x) const {
    return std::binary_search(elems_.begin(), elems_.end(), x);
  }

  Subset with(int x) const {
    std::vector<int> v = elems_;
    v.insert(std::lower_bound(v.begin(), v.end(), x), x);
    return Subset(std::move(v));
  }

  Subset without(int x) const {
    std::vector<int> v;
    v.reserve(elems_.size());
    for (int e : elems_)
      if (e != x) v.push_back(e);
    if (v.size() == elems_.size())
      throw DomainError("Subset::without: element not present");
    return Subset(std::move(v));
  }

  // {1..n} \ this.
  Subset complement(int n) const {
    std::vector<int> v;
    std::size_t j = 0;
    for (int x = 1; x <= n; ++x) {
      if (j < elems_.size() && elems_[j] == x) { ++j; continue; }
      v.push_back(x);
    }
    return Subset(std::move(v));
  }

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(elems_[i]);
    }
    return s + "}";
  }

  friend bool operator==(const Subset& a, const Subset& b) = default;

  // Colex: compare the largest differing element.
  friend std::strong_ordering operator<=>(const Subset& a, const Subset& b) {
    auto i = a.elems_.rbegin();
    auto j = b.elems_.rbegin();
    for (; i != a.elems_.rend() && j != b.elems_.rend(); ++i, ++j)
      if (*i != *j) return *i <=> *j;
    return a.elems_.size() <=> b.elems_.size();
  }

 private:
  std::vector<int> elems_;
};

// All m-subsets of {1..n} in colexicographic order.
inline std::vector<Subset> enumerate_subsets(int n, int m) {
  if (m < 0 || m > n) throw DomainError("enumerate_subsets: need 0 <= m <= n");
  std::vector<Subset> out;
  out.reserve(binomial(n, m));
  std::vector<int> cur(m);
  for (int i = 0; i < m; ++i) cur[i] = i + 1;
  while (true) {
    out.push_back(Subset(cur));
    // colex successor: bump the lowest slot that has headroom, reset below.
    int i = 0;
    while (i < m) {
      int cap = (i + 1 < m) ? cur[i + 1] - 1 : n;
      if (cur[i] < cap) break;
      ++i;
    }
    if (i == m) break;
    ++cur[i];
    for (int t = 0; t < i; ++t) cur[t] = t + 1;
  }
  return out;
}

// Colex rank: sum of C(s_i - 1, i) over 1-based positions i.
inline std::size_t subset_rank(const Subset& s, int n) {
  if (s.max_element() > n) throw DomainError("subset_rank: element exceeds n");
  std::size_t r = 0;
  const auto& e = s.elements();
  for (std::size_t i = 0; i < e.size(); ++i)
    r += binomial(e[i] - 1, static_cast<int>(i) + 1);
  return r;
}

inline Subset subset_unrank(std::size_t r, int n, int m) {
  if (m < 0 || m > n) throw DomainError("subset_unrank: need 0 <= m <= n");
  if (r >= binomial(n, m)) throw DomainError("subset_unrank: rank out of range");
  std::vector<int> elems(m);
  int hi = n;
  for (int i = m; i >= 1; --i) {
    int c = hi;
    while (binomial(c - 1, i) > r) --c;
    elems[i - 1] = c;
    r -= binomial(c - 1, i);
    hi = c - 1;
  }
  return Subset(std::move(elems));
}

// A vector in Z^C(n,m): sparse map from m-subsets of {1..n} to integers.
// Zero coefficients are never stored.
class FormalSum {
 public:
  FormalSum(int n, int m) : n_(n), m_(m) {
    if (m < 0 || m > n) throw DomainError("FormalSum: need 0 <= m <= n");
  }

  int n() const { return n_; }
  int m() const { return m_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t support_size() const { return terms_.size(); }
  const std::map<Subset, Int>& terms() const { return terms_; }

  Int coeff(const Subset& s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? Int(0) : it->second;
  }

  void add_term(const Subset& s, const Int& c) {
    if (s.size() != m_) throw DomainError("FormalSum: subset size != m");
    if (s.max_element() > n_) throw DomainError("FormalSum: element exceeds n");
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(s, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  friend bool operator==(const FormalSum& a, const FormalSum& b) = default;

 private:
  int n_ = 0, m_ = 0;
  std::map<Subset, Int> terms_;
};

inline FormalSum fs_add(const FormalSum& a, const FormalSum& b) {
  if (a.n() != b.n() || a.m() != b.m())
    throw DomainError("fs_add: mismatched (n, m)");
  FormalSum out = a;
  for (const auto& [s, c] : b.terms()) out.add_term(s, c);
  return out;
}

inline FormalSum fs_scale(const Int& c, const FormalSum& a) {
  FormalSum out(a.n(), a.m());
  if (c == 0) return out;
  for (const auto& [s, v] : a.terms()) out.add_term(s, c * v);
  return out;
}

// Coordinates in colex order, length C(n,m).
inline std::vector<Int> fs_to_vector(const FormalSum& a) {
  std::vector<Int> v(binomial(a.n(), a.m()), Int(0));
  for (const auto& [s, c] : a.terms()) v[subset_rank(s, a.n())] = c;
  return v;
}

}  // namespace hyperocta
