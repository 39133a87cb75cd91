#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hyperocta/errors.hpp"
#include "hyperocta/numeric.hpp"
#include "hyperocta/octagen.hpp"
#include "hyperocta/subsets.hpp"
#include "hyperocta/sympoly.hpp"

namespace hyperocta {

struct CertEntry {
  Int coeff;
  OctaSpec spec;
};

// An explicit decomposition of a relation among the e_k(A) into (k+1)-pair
// hyperoctahedral sums: sum of coeff * expand(spec) over the entries equals
// the certified vector.
class Certificate {
 public:
  Certificate(int n, int m, int k, std::vector<CertEntry> entries)
      : n_(n), m_(m), k_(k), entries_(std::move(entries)) {
    if (k_ < 0 || k_ > m_ || m_ > n_)
      throw DomainError("Certificate: need 0 <= k <= m <= n");
    for (const CertEntry& e : entries_) {
      if (e.spec.n() != n_ || e.spec.m() != m_)
        throw DomainError("Certificate: entry context mismatch");
      if (e.spec.num_pairs() != k_ + 1)
        throw DomainError("Certificate: entry must have exactly k+1 pairs");
    }
  }

  int n() const { return n_; }
  int m() const { return m_; }
  int k() const { return k_; }
  const std::vector<CertEntry>& entries() const { return entries_; }

  FormalSum expansion() const {
    FormalSum out(n_, m_);
    for (const CertEntry& e : entries_)
      out = fs_add(out, fs_scale(e.coeff, expand(e.spec)));
    return out;
  }

 private:
  int n_, m_, k_;
  std::vector<CertEntry> entries_;
};

namespace detail {

struct RawEntry {
  Int coeff;
  Subset base;
  std::vector<std::pair<int, int>> pairs;
};

// k = 0 base case: the relation satisfies sum lambda_A = 0.  Telescope every
// support subset to the anchor {1..m} along single-swap steps (largest
// element out, smallest missing anchor element in); each step is a 1-pair
// sum.  The anchor's residual coefficient must end at zero.
inline void telescope_to_anchor(FormalSum lam, std::vector<RawEntry>& out) {
  const int m = lam.m();
  std::vector<int> anchor_elems(m);
  for (int i = 0; i < m; ++i) anchor_elems[i] = i + 1;
  const Subset anchor(anchor_elems);

  while (!lam.terms().empty()) {
    auto it = lam.terms().rbegin();  // colex-largest support subset
    const Subset A = it->first;
    const Int c = it->second;
    // the anchor is the colex minimum, so it can only surface alone
    if (A == anchor)
      throw InvariantViolation(
          "telescope: nonzero anchor residue; input was not a relation");
    const int a = A.max_element();  // A != anchor, so max(A) > m
    int b = 0;
    for (int x = 1; x <= m; ++x) {
      if (!A.contains(x)) { b = x; break; }
    }
    const Subset base = A.without(a);
    // expand(base, (b, a)) = [A'] - [A] with A' = base u {b}
    out.push_back({-c, base, {{b, a}}});
    lam.add_term(A, -c);
    lam.add_term(base.with(b), c);
  }
}

inline void decompose_rec(FormalSum lam, int k, int n_cur, int depth,
                          int depth_limit, std::vector<RawEntry>& out) {
  if (lam.is_zero()) return;
  if (depth > depth_limit)
    throw InvariantViolation("decompose: recursion depth limit exceeded");
  const int m = lam.m();
  if (k == 0) {
    telescope_to_anchor(std::move(lam), out);
    return;
  }
  if (n_cur <= m + k)
    throw InvariantViolation(
        "decompose: nonzero relation where the e_k(A) are independent");

  // split by membership of the top index
  FormalSum with_top(lam.n(), m - 1);
  for (const auto& [A, c] : lam.terms())
    if (A.contains(n_cur)) with_top.add_term(A.without(n_cur), c);

  // with_top is a relation among the e_{k-1}(A') on {1..n_cur-1}; decompose
  // it, then lift every k-pair sum by the pair (r_i, n_cur) with r_i the
  // smallest index it leaves unused.
  std::vector<RawEntry> sub;
  decompose_rec(std::move(with_top), k - 1, n_cur - 1, depth + 1, depth_limit,
                sub);

  FormalSum remainder = lam;
  for (const RawEntry& e : sub) {
    std::vector<bool> used(n_cur + 1, false);
    for (int x : e.base.elements()) used[x] = true;
    for (const auto& [lo, hi] : e.pairs) { used[lo] = true; used[hi] = true; }
    int r = 0;
    for (int x = 1; x < n_cur; ++x) {
      if (!used[x]) { r = x; break; }
    }
    if (r == 0)
      throw InvariantViolation("decompose: no unused index available for lift");
    // canonical pair (r, n_cur) swaps the roles of the two new choices,
    // negating the expansion; compensate in the coefficient.
    std::vector<std::pair<int, int>> pairs = e.pairs;
    pairs.push_back({r, n_cur});
    std::sort(pairs.begin(), pairs.end());
    RawEntry lifted{-e.coeff, e.base, std::move(pairs)};
    FormalSum delta(lam.n(), m);
    {
      OctaSpec spec(lam.n(), m, lifted.base, lifted.pairs);
      delta = fs_scale(lifted.coeff, expand(spec));
    }
    remainder = fs_add(remainder, fs_scale(Int(-1), delta));
    out.push_back(std::move(lifted));
  }

  for (const auto& [A, c] : remainder.terms())
    if (A.contains(n_cur))
      throw InvariantViolation("decompose: top index survived the lift step");

  decompose_rec(std::move(remainder), k, n_cur - 1, depth + 1, depth_limit,
                out);
}

}  // namespace detail

// Decompose a relation among the e_k(A) into an integer combination of
// (k+1)-pair hyperoctahedral sums.  Throws NotARelation (naming a witness
// monomial) when the evaluated sum is nonzero.
inline Certificate decompose(const FormalSum& lam, int k) {
  const int n = lam.n(), m = lam.m();
  if (k < 0 || k > m) throw DomainError("decompose: need 0 <= k <= m");
  const Poly value = evaluate(lam, elem_sym(m, k));
  if (!value.is_zero()) {
    const auto& [mono, c] = *value.terms().begin();
    std::string msg = mono.is_one()
                          ? ("constant term " + rat_to_string(c))
                          : ("monomial " + mono.to_string() +
                             " has coefficient " + rat_to_string(c));
    throw NotARelation("not a relation: " + msg);
  }
  std::vector<detail::RawEntry> raw;
  const int depth_limit = std::max(0, n - m - k) * (k + 1) + k + 8;
  detail::decompose_rec(lam, k, n, 0, depth_limit, raw);
  std::vector<CertEntry> entries;
  entries.reserve(raw.size());
  for (detail::RawEntry& e : raw) {
    if (e.coeff == 0) continue;
    entries.push_back(
        {std::move(e.coeff), OctaSpec(n, m, std::move(e.base), std::move(e.pairs))});
  }
  return Certificate(n, m, k, std::move(entries));
}

// Independent check: every entry must be a (k+1)-pair spec in context, the
// expansions must sum to lam exactly, and each expansion must itself be a
// relation among the e_k(A).
inline bool verify_certificate(const FormalSum& lam, const Certificate& cert) {
  if (lam.n() != cert.n() || lam.m() != cert.m())
    throw DomainError("verify_certificate: context mismatch");
  const Poly ek = elem_sym(cert.m(), cert.k());
  FormalSum total(cert.n(), cert.m());
  for (const CertEntry& e : cert.entries()) {
    if (e.spec.num_pairs() != cert.k() + 1) return false;
    if (e.spec.n() != cert.n() || e.spec.m() != cert.m()) return false;
    const FormalSum ex = expand(e.spec);
    if (!evaluate(ex, ek).is_zero()) return false;
    total = fs_add(total, fs_scale(e.coeff, ex));
  }
  return total == lam;
}

}  // namespace hyperocta
