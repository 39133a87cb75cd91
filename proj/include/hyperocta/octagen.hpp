#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hyperocta/errors.hpp"
#include "hyperocta/numeric.hpp"
#include "hyperocta/subsets.hpp"
#include "hyperocta/sympoly.hpp"
#include "hyperocta/zlattice.hpp"

namespace hyperocta {

// The data of a j-fold hyperoctahedral m-sum in ambient {1..n}: a base set B
// of size m-j plus j disjoint pairs, all indices distinct.  Stored in
// canonical form: each pair (lo, hi) with lo < hi, pairs sorted by first
// element.  Swapping a pair negates the expansion, so canonicalization is a
// sign normalization.
class OctaSpec {
 public:
  OctaSpec(int n, int m, Subset base, std::vector<std::pair<int, int>> pairs)
      : n_(n), m_(m), base_(std::move(base)), pairs_(std::move(pairs)) {
    const int j = static_cast<int>(pairs_.size());
    if (m_ - j < 0) throw DomainError("OctaSpec: more pairs than subset size");
    if (m_ + j > n_) throw DomainError("OctaSpec: m + j exceeds n");
    if (base_.size() != m_ - j)
      throw DomainError("OctaSpec: base size must be m - #pairs");
    std::vector<int> used = base_.elements();
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      const auto& [lo, hi] = pairs_[i];
      if (lo >= hi) throw DomainError("OctaSpec: pairs must satisfy lo < hi");
      if (lo < 1 || hi > n_) throw DomainError("OctaSpec: pair index out of range");
      if (i > 0 && pairs_[i - 1].first >= lo)
        throw DomainError("OctaSpec: pairs must be sorted by first element");
      used.push_back(lo);
      used.push_back(hi);
    }
    std::sort(used.begin(), used.end());
    for (std::size_t i = 1; i < used.size(); ++i)
      if (used[i - 1] == used[i])
        throw DomainError("OctaSpec: indices must be pairwise distinct");
    if (!used.empty() && used.back() > n_)
      throw DomainError("OctaSpec: index exceeds n");
  }

  int n() const { return n_; }
  int m() const { return m_; }
  int num_pairs() const { return static_cast<int>(pairs_.size()); }
  const Subset& base() const { return base_; }
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }

  std::string to_string() const {
    std::string s = "B=" + base_.to_string() + " pairs=[";
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      if (i) s += ",";
      s += "(" + std::to_string(pairs_[i].first) + "," +
           std::to_string(pairs_[i].second) + ")";
    }
    return s + "]";
  }

  friend bool operator==(const OctaSpec& a, const OctaSpec& b) = default;

 private:
  int n_, m_;
  Subset base_;
  std::vector<std::pair<int, int>> pairs_;
};

// Canonicalize raw pair data; the returned sign is +1/-1 according to the
// parity of within-pair swaps, so sign * expand(spec) equals the expansion
// of the raw data.
inline std::pair<OctaSpec, int> make_canonical_spec(
    int n, int m, Subset base, std::vector<std::pair<int, int>> pairs) {
  int sign = 1;
  for (auto& p : pairs) {
    if (p.first > p.second) {
      std::swap(p.first, p.second);
      sign = -sign;
    }
  }
  std::sort(pairs.begin(), pairs.end());
  return {OctaSpec(n, m, std::move(base), std::move(pairs)), sign};
}

// The alternating sum over the 2^j choices: for each selector, the subset
// base u {pair_i[eps_i]} enters with sign (-1)^(sum eps).
inline FormalSum expand(const OctaSpec& spec) {
  FormalSum out(spec.n(), spec.m());
  const int j = spec.num_pairs();
  for (std::uint32_t mask = 0; mask < (1u << j); ++mask) {
    Subset s = spec.base();
    int parity = 0;
    for (int i = 0; i < j; ++i) {
      const bool hi = (mask >> i) & 1;
      s = s.with(hi ? spec.pairs()[i].second : spec.pairs()[i].first);
      parity ^= hi ? 1 : 0;
    }
    out.add_term(s, parity ? Int(-1) : Int(1));
  }
  return out;
}

// All canonical specs with j pairs, deterministic order: bases in colex,
// then the 2j support elements in colex, then matchings with ascending
// first elements.
inline std::vector<OctaSpec> enumerate_specs(int n, int m, int j) {
  if (j < 0 || j > m) throw DomainError("enumerate_specs: need 0 <= j <= m");
  std::vector<OctaSpec> out;
  if (m + j > n) return out;
  for (const Subset& base : enumerate_subsets(n, m - j)) {
    const Subset rest = base.complement(n);
    // choose the 2j paired elements from rest, then match them up
    std::vector<int> chosen;
    std::function<void(std::size_t)> choose = [&](std::size_t start) {
      if (static_cast<int>(chosen.size()) == 2 * j) {
        std::vector<std::pair<int, int>> pairs;
        std::vector<int> pool = chosen;
        std::function<void()> match = [&]() {
          if (pool.empty()) {
            out.push_back(OctaSpec(n, m, base, pairs));
            return;
          }
          const int a = pool.front();
          for (std::size_t bi = 1; bi < pool.size(); ++bi) {
            const int b = pool[bi];
            std::vector<int> next;
            for (std::size_t t = 1; t < pool.size(); ++t)
              if (t != bi) next.push_back(pool[t]);
            pairs.push_back({a, b});
            std::swap(pool, next);
            match();
            std::swap(pool, next);
            pairs.pop_back();
          }
        };
        match();
        return;
      }
      for (std::size_t i = start; i < rest.elements().size(); ++i) {
        chosen.push_back(rest.elements()[i]);
        choose(i + 1);
        chosen.pop_back();
      }
    };
    choose(0);
  }
  return out;
}

// The sublattice of Z^C(n,m) generated by all j-pair hyperoctahedral sums
// (colex coordinates).  j = m+1 is the zero lattice: no specs exist.
inline Lattice octa_lattice(int n, int m, int j,
                            const CancelToken* cancel = nullptr) {
  if (j < 0 || j > m + 1)
    throw DomainError("octa_lattice: need 0 <= j <= m+1");
  const std::size_t ambient = binomial(n, m);
  if (j == m + 1) return Lattice::zero(ambient);
  detail::HnfBuilder b(ambient, cancel);
  for (const OctaSpec& spec : enumerate_specs(n, m, j))
    b.insert(fs_to_vector(expand(spec)));
  b.finalize();
  return Lattice::from_hnf_basis(ambient, b.to_matrix());
}

// Coefficient matrix of the map lambda -> sum lambda_A e_k(A): rows are
// m-subsets (colex), columns are k-subsets (colex), entry 1 iff the column
// subset is contained in the row subset.
inline IntMatrix inclusion_matrix(int n, int m, int k) {
  if (k < 0 || k > m || m > n)
    throw DomainError("inclusion_matrix: need 0 <= k <= m <= n");
  IntMatrix M(binomial(n, m), binomial(n, k));
  const auto rows = enumerate_subsets(n, m);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    // enumerate the k-subsets of each row subset directly
    const auto& e = rows[r].elements();
    std::vector<int> pick(k);
    std::function<void(int, int)> rec = [&](int start, int chosen) {
      if (chosen == k) {
        M.at(r, subset_rank(Subset(pick), n)) = 1;
        return;
      }
      for (int i = start; i <= m - (k - chosen); ++i) {
        pick[chosen] = e[i];
        rec(i + 1, chosen + 1);
      }
    };
    rec(0, 0);
  }
  return M;
}

// Rows are m-subsets (colex); columns are the monomials occurring in any
// f(A), in graded-colex order; entries are the exact coefficients.
inline RatMatrix poly_relation_matrix(int n, int m, const Poly& f) {
  if (!is_symmetric(f, m))
    throw DomainError("poly_relation_matrix: polynomial is not symmetric");
  const auto rows = enumerate_subsets(n, m);
  std::vector<Poly> values;
  values.reserve(rows.size());
  std::map<Monomial, std::size_t> columns;
  for (const Subset& A : rows) {
    values.push_back(apply_subset(f, A));
    for (const auto& [mono, c] : values.back().terms()) columns.emplace(mono, 0);
  }
  std::size_t idx = 0;
  for (auto& [mono, col] : columns) col = idx++;
  RatMatrix M(rows.size(), columns.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [mono, c] : values[r].terms())
      M.at(r, columns.at(mono)) = c;
  return M;
}

// Integer relations between the f(A); equals octa_lattice(n, m, k+1) with
// k the largest number of distinct variables in a monomial of f.
inline Lattice poly_kernel(int n, int m, const Poly& f,
                           const CancelToken* cancel = nullptr) {
  return left_kernel_rational(poly_relation_matrix(n, m, f), cancel);
}

struct KernelReport {
  int n = 0;
  int m = 0;
  int k = 0;
  std::size_t kernel_rank = 0;
  std::size_t g_rank = 0;
  bool equal = false;
  std::int64_t elapsed_ms = 0;
};

// Computes the integer kernel of lambda -> sum lambda_A e_k(A) and compares
// it, as a canonical lattice, with the span of the (k+1)-pair
// hyperoctahedral sums.
inline KernelReport verify_ek_kernel(int n, int m, int k,
                                     const CancelToken* cancel = nullptr) {
  if (k < 0 || k > m || m > n)
    throw DomainError("verify_ek_kernel: need 0 <= k <= m <= n");
  const auto start = std::chrono::steady_clock::now();
  const Lattice kernel = left_kernel(inclusion_matrix(n, m, k), cancel);
  const Lattice gens = octa_lattice(n, m, k + 1, cancel);
  KernelReport rep;
  rep.n = n;
  rep.m = m;
  rep.k = k;
  rep.kernel_rank = kernel.rank();
  rep.g_rank = gens.rank();
  rep.equal = lattices_equal(kernel, gens);
  rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return rep;
}

}  // namespace hyperocta
