#pragma once

#include <atomic>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hyperocta/errors.hpp"
#include "hyperocta/numeric.hpp"

namespace hyperocta {

// Cooperative cancellation for long HNF runs; checked at row-step
// granularity.
struct CancelToken {
  std::atomic<bool> cancelled{false};
};

// Dense matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Int(0)) {}

  static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows) {
    if (rows.empty()) return IntMatrix();
    IntMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_)
        throw DomainError("IntMatrix: ragged rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<Int> row(std::size_t i) const {
    return std::vector<Int>(data_.begin() + i * cols_,
                            data_.begin() + (i + 1) * cols_);
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> data_;
};

// Dense matrix of exact rationals (kernel input for the tensor models).
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rat& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rat& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rat> data_;
};

namespace detail {

// Incremental row-style Hermite normal form.  Maintains rows with strictly
// increasing pivot columns, positive pivots, zeros below each pivot; the
// finalize() pass reduces entries above each pivot into [0, pivot), which is
// the canonical-form invariant all equality tests depend on.
class HnfBuilder {
 public:
  explicit HnfBuilder(std::size_t cols, const CancelToken* cancel = nullptr)
      : cols_(cols), cancel_(cancel) {}

  void insert(std::vector<Int> v) {
    if (v.size() != cols_) throw DomainError("HnfBuilder: bad row length");
    if (cancel_ && cancel_->cancelled.load(std::memory_order_relaxed))
      throw OperationCancelled();
    while (true) {
      std::size_t p = 0;
      while (p < cols_ && v[p] == 0) ++p;
      if (p == cols_) return;  // reduced to zero
      const std::size_t slot = find_slot(p);
      if (slot == rows_.size() || pivots_[slot] != p) {
        if (v[p] < 0)
          for (auto& x : v) x = -x;
        rows_.insert(rows_.begin() + slot, std::move(v));
        pivots_.insert(pivots_.begin() + slot, p);
        return;
      }
      std::vector<Int>& r = rows_[slot];
      const Int a = r[p];
      const Int b = v[p];
      if (b % a == 0) {
        const Int q = b / a;
        for (std::size_t j = p; j < cols_; ++j)
          if (r[j] != 0) v[j] -= q * r[j];
      } else {
        Int g, s, t;
        xgcd(a, b, g, s, t);
        const Int ag = a / g, bg = b / g;
        for (std::size_t j = p; j < cols_; ++j) {
          if (r[j] == 0 && v[j] == 0) continue;
          const Int rj = r[j], vj = v[j];
          r[j] = s * rj + t * vj;
          v[j] = ag * vj - bg * rj;
        }
      }
      // v[p] is now zero; continue with the next pivot candidate
    }
  }

  // Reduce above-pivot entries; afterwards the rows are the canonical HNF.
  void finalize() {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (cancel_ && cancel_->cancelled.load(std::memory_order_relaxed))
        throw OperationCancelled();
      const std::size_t p = pivots_[i];
      const Int& piv = rows_[i][p];
      for (std::size_t j = 0; j < i; ++j) {
        const Int q = floor_div(rows_[j][p], piv);
        if (q == 0) continue;
        for (std::size_t c = p; c < cols_; ++c)
          if (rows_[i][c] != 0) rows_[j][c] -= q * rows_[i][c];
      }
    }
  }

  const std::vector<std::vector<Int>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  IntMatrix to_matrix() const {
    IntMatrix m(rows_.size(), cols_);
    for (std::size_t i = 0; i < rows_.size(); ++i)
      for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = rows_[i][j];
    return m;
  }

 private:
  // first index whose pivot is >= p
  std::size_t find_slot(std::size_t p) const {
    std::size_t lo = 0, hi = pivots_.size();
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (pivots_[mid] < p) lo = mid + 1;
      else hi = mid;
    }
    return lo;
  }

  std::size_t cols_;
  const CancelToken* cancel_;
  std::vector<std::vector<Int>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace detail

// Row-style HNF of the row span of M; zero rows dropped, pivots positive and
// strictly right-moving, above-pivot entries reduced into [0, pivot).  Two
// integer matrices have equal row span iff their HNFs are identical.
inline IntMatrix hnf(const IntMatrix& M, const CancelToken* cancel = nullptr) {
  detail::HnfBuilder b(M.cols(), cancel);
  for (std::size_t i = 0; i < M.rows(); ++i) b.insert(M.row(i));
  b.finalize();
  return b.to_matrix();
}

// A sublattice of Z^N held by its canonical HNF basis.
class Lattice {
 public:
  Lattice() = default;

  static Lattice zero(std::size_t ambient) {
    Lattice l;
    l.ambient_ = ambient;
    l.basis_ = IntMatrix(0, ambient);
    return l;
  }

  static Lattice from_hnf_basis(std::size_t ambient, IntMatrix basis) {
    Lattice l;
    l.ambient_ = ambient;
    l.basis_ = std::move(basis);
    return l;
  }

  std::size_t ambient() const { return ambient_; }
  std::size_t rank() const { return basis_.rows(); }
  const IntMatrix& basis() const { return basis_; }

  friend bool operator==(const Lattice& a, const Lattice& b) = default;

 private:
  std::size_t ambient_ = 0;
  IntMatrix basis_;
};

inline Lattice lattice_from_rows(const std::vector<std::vector<Int>>& rows,
                                 std::size_t ambient,
                                 const CancelToken* cancel = nullptr) {
  detail::HnfBuilder b(ambient, cancel);
  for (const auto& r : rows) {
    if (r.size() != ambient) throw DomainError("lattice_from_rows: bad length");
    b.insert(r);
  }
  b.finalize();
  return Lattice::from_hnf_basis(ambient, b.to_matrix());
}

// {v in Z^rows : v * M = 0}.  Runs the HNF reduction on rows of the block
// [M | I] and keeps the transformation parts of the rows whose M-part
// vanished; kernels of maps into free groups are saturated, so this basis
// spans the whole kernel.
inline Lattice left_kernel(const IntMatrix& M,
                           const CancelToken* cancel = nullptr) {
  const std::size_t nr = M.rows(), nc = M.cols();
  detail::HnfBuilder b(nc + nr, cancel);
  for (std::size_t i = 0; i < nr; ++i) {
    std::vector<Int> v(nc + nr, Int(0));
    for (std::size_t j = 0; j < nc; ++j) v[j] = M.at(i, j);
    v[nc + i] = 1;
    b.insert(std::move(v));
  }
  b.finalize();
  std::vector<std::vector<Int>> kernel_rows;
  const auto& rows = b.rows();
  const auto& pivots = b.pivots();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (pivots[i] < nc) continue;  // row still touches the M block
    kernel_rows.emplace_back(rows[i].begin() + nc, rows[i].end());
  }
  IntMatrix basis(kernel_rows.size(), nr);
  for (std::size_t i = 0; i < kernel_rows.size(); ++i)
    for (std::size_t j = 0; j < nr; ++j) basis.at(i, j) = kernel_rows[i][j];
  return Lattice::from_hnf_basis(nr, std::move(basis));
}

// Integer left-kernel of a rational matrix: scaling a column by a nonzero
// integer does not change the left-kernel, so clear each column's
// denominators by their lcm and delegate.
inline Lattice left_kernel_rational(const RatMatrix& M,
                                    const CancelToken* cancel = nullptr) {
  IntMatrix N(M.rows(), M.cols());
  for (std::size_t j = 0; j < M.cols(); ++j) {
    Int l = 1;
    for (std::size_t i = 0; i < M.rows(); ++i) {
      const Int d = boost::multiprecision::denominator(M.at(i, j));
      l = boost::multiprecision::lcm(l, d);
    }
    for (std::size_t i = 0; i < M.rows(); ++i) {
      const Rat scaled = M.at(i, j) * Rat(l);
      if (boost::multiprecision::denominator(scaled) != 1)
        throw InvariantViolation("left_kernel_rational: column scaling failed");
      N.at(i, j) = boost::multiprecision::numerator(scaled);
    }
  }
  return left_kernel(N, cancel);
}

namespace detail {

// Reduce v against an HNF basis; returns true iff it reduces to zero.
inline bool reduces_to_zero(const Lattice& L, std::vector<Int> v) {
  const IntMatrix& B = L.basis();
  for (std::size_t i = 0; i < B.rows(); ++i) {
    std::size_t p = 0;
    while (p < L.ambient() && B.at(i, p) == 0) ++p;
    if (p == L.ambient() || v[p] == 0) continue;
    if (v[p] % B.at(i, p) != 0) return false;
    const Int q = v[p] / B.at(i, p);
    for (std::size_t c = p; c < L.ambient(); ++c)
      if (B.at(i, c) != 0) v[c] -= q * B.at(i, c);
  }
  for (const Int& x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace detail

inline bool lattice_contains(const Lattice& L, const std::vector<Int>& v) {
  if (v.size() != L.ambient())
    throw DomainError("lattice_contains: dimension mismatch");
  return detail::reduces_to_zero(L, v);
}

inline bool is_sublattice(const Lattice& L1, const Lattice& L2) {
  if (L1.ambient() != L2.ambient())
    throw DomainError("is_sublattice: dimension mismatch");
  for (std::size_t i = 0; i < L1.basis().rows(); ++i)
    if (!detail::reduces_to_zero(L2, L1.basis().row(i))) return false;
  return true;
}

inline bool lattices_equal(const Lattice& L1, const Lattice& L2) {
  if (L1.ambient() != L2.ambient())
    throw DomainError("lattices_equal: dimension mismatch");
  return L1.basis() == L2.basis();
}

inline std::size_t lattice_rank(const Lattice& L) { return L.rank(); }

}  // namespace hyperocta
