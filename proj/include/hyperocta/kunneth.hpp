#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hyperocta/errors.hpp"
#include "hyperocta/numeric.hpp"
#include "hyperocta/octagen.hpp"
#include "hyperocta/subsets.hpp"
#include "hyperocta/zlattice.hpp"

namespace hyperocta {

// A finite-dimensional graded commutative Q-algebra with an integration
// functional whose pairing (i, j) -> integral(b_i * b_j) is nondegenerate.
// Classes on an f-fold product space are modeled as elements of the f-fold
// tensor power, so every operation below is exact linear algebra over Q.
//
// Shipped models: point (Q), p1 (Q[t]/t^2, integral = coefficient of t),
// p2 (Q[t]/t^3, integral = coefficient of t^2), p1xp1 (Q[u,v]/(u^2,v^2),
// integral = coefficient of uv).
class Algebra {
 public:
  Algebra(std::string model_name, std::vector<std::string> names,
          std::vector<int> degrees, int unit,
          std::vector<std::vector<std::vector<Rat>>> mul,
          std::vector<Rat> integral)
      : model_name_(std::move(model_name)),
        names_(std::move(names)),
        degrees_(std::move(degrees)),
        unit_(unit),
        mul_(std::move(mul)),
        integral_(std::move(integral)) {
    validate();
    compute_duals();
  }

  const std::string& model_name() const { return model_name_; }
  int dim() const { return static_cast<int>(names_.size()); }
  int unit() const { return unit_; }
  int degree(int i) const { return degrees_[i]; }
  const std::string& name(int i) const { return names_[i]; }
  const std::vector<Rat>& mul_vec(int i, int j) const { return mul_[i][j]; }
  const Rat& integral(int i) const { return integral_[i]; }

  // coords of b_i^dual: integral(b_i * b_j^dual) = delta_ij
  const std::vector<Rat>& dual_coords(int i) const { return duals_[i]; }

  std::vector<Rat> mul_elems(const std::vector<Rat>& a,
                             const std::vector<Rat>& b) const {
    std::vector<Rat> out(dim(), Rat(0));
    for (int i = 0; i < dim(); ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < dim(); ++j) {
        if (b[j] == 0) continue;
        const Rat c = a[i] * b[j];
        for (int l = 0; l < dim(); ++l)
          if (mul_[i][j][l] != 0) out[l] += c * mul_[i][j][l];
      }
    }
    return out;
  }

  Rat integral_of(const std::vector<Rat>& a) const {
    Rat s = 0;
    for (int i = 0; i < dim(); ++i)
      if (a[i] != 0) s += a[i] * integral_[i];
    return s;
  }

  static std::shared_ptr<const Algebra> point() {
    return std::make_shared<Algebra>(
        "point", std::vector<std::string>{"1"}, std::vector<int>{0}, 0,
        std::vector<std::vector<std::vector<Rat>>>{{{Rat(1)}}},
        std::vector<Rat>{Rat(1)});
  }

  static std::shared_ptr<const Algebra> p1() {
    std::vector<std::vector<std::vector<Rat>>> mul(2,
        std::vector<std::vector<Rat>>(2, std::vector<Rat>(2, Rat(0))));
    mul[0][0][0] = 1;            // 1*1 = 1
    mul[0][1][1] = mul[1][0][1] = 1;  // 1*t = t
    // t*t = 0
    return std::make_shared<Algebra>(
        "p1", std::vector<std::string>{"1", "t"}, std::vector<int>{0, 1}, 0,
        std::move(mul), std::vector<Rat>{Rat(0), Rat(1)});
  }

  static std::shared_ptr<const Algebra> p2() {
    std::vector<std::vector<std::vector<Rat>>> mul(3,
        std::vector<std::vector<Rat>>(3, std::vector<Rat>(3, Rat(0))));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i + j < 3) mul[i][j][i + j] = 1;
    return std::make_shared<Algebra>(
        "p2", std::vector<std::string>{"1", "t", "t^2"},
        std::vector<int>{0, 1, 2}, 0, std::move(mul),
        std::vector<Rat>{Rat(0), Rat(0), Rat(1)});
  }

  static std::shared_ptr<const Algebra> p1xp1() {
    // basis 1, u, v, uv with u^2 = v^2 = 0
    const int U = 1, V = 2, UV = 3;
    std::vector<std::vector<std::vector<Rat>>> mul(4,
        std::vector<std::vector<Rat>>(4, std::vector<Rat>(4, Rat(0))));
    auto set = [&](int i, int j, int l) { mul[i][j][l] = mul[j][i][l] = 1; };
    set(0, 0, 0);
    set(0, U, U);
    set(0, V, V);
    set(0, UV, UV);
    set(U, V, UV);
    return std::make_shared<Algebra>(
        "p1xp1", std::vector<std::string>{"1", "u", "v", "uv"},
        std::vector<int>{0, 1, 1, 2}, 0, std::move(mul),
        std::vector<Rat>{Rat(0), Rat(0), Rat(0), Rat(1)});
  }

 private:
  void validate() const {
    const int d = dim();
    if (d <= 0) throw ModelValidationError("model has no basis");
    if (static_cast<int>(degrees_.size()) != d ||
        static_cast<int>(integral_.size()) != d ||
        static_cast<int>(mul_.size()) != d)
      throw ModelValidationError("model table sizes disagree with basis size");
    if (unit_ < 0 || unit_ >= d)
      throw ModelValidationError("unit index out of range");
    for (int i = 0; i < d; ++i) {
      if (static_cast<int>(mul_[i].size()) != d)
        throw ModelValidationError("model table sizes disagree with basis size");
      for (int j = 0; j < d; ++j)
        if (static_cast<int>(mul_[i][j].size()) != d)
          throw ModelValidationError("model table sizes disagree with basis size");
    }
    for (int j = 0; j < d; ++j)
      for (int l = 0; l < d; ++l)
        if (mul_[unit_][j][l] != Rat(l == j ? 1 : 0))
          throw ModelValidationError("unit axiom fails at basis element " +
                                     names_[j]);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (mul_[i][j] != mul_[j][i])
          throw ModelValidationError("commutativity fails at pair (" +
                                     names_[i] + ", " + names_[j] + ")");
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int l = 0; l < d; ++l)
          if (mul_[i][j][l] != 0 && degrees_[l] != degrees_[i] + degrees_[j])
            throw ModelValidationError("degree grading fails at product " +
                                       names_[i] + "*" + names_[j]);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int l = 0; l < d; ++l) {
          // (b_i b_j) b_l == b_i (b_j b_l)
          std::vector<Rat> left(d, Rat(0)), right(d, Rat(0));
          for (int s = 0; s < d; ++s) {
            if (mul_[i][j][s] != 0)
              for (int t = 0; t < d; ++t)
                left[t] += mul_[i][j][s] * mul_[s][l][t];
            if (mul_[j][l][s] != 0)
              for (int t = 0; t < d; ++t)
                right[t] += mul_[j][l][s] * mul_[i][s][t];
          }
          if (left != right)
            throw ModelValidationError("associativity fails at triple (" +
                                       names_[i] + ", " + names_[j] + ", " +
                                       names_[l] + ")");
        }
  }

  // invert the Gram matrix g_ij = integral(b_i b_j); columns give the duals
  void compute_duals() {
    const int d = dim();
    std::vector<std::vector<Rat>> aug(d, std::vector<Rat>(2 * d, Rat(0)));
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j)
        aug[i][j] = integral_of(mul_[i][j]);
      aug[i][d + i] = 1;
    }
    for (int col = 0; col < d; ++col) {
      int piv = -1;
      for (int r = col; r < d; ++r)
        if (aug[r][col] != 0) { piv = r; break; }
      if (piv < 0)
        throw ModelValidationError(
            "integration pairing is degenerate (Gram matrix is singular)");
      std::swap(aug[col], aug[piv]);
      const Rat inv = Rat(1) / aug[col][col];
      for (int c = 0; c < 2 * d; ++c) aug[col][c] *= inv;
      for (int r = 0; r < d; ++r) {
        if (r == col || aug[r][col] == 0) continue;
        const Rat f = aug[r][col];
        for (int c = 0; c < 2 * d; ++c) aug[r][c] -= f * aug[col][c];
      }
    }
    duals_.assign(d, std::vector<Rat>(d, Rat(0)));
    // Gram is symmetric, so its inverse columns solve G x = e_j
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i) duals_[j][i] = aug[i][d + j];
  }

  std::string model_name_;
  std::vector<std::string> names_;
  std::vector<int> degrees_;
  int unit_;
  std::vector<std::vector<std::vector<Rat>>> mul_;
  std::vector<Rat> integral_;
  std::vector<std::vector<Rat>> duals_;
};

// An element of the f-fold tensor power of the model algebra: sparse map
// from length-f basis index tuples to exact rationals.  f = 0 holds a bare
// scalar (the empty tuple).
class Tensor {
 public:
  Tensor(std::shared_ptr<const Algebra> alg, int factors)
      : alg_(std::move(alg)), factors_(factors) {
    if (factors_ < 0) throw DomainError("Tensor: factors must be >= 0");
  }

  static Tensor scalar(std::shared_ptr<const Algebra> alg, const Rat& c) {
    Tensor t(std::move(alg), 0);
    t.add_term({}, c);
    return t;
  }

  static Tensor unit(std::shared_ptr<const Algebra> alg, int factors) {
    const int u = alg->unit();
    Tensor t(std::move(alg), factors);
    t.add_term(std::vector<int>(factors, u), 1);
    return t;
  }

  static Tensor basis_element(std::shared_ptr<const Algebra> alg,
                              std::vector<int> idx) {
    Tensor t(alg, static_cast<int>(idx.size()));
    t.add_term(std::move(idx), 1);
    return t;
  }

  // 1-factor tensor from coordinates
  static Tensor from_coords(std::shared_ptr<const Algebra> alg,
                            const std::vector<Rat>& coords) {
    Tensor t(alg, 1);
    for (int i = 0; i < alg->dim(); ++i)
      if (coords[i] != 0) t.add_term({i}, coords[i]);
    return t;
  }

  const std::shared_ptr<const Algebra>& algebra() const { return alg_; }
  int factors() const { return factors_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<std::vector<int>, Rat>& terms() const { return terms_; }

  Rat coeff(const std::vector<int>& idx) const {
    auto it = terms_.find(idx);
    return it == terms_.end() ? Rat(0) : it->second;
  }

  // scalar value of a 0-factor tensor
  Rat scalar_value() const {
    if (factors_ != 0) throw DomainError("Tensor::scalar_value: factors != 0");
    return coeff({});
  }

  void add_term(std::vector<int> idx, const Rat& c) {
    if (static_cast<int>(idx.size()) != factors_)
      throw DomainError("Tensor: tuple length mismatch");
    for (int i : idx)
      if (i < 0 || i >= alg_->dim())
        throw DomainError("Tensor: basis index out of range");
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(std::move(idx), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Tensor operator+(const Tensor& o) const {
    require_compatible(o);
    Tensor out = *this;
    for (const auto& [idx, c] : o.terms_) out.add_term(idx, c);
    return out;
  }

  Tensor operator-(const Tensor& o) const {
    require_compatible(o);
    Tensor out = *this;
    for (const auto& [idx, c] : o.terms_) out.add_term(idx, -c);
    return out;
  }

  Tensor scaled(const Rat& c) const {
    Tensor out(alg_, factors_);
    if (c == 0) return out;
    for (const auto& [idx, v] : terms_) out.add_term(idx, c * v);
    return out;
  }

  friend bool operator==(const Tensor& a, const Tensor& b) {
    return a.factors_ == b.factors_ && a.alg_.get() == b.alg_.get() &&
           a.terms_ == b.terms_;
  }

  void require_compatible(const Tensor& o) const {
    if (alg_.get() != o.alg_.get())
      throw DomainError("Tensor: operands belong to different model instances");
    if (factors_ != o.factors_)
      throw DomainError("Tensor: factor count mismatch");
  }

 private:
  std::shared_ptr<const Algebra> alg_;
  int factors_;
  std::map<std::vector<int>, Rat> terms_;
};

// Componentwise product through the multiplication table, extended
// bilinearly.
inline Tensor cup(const Tensor& a, const Tensor& b) {
  a.require_compatible(b);
  const Algebra& alg = *a.algebra();
  const int f = a.factors();
  Tensor out(a.algebra(), f);
  for (const auto& [ia, ca] : a.terms()) {
    for (const auto& [ib, cb] : b.terms()) {
      // expand position by position
      std::vector<std::pair<std::vector<int>, Rat>> partial;
      partial.push_back({{}, ca * cb});
      for (int p = 0; p < f && !partial.empty(); ++p) {
        const std::vector<Rat>& prod = alg.mul_vec(ia[p], ib[p]);
        std::vector<std::pair<std::vector<int>, Rat>> next;
        for (const auto& [idx, c] : partial) {
          for (int l = 0; l < alg.dim(); ++l) {
            if (prod[l] == 0) continue;
            std::vector<int> ext = idx;
            ext.push_back(l);
            next.push_back({std::move(ext), c * prod[l]});
          }
        }
        partial = std::move(next);
      }
      for (auto& [idx, c] : partial) out.add_term(std::move(idx), c);
    }
  }
  return out;
}

// Product of classes living on disjoint factor sets.  positions_a and
// positions_b are 1-based, disjoint, and together cover {1..total}.
inline Tensor box_on(const Tensor& a, const std::vector<int>& positions_a,
                     const Tensor& b, const std::vector<int>& positions_b) {
  if (a.algebra().get() != b.algebra().get())
    throw DomainError("box_on: operands belong to different model instances");
  const int total = static_cast<int>(positions_a.size() + positions_b.size());
  if (static_cast<int>(positions_a.size()) != a.factors() ||
      static_cast<int>(positions_b.size()) != b.factors())
    throw DomainError("box_on: position list length mismatch");
  std::vector<int> seen(total + 1, 0);
  for (int p : positions_a) {
    if (p < 1 || p > total || seen[p]++) throw DomainError("box_on: bad positions");
  }
  for (int p : positions_b) {
    if (p < 1 || p > total || seen[p]++) throw DomainError("box_on: bad positions");
  }
  Tensor out(a.algebra(), total);
  for (const auto& [ia, ca] : a.terms()) {
    for (const auto& [ib, cb] : b.terms()) {
      std::vector<int> idx(total, 0);
      for (std::size_t i = 0; i < positions_a.size(); ++i)
        idx[positions_a[i] - 1] = ia[i];
      for (std::size_t i = 0; i < positions_b.size(); ++i)
        idx[positions_b[i] - 1] = ib[i];
      out.add_term(std::move(idx), ca * cb);
    }
  }
  return out;
}

// Juxtaposition: a on the first factors, b on the rest.
inline Tensor box(const Tensor& a, const Tensor& b) {
  std::vector<int> pa(a.factors()), pb(b.factors());
  for (int i = 0; i < a.factors(); ++i) pa[i] = i + 1;
  for (int i = 0; i < b.factors(); ++i) pb[i] = a.factors() + i + 1;
  return box_on(a, pa, b, pb);
}

// Pullback along the projection that keeps `positions`: place factor i of a
// at positions[i], the unit elsewhere.
inline Tensor pullback(const Tensor& a, const std::vector<int>& positions,
                       int total) {
  if (static_cast<int>(positions.size()) != a.factors())
    throw DomainError("pullback: position list length mismatch");
  std::vector<int> rest;
  std::vector<int> seen(total + 1, 0);
  for (int p : positions) {
    if (p < 1 || p > total || seen[p]++) throw DomainError("pullback: bad positions");
  }
  for (int p = 1; p <= total; ++p)
    if (!seen[p]) rest.push_back(p);
  return box_on(a, positions,
                Tensor::unit(a.algebra(), static_cast<int>(rest.size())), rest);
}

// Pushforward: integrate out every factor not in `keep` (1-based, strictly
// increasing); each dropped position contributes integral(b_i).
inline Tensor pushforward(const Tensor& a, const std::vector<int>& keep) {
  const int f = a.factors();
  std::vector<bool> kept(f + 1, false);
  int prev = 0;
  for (int p : keep) {
    if (p <= prev || p > f) throw DomainError("pushforward: bad kept positions");
    kept[p] = true;
    prev = p;
  }
  const Algebra& alg = *a.algebra();
  Tensor out(a.algebra(), static_cast<int>(keep.size()));
  for (const auto& [idx, c] : a.terms()) {
    Rat w = c;
    std::vector<int> rest;
    rest.reserve(keep.size());
    for (int p = 1; p <= f && w != 0; ++p) {
      if (kept[p]) rest.push_back(idx[p - 1]);
      else w *= alg.integral(idx[p - 1]);
    }
    if (w != 0) out.add_term(std::move(rest), w);
  }
  return out;
}

// dest[i] is the 0-based destination of factor i.
inline Tensor permute_factors(const Tensor& a, const std::vector<int>& dest) {
  const int f = a.factors();
  if (static_cast<int>(dest.size()) != f)
    throw DomainError("permute_factors: permutation length mismatch");
  std::vector<int> seen(f, 0);
  for (int d : dest) {
    if (d < 0 || d >= f || seen[d]++) throw DomainError("permute_factors: not a permutation");
  }
  Tensor out(a.algebra(), f);
  for (const auto& [idx, c] : a.terms()) {
    std::vector<int> nidx(f);
    for (int i = 0; i < f; ++i) nidx[dest[i]] = idx[i];
    out.add_term(std::move(nidx), c);
  }
  return out;
}

inline bool is_symmetric_tensor(const Tensor& a) {
  const int f = a.factors();
  for (int i = 0; i + 1 < f; ++i) {
    std::vector<int> dest(f);
    for (int t = 0; t < f; ++t) dest[t] = t;
    std::swap(dest[i], dest[i + 1]);
    if (!(permute_factors(a, dest) == a)) return false;
  }
  return true;
}

// b_i^dual as 1-factor tensors: integral(b_i * b_j^dual) = delta_ij.
inline std::vector<Tensor> dual_basis(std::shared_ptr<const Algebra> alg) {
  std::vector<Tensor> out;
  out.reserve(alg->dim());
  for (int i = 0; i < alg->dim(); ++i)
    out.push_back(Tensor::from_coords(alg, alg->dual_coords(i)));
  return out;
}

// The diagonal class on m factors: sum over index tuples of
// integral(b_{i_1} * ... * b_{i_m}) times the tensor of dual elements.  It
// is the unique class with integral(diag * a_1 x...x a_m) =
// integral(a_1 * ... * a_m); that characterization is checked exhaustively
// at construction.
inline Tensor diagonal(std::shared_ptr<const Algebra> alg, int m) {
  if (m < 1) throw DomainError("diagonal: need m >= 1");
  const int d = alg->dim();
  Tensor out(alg, m);
  std::vector<int> tuple(m, 0);
  while (true) {
    // integral of the product over the tuple
    std::vector<Rat> acc(d, Rat(0));
    acc[tuple[0]] = 1;
    for (int p = 1; p < m; ++p) {
      std::vector<Rat> b(d, Rat(0));
      b[tuple[p]] = 1;
      acc = alg->mul_elems(acc, b);
    }
    const Rat c = alg->integral_of(acc);
    if (c != 0) {
      // expand the tensor product of the dual coordinate vectors
      std::vector<std::pair<std::vector<int>, Rat>> partial;
      partial.push_back({{}, c});
      for (int p = 0; p < m; ++p) {
        const std::vector<Rat>& coords = alg->dual_coords(tuple[p]);
        std::vector<std::pair<std::vector<int>, Rat>> next;
        for (const auto& [idx, w] : partial) {
          for (int l = 0; l < d; ++l) {
            if (coords[l] == 0) continue;
            std::vector<int> ext = idx;
            ext.push_back(l);
            next.push_back({std::move(ext), w * coords[l]});
          }
        }
        partial = std::move(next);
      }
      for (auto& [idx, w] : partial) out.add_term(std::move(idx), w);
    }
    int p = m - 1;
    while (p >= 0 && tuple[p] == d - 1) tuple[p--] = 0;
    if (p < 0) break;
    ++tuple[p];
  }
  // verify the defining property on all basis tuples
  std::fill(tuple.begin(), tuple.end(), 0);
  while (true) {
    std::vector<Rat> acc(d, Rat(0));
    acc[tuple[0]] = 1;
    for (int p = 1; p < m; ++p) {
      std::vector<Rat> b(d, Rat(0));
      b[tuple[p]] = 1;
      acc = alg->mul_elems(acc, b);
    }
    const Tensor probe = Tensor::basis_element(alg, tuple);
    const Rat lhs = pushforward(cup(out, probe), {}).scalar_value();
    if (lhs != alg->integral_of(acc))
      throw ModelValidationError(
          "diagonal characterization fails; the model pairing is inconsistent");
    int p = m - 1;
    while (p >= 0 && tuple[p] == d - 1) tuple[p--] = 0;
    if (p < 0) break;
    ++tuple[p];
  }
  return out;
}

// Correspondence action on factor `position` of alpha: pull back along the
// extra factor, cup with the correspondence placed on (position, new), push
// the old factor out, and put the new factor back in place.
inline Tensor apply_corr(const Tensor& corr, const Tensor& alpha, int position) {
  if (corr.factors() != 2) throw DomainError("apply_corr: correspondence must have 2 factors");
  const int f = alpha.factors();
  if (position < 1 || position > f) throw DomainError("apply_corr: bad position");
  std::vector<int> all(f);
  for (int i = 0; i < f; ++i) all[i] = i + 1;
  const Tensor big = cup(pullback(alpha, all, f + 1),
                         pullback(corr, {position, f + 1}, f + 1));
  std::vector<int> keep;
  for (int p = 1; p <= f + 1; ++p)
    if (p != position) keep.push_back(p);
  const Tensor dropped = pushforward(big, keep);
  // factors are now (1..position-1, position+1..f, new); rotate the last back
  std::vector<int> dest(f);
  for (int i = 0; i < position - 1; ++i) dest[i] = i;
  for (int i = position - 1; i < f - 1; ++i) dest[i] = i + 1;
  dest[f - 1] = position - 1;
  return permute_factors(dropped, dest);
}

// (pi_13)_* (pi_12^* corr1 cup pi_23^* corr2)
inline Tensor compose_corr(const Tensor& corr1, const Tensor& corr2) {
  if (corr1.factors() != 2 || corr2.factors() != 2)
    throw DomainError("compose_corr: correspondences must have 2 factors");
  const Tensor big = cup(pullback(corr1, {1, 2}, 3), pullback(corr2, {2, 3}, 3));
  return pushforward(big, {1, 3});
}

// A model together with the distinguished classes gamma and gamma_star with
// integral(gamma * gamma_star) = 1 (validated).
struct ModelSetup {
  std::shared_ptr<const Algebra> alg;
  Tensor gamma;
  Tensor gamma_star;

  ModelSetup(std::shared_ptr<const Algebra> a, Tensor g, Tensor gs)
      : alg(std::move(a)), gamma(std::move(g)), gamma_star(std::move(gs)) {
    if (gamma.factors() != 1 || gamma_star.factors() != 1)
      throw ModelValidationError("gamma and gamma_star must be 1-factor classes");
    if (gamma.algebra().get() != alg.get() ||
        gamma_star.algebra().get() != alg.get())
      throw ModelValidationError("gamma classes must live in the model algebra");
    const Rat pairing = pushforward(cup(gamma, gamma_star), {}).scalar_value();
    if (pairing != 1)
      throw ModelValidationError(
          "integral(gamma * gamma_star) must equal 1, got " +
          rat_to_string(pairing));
  }

  Tensor gamma_power(int e) const {
    if (e == 0) return Tensor::scalar(alg, 1);
    Tensor out = gamma;
    for (int i = 1; i < e; ++i) out = box(out, gamma);
    return out;
  }
};

// Highest-degree basis element with nonzero integral (smallest index on
// ties).  Nondegeneracy of the pairing guarantees one exists: the unit row
// of the Gram matrix is the integral vector.
inline int default_point_index(const Algebra& alg) {
  int best = -1;
  for (int i = 0; i < alg.dim(); ++i) {
    if (alg.integral(i) == 0) continue;
    if (best < 0 || alg.degree(i) > alg.degree(best)) best = i;
  }
  if (best < 0)
    throw ModelValidationError("no basis element has nonzero integral");
  return best;
}

// The default point class: the element above scaled so its integral is 1.
inline Tensor default_point_class(std::shared_ptr<const Algebra> alg) {
  const int i = default_point_index(*alg);
  Tensor g(alg, 1);
  g.add_term({i}, Rat(1) / alg->integral(i));
  return g;
}

// Built-in setups: gamma = point class, gamma_star = unit.
inline ModelSetup builtin_model(const std::string& name) {
  std::shared_ptr<const Algebra> alg;
  if (name == "point") alg = Algebra::point();
  else if (name == "p1") alg = Algebra::p1();
  else if (name == "p2") alg = Algebra::p2();
  else if (name == "p1xp1") alg = Algebra::p1xp1();
  else throw DomainError("unknown builtin model: " + name);
  return ModelSetup(alg, default_point_class(alg), Tensor::unit(alg, 1));
}

// Projection of (gamma_star on the complement) cup alpha down to the factors
// in B.
inline Tensor projected_class(const Tensor& alpha, const ModelSetup& setup,
                              const Subset& B) {
  const int m = alpha.factors();
  if (B.max_element() > m)
    throw DomainError("projected_class: B must be a subset of the factors");
  const Subset comp = B.complement(m);
  Tensor weight = Tensor::unit(setup.alg, m);
  if (!comp.empty()) {
    Tensor gs_power = setup.gamma_star;
    for (int i = 1; i < comp.size(); ++i) gs_power = box(gs_power, setup.gamma_star);
    weight = box_on(gs_power, comp.elements(),
                    Tensor::unit(setup.alg, B.size()), B.elements());
  }
  return pushforward(cup(weight, alpha), B.elements());
}

// The k-th modified class: sum over B subset of {1..k} of
// (-1)^(k-|B|) [gamma on the complement] box [projected_class on B].
inline Tensor modified_class(const Tensor& alpha, const ModelSetup& setup,
                             int k) {
  const int m = alpha.factors();
  if (k < 0 || k > m) throw DomainError("modified_class: need 0 <= k <= m");
  Tensor out(setup.alg, k);
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    std::vector<int> b_elems, comp_elems;
    for (int i = 1; i <= k; ++i) {
      if ((mask >> (i - 1)) & 1) b_elems.push_back(i);
      else comp_elems.push_back(i);
    }
    const Subset B{std::vector<int>(b_elems)};
    Tensor proj = projected_class(alpha, setup, B);
    Tensor placed = box_on(setup.gamma_power(static_cast<int>(comp_elems.size())),
                           comp_elems, proj, b_elems);
    const bool negate = ((k - static_cast<int>(b_elems.size())) % 2) != 0;
    out = negate ? out - placed : out + placed;
  }
  return out;
}

// The Gross-Schoen style alternating sum over nonempty B: partial diagonals
// padded by the point class.  Coincides with modified_class of the diagonal
// whenever the empty projection vanishes.
inline Tensor modified_diagonal(const ModelSetup& setup, int l) {
  if (l < 1) throw DomainError("modified_diagonal: need l >= 1");
  Tensor out(setup.alg, l);
  for (std::uint32_t mask = 1; mask < (1u << l); ++mask) {
    std::vector<int> b_elems, comp_elems;
    for (int i = 1; i <= l; ++i) {
      if ((mask >> (i - 1)) & 1) b_elems.push_back(i);
      else comp_elems.push_back(i);
    }
    Tensor diag = diagonal(setup.alg, static_cast<int>(b_elems.size()));
    Tensor placed = box_on(setup.gamma_power(static_cast<int>(comp_elems.size())),
                           comp_elems, diag, b_elems);
    const bool negate = ((l - static_cast<int>(b_elems.size())) % 2) != 0;
    out = negate ? out - placed : out + placed;
  }
  return out;
}

// -1 for the zero class, otherwise the largest k <= m with a nonzero k-th
// modified class.  Some modified class is nonzero whenever alpha is (the
// modified classes reassemble alpha), so the answer is well-defined.
inline int vanishing_order(const Tensor& alpha, const ModelSetup& setup) {
  if (!is_symmetric_tensor(alpha))
    throw DomainError("vanishing_order: class must be symmetric");
  if (alpha.is_zero()) return -1;
  for (int k = alpha.factors(); k >= 0; --k)
    if (!modified_class(alpha, setup, k).is_zero()) return k;
  throw InvariantViolation(
      "vanishing_order: all modified classes vanish for a nonzero class");
}

// gamma placed on {1..n} \ A, alpha placed on A.
inline Tensor placed_class(const Tensor& alpha, const ModelSetup& setup,
                           const Subset& A, int n) {
  const int m = alpha.factors();
  if (A.size() != m) throw DomainError("placed_class: |A| != factors");
  if (A.max_element() > n) throw DomainError("placed_class: A exceeds n");
  const Subset comp = A.complement(n);
  return box_on(setup.gamma_power(comp.size()), comp.elements(), alpha,
                A.elements());
}

// Computes the integer kernel of A -> [gamma outside A] box alpha over
// m-subsets of {1..n} and compares it with the hyperoctahedral lattice
// predicted by the vanishing order.
inline KernelReport verify_class_kernel(const Tensor& alpha,
                                        const ModelSetup& setup, int n,
                                        const CancelToken* cancel = nullptr) {
  const int m = alpha.factors();
  if (m > n) throw DomainError("verify_class_kernel: need m <= n");
  if (!is_symmetric_tensor(alpha))
    throw DomainError("verify_class_kernel: class must be symmetric");
  const auto start = std::chrono::steady_clock::now();

  const auto subsets = enumerate_subsets(n, m);
  std::vector<Tensor> images;
  images.reserve(subsets.size());
  std::map<std::vector<int>, std::size_t> columns;
  for (const Subset& A : subsets) {
    images.push_back(placed_class(alpha, setup, A, n));
    for (const auto& [idx, c] : images.back().terms()) columns.emplace(idx, 0);
  }
  std::size_t ci = 0;
  for (auto& [idx, col] : columns) col = ci++;
  RatMatrix M(subsets.size(), columns.size());
  for (std::size_t r = 0; r < subsets.size(); ++r)
    for (const auto& [idx, c] : images[r].terms())
      M.at(r, columns.at(idx)) = c;

  const Lattice kernel = left_kernel_rational(M, cancel);
  const int order = vanishing_order(alpha, setup);
  const Lattice gens = octa_lattice(n, m, order + 1, cancel);

  KernelReport rep;
  rep.n = n;
  rep.m = m;
  rep.k = order;
  rep.kernel_rank = kernel.rank();
  rep.g_rank = gens.rank();
  rep.equal = lattices_equal(kernel, gens);
  rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return rep;
}

}  // namespace hyperocta
