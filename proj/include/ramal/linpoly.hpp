#pragma once

// F_q-linear (linearized) polynomials a_d X^{q^d} + ... + a_1 X^q + a_0 X,
// their composition algebra, and the subspace <-> polynomial bijection.
//
// The generic coefficient operations are templated so the same composition
// and evaluation code runs over field elements, multivariate polynomials,
// rational expressions, and truncated series; a coefficient type opts in by
// providing operators +,-,*,== plus the free functions zero_like / one_like /
// frob_pow found by ADL.

#include <algorithm>
#include <functional>
#include <set>
#include <vector>

#include "ramal/errors.hpp"
#include "ramal/ff.hpp"

namespace ramal {

inline FieldElement zero_like(const FieldElement& x) { return x.tower()->zero(); }
inline FieldElement one_like(const FieldElement& x) { return x.tower()->one(); }

// x^{q^i} for the tower's q
inline FieldElement frob_pow(const FieldElement& x, u64 q, u64 i) {
  expect(x.tower()->q == q, errc::usage, "frob_pow: q does not match tower");
  return frobenius(x, x.tower()->s * i);
}

template <class R>
concept LinCoeff = requires(const R& a, const R& b) {
  { a + b } -> std::convertible_to<R>;
  { a - b } -> std::convertible_to<R>;
  { a * b } -> std::convertible_to<R>;
  { a == b } -> std::convertible_to<bool>;
  { zero_like(a) } -> std::convertible_to<R>;
  { one_like(a) } -> std::convertible_to<R>;
  { frob_pow(a, u64(2), u64(1)) } -> std::convertible_to<R>;
};

namespace lin {

template <LinCoeff R>
void trim(std::vector<R>& a) {
  while (!a.empty() && a.back() == zero_like(a.back())) a.pop_back();
}

// sum a_i x^{q^i}
template <LinCoeff R, class X>
X eval(const std::vector<R>& a, const X& x, u64 q) {
  X acc = zero_like(x);
  for (u64 i = 0; i < a.size(); ++i) acc = acc + a[i] * frob_pow(x, q, i);
  return acc;
}

// coefficients of P(Q(X)): c_k = sum_{i+j=k} a_i b_j^{q^i}
template <LinCoeff R>
std::vector<R> compose(const std::vector<R>& a, const std::vector<R>& b, u64 q) {
  if (a.empty() || b.empty()) return {};
  std::vector<R> c((a.size() - 1) + (b.size() - 1) + 1, zero_like(a[0]));
  for (u64 i = 0; i < a.size(); ++i)
    for (u64 j = 0; j < b.size(); ++j) c[i + j] = c[i + j] + a[i] * frob_pow(b[j], q, i);
  trim(c);
  return c;
}

}  // namespace lin

// Concrete linearized polynomial over the tower top field.
class LinearizedPoly {
 public:
  LinearizedPoly() = default;
  LinearizedPoly(TowerPtr tw, std::vector<FieldElement> coeffs)
      : tw_(std::move(tw)), a_(std::move(coeffs)) {
    lin::trim(a_);
  }

  const TowerPtr& tower() const { return tw_; }
  bool is_zero() const { return a_.empty(); }
  // index of the top stored coefficient; the zero polynomial has no height
  u64 height() const {
    expect(!a_.empty(), errc::usage, "LinearizedPoly::height: zero polynomial");
    return a_.size() - 1;
  }
  const std::vector<FieldElement>& coeffs() const { return a_; }
  FieldElement coeff(u64 i) const { return i < a_.size() ? a_[i] : tw_->zero(); }
  bool nondegenerate() const {
    return !a_.empty() && !a_.front().is_zero() && !a_.back().is_zero();
  }

  FieldElement eval(const FieldElement& x) const {
    expect(x.tower() == tw_, errc::usage, "LinearizedPoly::eval: tower mismatch");
    if (a_.empty()) return tw_->zero();
    return lin::eval(a_, x, tw_->q);
  }

  bool operator==(const LinearizedPoly& o) const { return a_ == o.a_; }

 private:
  TowerPtr tw_;
  std::vector<FieldElement> a_;
};

inline LinearizedPoly lin_identity(const TowerPtr& tw) {
  return LinearizedPoly(tw, {tw->one()});
}

inline LinearizedPoly compose(const LinearizedPoly& P, const LinearizedPoly& Q) {
  expect(P.tower() == Q.tower(), errc::usage, "compose: tower mismatch");
  return LinearizedPoly(P.tower(), lin::compose(P.coeffs(), Q.coeffs(), P.tower()->q));
}

// P*(a_1,...,a_d) = X + a_1 X^q + ... + a_d X^{q^d}
inline LinearizedPoly star(const TowerPtr& tw, const std::vector<FieldElement>& a) {
  std::vector<FieldElement> c;
  c.reserve(a.size() + 1);
  c.push_back(tw->one());
  for (const auto& x : a) c.push_back(x);
  return LinearizedPoly(tw, std::move(c));
}

// All x with L(x) = target for an F_p-linear map L, found by one pass over the
// field: enumeration order is a base-p odometer over the coordinate basis, so
// each step changes the value by a precomputed basis increment.
inline std::vector<FieldElement> solve_additive(
    const TowerPtr& tw, const std::function<FieldElement(const FieldElement&)>& L,
    const FieldElement& target) {
  const u64 dim = tw->s * tw->m;
  // step[t] = L(b_t) + sum_{t'<t} L(b_{t'})   (the rolled-over digits each
  // contribute -(p-1) = +1 times their basis image in characteristic p)
  std::vector<FieldElement> basis_img;
  basis_img.reserve(dim);
  for (u64 t = 0; t < dim; ++t) {
    std::vector<Coord> c(dim, 0);
    c[t] = 1;
    basis_img.push_back(L(FieldElement(tw, std::move(c))));
  }
  std::vector<FieldElement> step;
  step.reserve(dim);
  FieldElement prefix = tw->zero();
  for (u64 t = 0; t < dim; ++t) {
    step.push_back(basis_img[t] + prefix);
    prefix = prefix + basis_img[t];
  }

  std::vector<FieldElement> sols;
  std::vector<Coord> digits(dim, 0);
  FieldElement value = tw->zero();
  for (u64 idx = 0;; ++idx) {
    if (value == target) sols.push_back(tw->element_at(idx));
    if (idx + 1 == tw->qm) break;
    u64 t = 0;
    while (digits[t] + 1 == tw->p) {
      digits[t] = 0;
      ++t;
    }
    ++digits[t];
    value = value + step[t];
  }
  return sols;
}

// d-dimensional F_q-subspace of the tower top field, held by a basis.
class Subspace {
 public:
  Subspace(TowerPtr tw, std::vector<FieldElement> basis) : tw_(std::move(tw)), basis_(std::move(basis)) {
    expect(checked_pow_u64(tw_->q, basis_.size()) <= 4096, errc::too_large,
           "Subspace: q^d beyond the exhaustive-check bound 4096");
    elements_ = span_elements(tw_, basis_);
    std::set<u64> seen;
    for (const auto& e : elements_) seen.insert(e.index());
    expect(seen.size() == elements_.size(), errc::usage,
           "Subspace: basis is not F_q-linearly independent");
    index_set_.assign(seen.begin(), seen.end());
  }

  const TowerPtr& tower() const { return tw_; }
  u64 dim() const { return basis_.size(); }
  const std::vector<FieldElement>& basis() const { return basis_; }
  // all q^d span elements, in F_q-coefficient odometer order over the basis
  const std::vector<FieldElement>& elements() const { return elements_; }
  const std::vector<u64>& sorted_indices() const { return index_set_; }

  bool contains(const FieldElement& x) const {
    return std::binary_search(index_set_.begin(), index_set_.end(), x.index());
  }
  bool contains_all(const Subspace& other) const {
    for (const auto& e : other.elements())
      if (!contains(e)) return false;
    return true;
  }
  bool operator==(const Subspace& o) const { return index_set_ == o.index_set_; }

  static std::vector<FieldElement> span_elements(const TowerPtr& tw,
                                                 const std::vector<FieldElement>& basis) {
    std::vector<FieldElement> out{tw->zero()};
    for (const auto& b : basis) {
      std::vector<FieldElement> next;
      next.reserve(out.size() * tw->q);
      for (u64 c = 0; c < tw->q; ++c) {
        FieldElement cb = tw->mid_element_at(c) * b;
        for (const auto& e : out) next.push_back(e + cb);
      }
      out = std::move(next);
    }
    return out;
  }

 private:
  TowerPtr tw_;
  std::vector<FieldElement> basis_;
  std::vector<FieldElement> elements_;
  std::vector<u64> index_set_;
};

// Monic linearized polynomial with root set exactly V, built by iterated
// height-one composition P_i = (X^q - c^{q-1} X) o P_{i-1}, c = P_{i-1}(v_i);
// O(d^2) coefficient work instead of expanding the q^d-factor product.  The
// literal product expansion is the test oracle.
inline LinearizedPoly from_subspace(const Subspace& V) {
  const TowerPtr& tw = V.tower();
  LinearizedPoly P = lin_identity(tw);
  for (const auto& v : V.basis()) {
    FieldElement c = P.eval(v);
    expect(!c.is_zero(), errc::usage, "from_subspace: dependent basis vector");
    LinearizedPoly step(tw, {-(c.pow(tw->q - 1)), tw->one()});
    P = compose(step, P);
  }
  return P;
}

// Root space of a nondegenerate P inside the tower top field; errors when
// fewer than q^height(P) roots are rational.
inline Subspace kernel(const LinearizedPoly& P) {
  const TowerPtr& tw = P.tower();
  expect(!P.is_zero(), errc::usage, "kernel: zero polynomial");
  expect(!P.coeffs().front().is_zero(), errc::usage, "kernel: degenerate polynomial (a_0 = 0)");
  u64 d = P.height();
  auto roots = solve_additive(tw, [&](const FieldElement& x) { return P.eval(x); }, tw->zero());
  expect(roots.size() == checked_pow_u64(tw->q, d), errc::roots_not_rational,
         "kernel: root count " + std::to_string(roots.size()) + " below q^d");
  // greedy independent subset in enumeration order
  std::vector<FieldElement> basis;
  std::set<u64> span{tw->zero().index()};
  for (const auto& r : roots) {
    if (r.is_zero() || span.count(r.index())) continue;
    basis.push_back(r);
    span.clear();
    for (const auto& e : Subspace::span_elements(tw, basis)) span.insert(e.index());
    if (basis.size() == d) break;
  }
  return Subspace(tw, std::move(basis));
}

// Flag factorization: for V' <= V returns (P', P'') with P = P'' o P',
// P' = from_subspace(V'), P'' the subspace polynomial of P'(W) for a greedy
// complement W of V' in V (the result is independent of that choice).
inline std::pair<LinearizedPoly, LinearizedPoly> decompose_flag(const Subspace& v_small,
                                                                const Subspace& v_big) {
  const TowerPtr& tw = v_small.tower();
  expect(tw == v_big.tower(), errc::usage, "decompose_flag: tower mismatch");
  expect(v_big.contains_all(v_small), errc::not_a_subspace,
         "decompose_flag: V_small is not contained in V_big");
  LinearizedPoly P1 = from_subspace(v_small);

  std::vector<FieldElement> ext_basis = v_small.basis();
  std::vector<FieldElement> w_basis;
  std::set<u64> span;
  for (const auto& e : Subspace::span_elements(tw, ext_basis)) span.insert(e.index());
  for (const auto& cand : v_big.elements()) {
    if (ext_basis.size() == v_big.dim()) break;
    if (span.count(cand.index())) continue;
    ext_basis.push_back(cand);
    w_basis.push_back(cand);
    span.clear();
    for (const auto& e : Subspace::span_elements(tw, ext_basis)) span.insert(e.index());
  }

  std::vector<FieldElement> img_basis;
  img_basis.reserve(w_basis.size());
  for (const auto& w : w_basis) img_basis.push_back(P1.eval(w));
  LinearizedPoly P2 =
      img_basis.empty() ? lin_identity(tw) : from_subspace(Subspace(tw, img_basis));
  return {P1, P2};
}

// Basis of every d-dimensional F_q-subspace of the tower top field, one per
// subspace, via reduced row echelon forms over F_q.
inline std::vector<std::vector<FieldElement>> all_subspace_bases(const TowerPtr& tw, u64 d) {
  const u64 m = tw->m;
  expect(d <= m, errc::usage, "all_subspace_bases: d > m");
  std::vector<std::vector<FieldElement>> out;
  if (d == 0) {
    out.push_back({});
    return out;
  }

  std::vector<u64> pivots(d);
  // iterate over all pivot column combinations 0 <= p_0 < ... < p_{d-1} < m
  std::function<void(u64, u64)> rec = [&](u64 row, u64 from) {
    if (row == d) {
      // free positions: (i, j) with j > pivots[i], j not a pivot
      std::vector<std::pair<u64, u64>> free_pos;
      std::vector<bool> is_pivot(m, false);
      for (u64 i = 0; i < d; ++i) is_pivot[pivots[i]] = true;
      for (u64 i = 0; i < d; ++i)
        for (u64 j = pivots[i] + 1; j < m; ++j)
          if (!is_pivot[j]) free_pos.push_back({i, j});

      std::vector<u64> fill(free_pos.size(), 0);
      for (;;) {
        std::vector<std::vector<u64>> rows(d, std::vector<u64>(m, 0));
        for (u64 i = 0; i < d; ++i) rows[i][pivots[i]] = 1;
        for (u64 k = 0; k < free_pos.size(); ++k) rows[free_pos[k].first][free_pos[k].second] = fill[k];
        std::vector<FieldElement> basis;
        basis.reserve(d);
        for (u64 i = 0; i < d; ++i) {
          FieldElement e = tw->zero();
          for (u64 j = 0; j < m; ++j) {
            if (!rows[i][j]) continue;
            // z^j scaled by the F_q element with index rows[i][j]
            FieldElement zj = tw->element_at(checked_pow_u64(tw->q, j));
            e = e + tw->mid_element_at(rows[i][j]) * zj;
          }
          basis.push_back(e);
        }
        out.push_back(std::move(basis));
        u64 k = 0;
        while (k < fill.size() && fill[k] + 1 == tw->q) fill[k++] = 0;
        if (k == fill.size()) break;
        ++fill[k];
      }
      return;
    }
    for (u64 c = from; c + (d - row) <= m; ++c) {
      pivots[row] = c;
      rec(row + 1, c + 1);
    }
  };
  rec(0, 0);
  return out;
}

}  // namespace ramal
