#pragma once

// Sparse multivariate polynomials over the tower top field, with the graded
// lexicographic term order (first variable most significant).  No zero
// coefficient is ever stored; addition and multiplication normalize.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ramal/errors.hpp"
#include "ramal/ff.hpp"

namespace ramal {

using VarsPtr = std::shared_ptr<const std::vector<std::string>>;

inline VarsPtr make_vars(std::vector<std::string> names) {
  return std::make_shared<const std::vector<std::string>>(std::move(names));
}

struct GrlexLess {
  bool operator()(const std::vector<u64>& a, const std::vector<u64>& b) const {
    u64 da = 0, db = 0;
    for (u64 e : a) da += e;
    for (u64 e : b) db += e;
    if (da != db) return da < db;
    return a < b;  // lex, first variable most significant
  }
};

class MultiPoly {
 public:
  using TermMap = std::map<std::vector<u64>, FieldElement, GrlexLess>;

  MultiPoly() = default;
  MultiPoly(TowerPtr tw, VarsPtr vars) : tw_(std::move(tw)), vars_(std::move(vars)) {}

  static MultiPoly constant(TowerPtr tw, VarsPtr vars, const FieldElement& c) {
    MultiPoly r(std::move(tw), std::move(vars));
    if (!c.is_zero()) r.terms_[std::vector<u64>(r.vars_->size(), 0)] = c;
    return r;
  }
  static MultiPoly variable(TowerPtr tw, VarsPtr vars, const std::string& name) {
    MultiPoly r(tw, vars);
    std::vector<u64> e(vars->size(), 0);
    e[r.var_index(name)] = 1;
    r.terms_[std::move(e)] = tw->one();
    return r;
  }
  static MultiPoly monomial(TowerPtr tw, VarsPtr vars, std::vector<u64> exps,
                            const FieldElement& c) {
    MultiPoly r(std::move(tw), std::move(vars));
    expect(exps.size() == r.vars_->size(), errc::usage, "MultiPoly::monomial: arity mismatch");
    if (!c.is_zero()) r.terms_[std::move(exps)] = c;
    return r;
  }

  const TowerPtr& tower() const { return tw_; }
  const VarsPtr& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  u64 var_index(const std::string& name) const {
    for (u64 i = 0; i < vars_->size(); ++i)
      if ((*vars_)[i] == name) return i;
    fail(errc::usage, "MultiPoly: unknown variable " + name);
  }

  MultiPoly operator+(const MultiPoly& o) const {
    check_compat(o);
    MultiPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
  }
  MultiPoly operator-() const {
    MultiPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }
  MultiPoly operator-(const MultiPoly& o) const { return *this + (-o); }
  MultiPoly operator*(const MultiPoly& o) const {
    check_compat(o);
    MultiPoly r(tw_, vars_);
    for (const auto& [e1, c1] : terms_)
      for (const auto& [e2, c2] : o.terms_) {
        std::vector<u64> e(e1.size());
        for (size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
        r.add_term(e, c1 * c2);
      }
    return r;
  }
  MultiPoly operator*(const FieldElement& c) const {
    MultiPoly r(tw_, vars_);
    if (c.is_zero()) return r;
    for (const auto& [e, cc] : terms_) r.add_term(e, cc * c);
    return r;
  }
  bool operator==(const MultiPoly& o) const { return terms_ == o.terms_; }

  MultiPoly pow(u64 e) const {
    MultiPoly r = constant(tw_, vars_, tw_->one());
    MultiPoly b = *this;
    while (e) {
      if (e & 1) r = r * b;
      if ((e >>= 1)) b = b * b;
    }
    return r;
  }

  // substitution: images[i] replaces variable i; all images share a universe
  MultiPoly subst(const std::vector<MultiPoly>& images) const {
    expect(images.size() == vars_->size(), errc::usage, "MultiPoly::subst: arity mismatch");
    expect(!images.empty(), errc::usage, "MultiPoly::subst: empty image list");
    MultiPoly r(images[0].tw_, images[0].vars_);
    for (const auto& [e, c] : terms_) {
      MultiPoly t = constant(r.tw_, r.vars_, c);
      for (size_t i = 0; i < e.size(); ++i)
        if (e[i]) t = t * images[i].pow(e[i]);
      r = r + t;
    }
    return r;
  }

  FieldElement eval(const std::vector<FieldElement>& point) const {
    expect(point.size() == vars_->size(), errc::usage, "MultiPoly::eval: arity mismatch");
    FieldElement acc = tw_->zero();
    for (const auto& [e, c] : terms_) {
      FieldElement t = c;
      for (size_t i = 0; i < e.size(); ++i)
        if (e[i]) t = t * point[i].pow(e[i]);
      acc = acc + t;
    }
    return acc;
  }

  // weighted homogeneity: every monomial has the same total weight; a zero
  // polynomial is homogeneous of any weight (reported as 0)
  bool is_homogeneous(const std::vector<i64>& weights, i64* weight_out = nullptr) const {
    expect(weights.size() == vars_->size(), errc::usage, "is_homogeneous: arity mismatch");
    bool first = true;
    i64 w0 = 0;
    for (const auto& [e, c] : terms_) {
      i64 w = 0;
      for (size_t i = 0; i < e.size(); ++i) w += weights[i] * (i64)e[i];
      if (first) {
        w0 = w;
        first = false;
      } else if (w != w0) {
        return false;
      }
    }
    if (weight_out) *weight_out = w0;
    return true;
  }

  u64 total_degree() const {
    u64 d = 0;
    for (const auto& [e, c] : terms_) {
      u64 t = 0;
      for (u64 x : e) t += x;
      d = std::max(d, t);
    }
    return d;
  }

 private:
  void check_compat(const MultiPoly& o) const {
    expect(tw_ == o.tw_ && *vars_ == *o.vars_, errc::usage, "MultiPoly: universe mismatch");
  }
  void add_term(const std::vector<u64>& e, const FieldElement& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else {
      it->second = it->second + c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  TowerPtr tw_;
  VarsPtr vars_;
  TermMap terms_;
};

inline MultiPoly zero_like(const MultiPoly& x) { return MultiPoly(x.tower(), x.vars()); }
inline MultiPoly one_like(const MultiPoly& x) {
  return MultiPoly::constant(x.tower(), x.vars(), x.tower()->one());
}

// (sum c U^a)^{q^i} = sum c^{q^i} U^{a q^i} in characteristic p
inline MultiPoly frob_pow(const MultiPoly& x, u64 q, u64 i) {
  expect(x.tower()->q == q, errc::usage, "frob_pow: q does not match tower");
  u64 qi = checked_pow_u64(q, i);
  MultiPoly acc(x.tower(), x.vars());
  for (const auto& [e, c] : x.terms()) {
    std::vector<u64> e2(e.size());
    for (size_t k = 0; k < e.size(); ++k) e2[k] = e[k] * qi;
    acc = acc + MultiPoly::monomial(x.tower(), x.vars(), std::move(e2), frob_pow(c, q, i));
  }
  return acc;
}

// Fraction of two MultiPoly; equality by cross multiplication, never reduced.
class RationalMP {
 public:
  RationalMP() = default;
  RationalMP(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
    expect(!den_.is_zero(), errc::division_by_zero, "RationalMP: zero denominator");
  }
  static RationalMP from_poly(const MultiPoly& p) { return RationalMP(p, one_like(p)); }

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }

  RationalMP operator+(const RationalMP& o) const {
    return RationalMP(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  RationalMP operator-(const RationalMP& o) const {
    return RationalMP(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  }
  RationalMP operator*(const RationalMP& o) const {
    return RationalMP(num_ * o.num_, den_ * o.den_);
  }
  bool operator==(const RationalMP& o) const { return num_ * o.den_ == o.num_ * den_; }
  bool is_zero() const { return num_.is_zero(); }

 private:
  MultiPoly num_, den_;
};

inline RationalMP zero_like(const RationalMP& x) {
  return RationalMP(zero_like(x.num()), one_like(x.den()));
}
inline RationalMP one_like(const RationalMP& x) {
  return RationalMP(one_like(x.num()), one_like(x.den()));
}
inline RationalMP frob_pow(const RationalMP& x, u64 q, u64 i) {
  return RationalMP(frob_pow(x.num(), q, i), frob_pow(x.den(), q, i));
}

}  // namespace ramal
