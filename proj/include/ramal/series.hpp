#pragma once

// Truncated Laurent series over the tower top field with explicit precision
// tracking.  A series knows its coefficients on [valuation, precision) and
// nothing beyond; arithmetic propagates precision by the pessimistic min rule,
// and any multiplicative operation whose result would retain fewer than 4
// significant coefficients raises PrecisionLoss instead of silently
// truncating.  A series that is zero to its precision reports no valuation.

#include <vector>

#include "ramal/errors.hpp"
#include "ramal/ff.hpp"
#include "ramal/linpoly.hpp"

namespace ramal {

class TruncSeries {
 public:
  static constexpr i64 kMinWidth = 4;

  TruncSeries() = default;

  static TruncSeries zero(TowerPtr tw, i64 prec) {
    TruncSeries f;
    f.tw_ = std::move(tw);
    f.v_ = prec;
    f.prec_ = prec;
    return f;
  }
  static TruncSeries monomial(TowerPtr tw, const FieldElement& c, i64 k, i64 prec) {
    TruncSeries f;
    f.tw_ = tw;
    f.prec_ = prec;
    f.v_ = k;
    f.c_ = {c};
    f.normalize();
    return f;
  }
  static TruncSeries variable(TowerPtr tw, i64 prec) {
    return monomial(tw, tw->one(), 1, prec);
  }
  static TruncSeries constant(TowerPtr tw, const FieldElement& c, i64 prec) {
    return monomial(std::move(tw), c, 0, prec);
  }
  static TruncSeries from_coeffs(TowerPtr tw, i64 valuation, std::vector<FieldElement> coeffs,
                                 i64 prec) {
    TruncSeries f;
    f.tw_ = std::move(tw);
    f.v_ = valuation;
    f.c_ = std::move(coeffs);
    f.prec_ = prec;
    f.normalize();
    return f;
  }

  const TowerPtr& tower() const { return tw_; }
  i64 precision() const { return prec_; }
  bool is_zero_to_precision() const { return c_.empty(); }
  // valuation of a series that is zero to its precision is undefined
  i64 valuation() const {
    expect(!c_.empty(), errc::zero_series, "TruncSeries::valuation: zero series");
    return v_;
  }
  // lower bound usable for residual checks: precision when zero to precision
  i64 val_lower_bound() const { return c_.empty() ? prec_ : v_; }

  FieldElement coeff(i64 k) const {
    expect(k < prec_, errc::precision_loss, "TruncSeries::coeff: beyond tracked precision");
    if (c_.empty() || k < v_ || k >= v_ + (i64)c_.size()) return tw_->zero();
    return c_[(size_t)(k - v_)];
  }

  TruncSeries operator+(const TruncSeries& o) const {
    check(o);
    i64 prec = std::min(prec_, o.prec_);
    if (c_.empty() && o.c_.empty()) return zero(tw_, prec);
    i64 lo = std::min(c_.empty() ? prec : v_, o.c_.empty() ? prec : o.v_);
    lo = std::min(lo, prec);
    std::vector<FieldElement> c((size_t)std::max<i64>(0, prec - lo), tw_->zero());
    auto acc = [&](const TruncSeries& f) {
      for (size_t i = 0; i < f.c_.size(); ++i) {
        i64 k = f.v_ + (i64)i;
        if (k < prec) c[(size_t)(k - lo)] = c[(size_t)(k - lo)] + f.c_[i];
      }
    };
    acc(*this);
    acc(o);
    return from_coeffs(tw_, lo, std::move(c), prec);
  }
  TruncSeries operator-() const {
    TruncSeries f = *this;
    for (auto& x : f.c_) x = -x;
    return f;
  }
  TruncSeries operator-(const TruncSeries& o) const { return *this + (-o); }

  TruncSeries operator*(const TruncSeries& o) const {
    check(o);
    i64 va = c_.empty() ? prec_ : v_;
    i64 vb = o.c_.empty() ? o.prec_ : o.v_;
    i64 prec = std::min(va + o.prec_, vb + prec_);
    if (c_.empty() || o.c_.empty()) return zero(tw_, prec);
    std::vector<FieldElement> c((size_t)std::max<i64>(0, prec - (v_ + o.v_)), tw_->zero());
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      for (size_t j = 0; j < o.c_.size(); ++j) {
        i64 k = v_ + (i64)i + o.v_ + (i64)j;
        if (k - (v_ + o.v_) < (i64)c.size()) c[(size_t)(k - v_ - o.v_)] = c[(size_t)(k - v_ - o.v_)] + c_[i] * o.c_[j];
      }
    }
    auto r = from_coeffs(tw_, v_ + o.v_, std::move(c), prec);
    r.guard_width();
    return r;
  }
  TruncSeries operator*(const FieldElement& s) const {
    if (s.is_zero()) return zero(tw_, prec_);
    TruncSeries f = *this;
    for (auto& x : f.c_) x = x * s;
    f.normalize();
    return f;
  }

  // multiply by x^k
  TruncSeries shift(i64 k) const {
    TruncSeries f = *this;
    f.v_ += k;
    f.prec_ += k;
    return f;
  }

  // Laurent inversion: result precision is prec - 2 v
  TruncSeries inv() const {
    expect(!c_.empty(), errc::non_unit_denominator,
           "TruncSeries::inv: series is zero to its precision");
    i64 w = prec_ - v_;
    std::vector<FieldElement> b((size_t)w, tw_->zero());
    FieldElement u0 = c_[0].inv();
    b[0] = u0;
    for (i64 k = 1; k < w; ++k) {
      FieldElement acc = tw_->zero();
      for (i64 j = 1; j <= k; ++j) {
        FieldElement uj = (j < (i64)c_.size()) ? c_[(size_t)j] : tw_->zero();
        acc = acc + uj * b[(size_t)(k - j)];
      }
      b[(size_t)k] = -(u0 * acc);
    }
    auto r = from_coeffs(tw_, -v_, std::move(b), prec_ - 2 * v_);
    r.guard_width();
    return r;
  }

  TruncSeries pow(u64 e) const {
    if (e == 0) return constant(tw_, tw_->one(), prec_);
    // start wide; the min rule of the multiplications computes the result precision
    TruncSeries r = constant(tw_, tw_->one(), prec_ + std::abs(v_) * (i64)e + 8);
    TruncSeries b = *this;
    while (e) {
      if (e & 1) r = r * b;
      if ((e >>= 1)) b = b * b;
    }
    return r;
  }

  bool operator==(const TruncSeries& o) const {
    return v_ == o.v_ && prec_ == o.prec_ && c_ == o.c_;
  }

  // substitute g for the variable; requires val(g) >= 1
  TruncSeries substitute(const TruncSeries& g) const {
    expect(!g.is_zero_to_precision() && g.valuation() >= 1, errc::usage,
           "TruncSeries::substitute: substituted series needs valuation >= 1");
    i64 prec = std::min(prec_ * g.valuation(), g.precision());
    if (c_.empty()) return zero(tw_, prec);
    TruncSeries acc = zero(tw_, prec);
    TruncSeries ginv = g.inv();
    // highest needed power of g / g^{-1}
    TruncSeries p = constant(tw_, tw_->one(), prec + std::abs(v_) + 8);
    std::vector<TruncSeries> pos{p};
    for (i64 k = 1; k < std::max<i64>(prec_, 1); ++k) pos.push_back(pos.back() * g);
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      i64 k = v_ + (i64)i;
      TruncSeries term;
      if (k >= 0) {
        term = pos[(size_t)k] * c_[i];
      } else {
        term = constant(tw_, c_[i], prec + 8);
        for (i64 t = 0; t < -k; ++t) term = term * ginv;
      }
      acc = acc + term;
    }
    if (acc.prec_ > prec) acc.prec_ = prec, acc.normalize();
    return acc;
  }

 private:
  void check(const TruncSeries& o) const {
    expect(tw_ == o.tw_, errc::usage, "TruncSeries: tower mismatch");
  }
  void normalize() {
    if (prec_ <= v_) {
      v_ = prec_;
      c_.clear();
      return;
    }
    if ((i64)c_.size() > prec_ - v_) c_.resize((size_t)(prec_ - v_));
    size_t lead = 0;
    while (lead < c_.size() && c_[lead].is_zero()) ++lead;
    if (lead == c_.size()) {
      v_ = prec_;
      c_.clear();
      return;
    }
    if (lead) {
      c_.erase(c_.begin(), c_.begin() + (i64)lead);
      v_ += (i64)lead;
    }
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  void guard_width() const {
    if (!c_.empty())
      expect(prec_ - v_ >= kMinWidth, errc::precision_loss,
             "TruncSeries: result keeps fewer than 4 significant coefficients");
  }

  TowerPtr tw_;
  i64 v_ = 0;
  i64 prec_ = 0;
  std::vector<FieldElement> c_;
};

inline TruncSeries operator*(const FieldElement& s, const TruncSeries& f) { return f * s; }

inline TruncSeries zero_like(const TruncSeries& f) {
  return TruncSeries::zero(f.tower(), f.precision());
}
inline TruncSeries one_like(const TruncSeries& f) {
  return TruncSeries::constant(f.tower(), f.tower()->one(), f.precision());
}

// freshman's power: coefficients to the q^i, exponents times q^i; the unknown
// tail O(x^prec) maps to O(x^{prec q^i})
inline TruncSeries frob_pow(const TruncSeries& f, u64 q, u64 i) {
  expect(f.tower()->q == q, errc::usage, "frob_pow: q does not match tower");
  u64 qi = checked_pow_u64(q, i);
  if (f.is_zero_to_precision())
    return TruncSeries::zero(f.tower(), f.precision() * (i64)qi);
  i64 v = f.valuation();
  std::vector<FieldElement> c;
  for (i64 k = v; k < f.precision(); ++k) c.push_back(frob_pow(f.coeff(k), q, i));
  std::vector<FieldElement> spread((size_t)((f.precision() - v - 1) * (i64)qi + 1),
                                   f.tower()->zero());
  for (size_t j = 0; j < c.size(); ++j) spread[j * qi] = c[j];
  return TruncSeries::from_coeffs(f.tower(), v * (i64)qi, std::move(spread),
                                  f.precision() * (i64)qi);
}

// x -> (a x + b) / (c x + e) with a e - b c != 0
struct MobiusMap {
  FieldElement a, b, c, e;

  MobiusMap(FieldElement a_, FieldElement b_, FieldElement c_, FieldElement e_)
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), e(std::move(e_)) {
    expect(!(a * e - b * c).is_zero(), errc::usage, "MobiusMap: zero determinant");
  }

  // matrix composition: (M1 after M2) corresponds to M1.matrix * M2.matrix
  MobiusMap after(const MobiusMap& o) const {
    return MobiusMap(a * o.a + b * o.c, a * o.b + b * o.e, c * o.a + e * o.c, c * o.b + e * o.e);
  }
  // projective equality
  bool same_map(const MobiusMap& o) const {
    return (a * o.b == b * o.a) && (a * o.c == c * o.a) && (a * o.e == e * o.a) &&
           (b * o.c == c * o.b) && (b * o.e == e * o.b) && (c * o.e == e * o.c);
  }
};

inline TruncSeries mobius_apply(const MobiusMap& M, const TruncSeries& f) {
  TruncSeries num = f * M.a + TruncSeries::constant(f.tower(), M.b, f.precision());
  TruncSeries den = f * M.c + TruncSeries::constant(f.tower(), M.e, f.precision());
  expect(!den.is_zero_to_precision(), errc::non_unit_denominator,
         "mobius_apply: denominator vanishes to working precision");
  return num * den.inv();
}

struct HenselLift {
  TruncSeries value;
  std::vector<i64> residual_trace;  // lower bounds on residual valuation per iteration
};

// beta with beta^n = alpha and beta = 1 mod m^2, for alpha = 1 mod m^2 and
// gcd(n, p) = 1, by Newton iteration from beta = 1
inline HenselLift nth_root_hensel(const TruncSeries& alpha, u64 n, i64 N) {
  const TowerPtr& tw = alpha.tower();
  expect(n >= 1, errc::bad_order, "nth_root_hensel: n >= 1");
  expect(n % tw->p != 0, errc::bad_order, "nth_root_hensel: p divides n");
  TruncSeries one = TruncSeries::constant(tw, tw->one(), N);
  TruncSeries diff = alpha - one;
  expect(diff.is_zero_to_precision() || diff.valuation() >= 2, errc::bad_residue,
         "nth_root_hensel: alpha is not 1 mod m^2");
  if (n == 1) return {alpha, {alpha.precision()}};

  FieldElement n_in_k = tw->from_int(n % tw->p);
  HenselLift lift{one, {}};
  for (int guard = 0; guard < 64; ++guard) {
    TruncSeries res = lift.value.pow(n) - alpha;
    lift.residual_trace.push_back(res.val_lower_bound());
    if (res.is_zero_to_precision()) break;
    // beta <- beta - (beta^n - alpha) / (n beta^{n-1})
    TruncSeries deriv = lift.value.pow(n - 1) * n_in_k;
    lift.value = lift.value - res * deriv.inv();
  }
  TruncSeries res = lift.value.pow(n) - alpha;
  expect(res.is_zero_to_precision(), errc::precision_loss,
         "nth_root_hensel: residual did not vanish to precision");
  return lift;
}

// unique u in m with P*(u) = v, where P* = X + a_1 X^q + ... has unit
// derivative a_0 = 1; iteration u <- u - (P*(u) - v) gains a factor q per step
inline HenselLift solve_linearized_hensel(const LinearizedPoly& Pstar, const TruncSeries& v,
                                          i64 N) {
  const TowerPtr& tw = v.tower();
  expect(Pstar.tower() == tw, errc::usage, "solve_linearized_hensel: tower mismatch");
  expect(Pstar.coeff(0) == tw->one(), errc::usage,
         "solve_linearized_hensel: P* must have a_0 = 1");
  expect(v.is_zero_to_precision() || v.valuation() >= 1, errc::bad_residue,
         "solve_linearized_hensel: v must lie in the maximal ideal");
  HenselLift lift{TruncSeries::zero(tw, N), {}};
  if (v.is_zero_to_precision()) {
    lift.residual_trace.push_back(v.precision());
    return lift;  // u = 0 is the unique solution in m
  }
  TruncSeries u = v;
  for (int guard = 0; guard < 64; ++guard) {
    TruncSeries res = lin::eval(Pstar.coeffs(), u, tw->q) - v;
    lift.residual_trace.push_back(res.val_lower_bound());
    if (res.is_zero_to_precision()) break;
    u = u - res;
  }
  TruncSeries res = lin::eval(Pstar.coeffs(), u, tw->q) - v;
  expect(res.is_zero_to_precision(), errc::precision_loss,
         "solve_linearized_hensel: residual did not vanish to precision");
  lift.value = u;
  return lift;
}

struct CanonicalLift {
  TruncSeries x;
  i64 defining_residual_val;  // valuation lower bound of P*(x^{-1})^n y - 1
};

// P*(x^{-1})^n * y - 1, the defining relation's residual
inline TruncSeries canonical_relation_residual(const TruncSeries& x, const LinearizedPoly& Pstar,
                                               u64 n, const TruncSeries& y) {
  const TowerPtr& tw = x.tower();
  TruncSeries w = lin::eval(Pstar.coeffs(), x.inv(), tw->q);
  TruncSeries lhs = w.pow(n) * y;
  return lhs - TruncSeries::constant(tw, tw->one(), lhs.precision());
}

// Appendix-style chain: given y = yhat * alpha with alpha = 1 mod m^2 and
// canonical data (xhat, yhat) satisfying P*(xhat^{-1})^n = yhat^{-1}, produce
// x with P*(x^{-1})^n = y^{-1} via beta -> z -> v -> u -> x = xhat/(1 - xhat u).
inline CanonicalLift henselian_canonical_x(const TruncSeries& xhat, const TruncSeries& yhat,
                                           const TruncSeries& y, const LinearizedPoly& Pstar,
                                           u64 n, i64 N) {
  const TowerPtr& tw = xhat.tower();
  TruncSeries alpha = y * yhat.inv();
  auto beta = nth_root_hensel(alpha, n, N).value;
  TruncSeries zhat_inv = lin::eval(Pstar.coeffs(), xhat.inv(), tw->q);
  TruncSeries z_inv = zhat_inv * beta.inv();
  TruncSeries v = zhat_inv - z_inv;  // v = zhat^{-1} - z^{-1} lies in m_{k[[z]]}
  auto u = solve_linearized_hensel(Pstar, v, N).value;
  // x = xhat / (1 - xhat u), i.e. x^{-1} = xhat^{-1} - u
  TruncSeries x = (xhat.inv() - u).inv();
  TruncSeries residual = canonical_relation_residual(x, Pstar, n, y);
  return {x, residual.val_lower_bound()};
}

}  // namespace ramal
