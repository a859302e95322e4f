#pragma once

// Exact arithmetic in a tower F_p <= F_q <= F_{q^m}, q = p^s.
//
// Elements are coordinate vectors of length s*m over F_p in the fixed basis
// z^j * y^k (j < m, k < s), where y generates F_q over F_p modulo mid_poly and
// z generates F_{q^m} over F_q modulo top_poly.  Both moduli are the
// lexicographically smallest monic irreducible polynomials under coefficient
// order with the constant term first, so towers are bit-reproducible.
//
// The enumeration index of an element is sum c_k p^k over its coordinates,
// with the coordinate of z^0 y^0 least significant; enumeration order is
// index order and starts at 0.

#include <cstdint>
#include <memory>
#include <vector>

#include "ramal/errors.hpp"
#include "ramal/int_util.hpp"

namespace ramal {

using Coord = std::uint32_t;

class FieldTower;
using TowerPtr = std::shared_ptr<const FieldTower>;

class FieldElement;

namespace detail {

// Arithmetic for F_q = F_p[y]/(mid) on raw coefficient vectors of length s.
struct FqCtx {
  u64 p = 0;
  u64 s = 0;
  std::vector<Coord> mid;  // c_0..c_{s-1}, leading 1 implicit

  std::vector<Coord> zero() const { return std::vector<Coord>(s, 0); }
  std::vector<Coord> one() const {
    auto v = zero();
    if (s > 0) v[0] = 1 % p;
    return v;
  }
  bool is_zero(const std::vector<Coord>& a) const {
    for (Coord c : a)
      if (c) return false;
    return true;
  }
  std::vector<Coord> add(const std::vector<Coord>& a, const std::vector<Coord>& b) const {
    std::vector<Coord> r(s);
    for (u64 i = 0; i < s; ++i) r[i] = (Coord)((a[i] + (u64)b[i]) % p);
    return r;
  }
  std::vector<Coord> neg(const std::vector<Coord>& a) const {
    std::vector<Coord> r(s);
    for (u64 i = 0; i < s; ++i) r[i] = (Coord)((p - a[i]) % p);
    return r;
  }
  std::vector<Coord> sub(const std::vector<Coord>& a, const std::vector<Coord>& b) const {
    return add(a, neg(b));
  }
  std::vector<Coord> mul(const std::vector<Coord>& a, const std::vector<Coord>& b) const {
    std::vector<u64> t(2 * s, 0);
    for (u64 i = 0; i < s; ++i) {
      if (!a[i]) continue;
      for (u64 j = 0; j < s; ++j) t[i + j] = (t[i + j] + (u64)a[i] * b[j]) % p;
    }
    // reduce y^s = -mid
    for (u64 k = 2 * s; k-- > s;) {
      u64 c = t[k];
      if (!c) continue;
      t[k] = 0;
      for (u64 j = 0; j < s; ++j) t[k - s + j] = (t[k - s + j] + c * (p - mid[j])) % p;
    }
    std::vector<Coord> r(s);
    for (u64 i = 0; i < s; ++i) r[i] = (Coord)t[i];
    return r;
  }
  u64 index_of(const std::vector<Coord>& a) const {
    u64 idx = 0;
    for (u64 i = s; i-- > 0;) idx = idx * p + a[i];
    return idx;
  }
  std::vector<Coord> at_index(u64 idx) const {
    std::vector<Coord> r(s);
    for (u64 i = 0; i < s; ++i) {
      r[i] = (Coord)(idx % p);
      idx /= p;
    }
    return r;
  }
};

// Lex-first monic irreducible of degree deg over a coefficient context,
// checked by exhaustive trial division over all monic polynomials of degree
// <= deg/2.  Candidate tuples (c_0,..,c_{deg-1}) are scanned in lexicographic
// order with per-coefficient order given by the context's element index.
template <class Ctx, class Elem>
std::vector<Elem> lex_first_irreducible(const Ctx& ctx, u64 field_size, u64 deg) {
  auto poly_divides_exactly = [&](const std::vector<Elem>& divisor_monic,
                                  const std::vector<Elem>& f_monic) {
    // Remainder of f (monic, degree deg) modulo divisor (monic, degree dd) == 0?
    std::vector<Elem> rem = f_monic;  // coefficients c_0..c_{deg-1}, leading 1 implicit
    rem.push_back(ctx.one());
    u64 dd = divisor_monic.size();
    for (u64 k = rem.size(); k-- > dd;) {
      Elem c = rem[k];
      if (ctx.is_zero(c)) continue;
      rem[k] = ctx.zero();
      for (u64 j = 0; j < dd; ++j)
        rem[k - dd + j] = ctx.sub(rem[k - dd + j], ctx.mul(c, divisor_monic[j]));
    }
    for (u64 j = 0; j < dd; ++j)
      if (!ctx.is_zero(rem[j])) return false;
    return true;
  };

  // All monic divisor candidates of degree 1..deg/2, materialized per degree.
  std::vector<std::vector<std::vector<Elem>>> divisors_by_deg(deg / 2 + 1);
  for (u64 dd = 1; dd <= deg / 2; ++dd) {
    u64 count = checked_pow_u64(field_size, dd);
    divisors_by_deg[dd].reserve(count);
    for (u64 idx = 0; idx < count; ++idx) {
      std::vector<Elem> dv(dd);
      u64 t = idx;
      for (u64 j = 0; j < dd; ++j) {
        dv[j] = ctx.at_index(t % field_size);
        t /= field_size;
      }
      divisors_by_deg[dd].push_back(std::move(dv));
    }
  }

  std::vector<u64> digits(deg, 0);  // digits[i] = index of c_i; c_0 most significant
  for (;;) {
    std::vector<Elem> cand(deg);
    for (u64 i = 0; i < deg; ++i) cand[i] = ctx.at_index(digits[i]);
    bool reducible = ctx.is_zero(cand[0]);  // divisible by the variable
    for (u64 dd = 1; !reducible && dd <= deg / 2; ++dd)
      for (const auto& dv : divisors_by_deg[dd])
        if (poly_divides_exactly(dv, cand)) {
          reducible = true;
          break;
        }
    if (!reducible) return cand;
    // next tuple in lex order: last digit varies fastest
    u64 i = deg;
    while (i > 0) {
      --i;
      if (++digits[i] < field_size) break;
      digits[i] = 0;
      expect(i != 0 || digits[0] != 0, errc::inconsistent,
             "lex_first_irreducible: no irreducible polynomial found");
    }
  }
}

}  // namespace detail

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(TowerPtr tw, std::vector<Coord> coords);

  const TowerPtr& tower() const { return tw_; }
  const std::vector<Coord>& coords() const { return c_; }
  bool is_zero() const {
    for (Coord x : c_)
      if (x) return false;
    return true;
  }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  bool operator==(const FieldElement& o) const { return c_ == o.c_; }
  bool operator!=(const FieldElement& o) const { return c_ != o.c_; }
  // total order by enumeration index; used for canonical sorted lists
  bool operator<(const FieldElement& o) const { return index() < o.index(); }

  FieldElement inv() const;
  FieldElement pow(u64 e) const;
  u64 index() const;

  u64 mult_order() const;

 private:
  TowerPtr tw_;
  std::vector<Coord> c_;
};

class FieldTower : public std::enable_shared_from_this<FieldTower> {
 public:
  u64 p = 0, s = 0, m = 0;
  u64 q = 0;     // p^s
  u64 qm = 0;    // q^m
  u64 n = 0;     // attached multiplicative order parameter; 0 = absent
  std::vector<Coord> mid_poly;               // degree-s modulus over F_p (constant first)
  std::vector<std::vector<Coord>> top_poly;  // degree-m modulus over F_q (constant first)

  static TowerPtr make(u64 p, u64 s, u64 m, u64 n = 0);

  FieldElement zero() const { return FieldElement(self(), raw_zero()); }
  FieldElement one() const { return FieldElement(self(), raw_one()); }
  FieldElement zeta() const {
    expect(n != 0, errc::usage, "FieldTower::zeta: no n attached");
    return FieldElement(self(), zeta_);
  }
  // zeta^a with a taken mod n
  FieldElement zeta_pow(i64 a) const {
    expect(n != 0, errc::usage, "FieldTower::zeta_pow: no n attached");
    i64 r = a % (i64)n;
    if (r < 0) r += (i64)n;
    return zeta().pow((u64)r);
  }

  u64 size() const { return qm; }
  FieldElement element_at(u64 idx) const;
  u64 index_of_coords(const std::vector<Coord>& c) const;
  FieldElement from_int(u64 v) const;  // v mod p embedded in the prime field

  // embed an F_q (mid field) coordinate vector of length s
  FieldElement embed_mid(const std::vector<Coord>& mid_coords) const;
  bool in_mid_field(const FieldElement& x) const;

  // idx-th element of the mid field F_q under its own enumeration order
  FieldElement mid_element_at(u64 idx) const;
  // coordinates of x over F_q in the basis z^0..z^{m-1}, as F_q element indices
  std::vector<u64> fq_coords(const FieldElement& x) const;

  std::vector<FieldElement> all_elements() const;

  // raw coordinate arithmetic used by FieldElement
  std::vector<Coord> raw_zero() const { return std::vector<Coord>(s * m, 0); }
  std::vector<Coord> raw_one() const {
    auto v = raw_zero();
    v[0] = 1 % p;
    return v;
  }
  std::vector<Coord> raw_add(const std::vector<Coord>& a, const std::vector<Coord>& b) const;
  std::vector<Coord> raw_neg(const std::vector<Coord>& a) const;
  std::vector<Coord> raw_mul(const std::vector<Coord>& a, const std::vector<Coord>& b) const;

 private:
  TowerPtr self() const { return shared_from_this(); }
  detail::FqCtx fq_;
  std::vector<Coord> zeta_;
  friend class FieldElement;
};

inline FieldElement::FieldElement(TowerPtr tw, std::vector<Coord> coords)
    : tw_(std::move(tw)), c_(std::move(coords)) {
  expect(c_.size() == tw_->s * tw_->m, errc::usage, "FieldElement: bad coordinate length");
  for (Coord& x : c_) x = (Coord)(x % tw_->p);
}

inline std::vector<Coord> FieldTower::raw_add(const std::vector<Coord>& a,
                                              const std::vector<Coord>& b) const {
  std::vector<Coord> r(s * m);
  for (u64 i = 0; i < s * m; ++i) r[i] = (Coord)((a[i] + (u64)b[i]) % p);
  return r;
}

inline std::vector<Coord> FieldTower::raw_neg(const std::vector<Coord>& a) const {
  std::vector<Coord> r(s * m);
  for (u64 i = 0; i < s * m; ++i) r[i] = (Coord)((p - a[i]) % p);
  return r;
}

inline std::vector<Coord> FieldTower::raw_mul(const std::vector<Coord>& a,
                                              const std::vector<Coord>& b) const {
  // polynomials in z of degree < m with F_q coefficients
  auto block = [&](const std::vector<Coord>& v, u64 j) {
    return std::vector<Coord>(v.begin() + j * s, v.begin() + (j + 1) * s);
  };
  std::vector<std::vector<Coord>> t(2 * m, fq_.zero());
  for (u64 i = 0; i < m; ++i) {
    auto ai = block(a, i);
    if (fq_.is_zero(ai)) continue;
    for (u64 j = 0; j < m; ++j) t[i + j] = fq_.add(t[i + j], fq_.mul(ai, block(b, j)));
  }
  for (u64 k = 2 * m; k-- > m;) {
    if (fq_.is_zero(t[k])) continue;
    auto c = t[k];
    t[k] = fq_.zero();
    for (u64 j = 0; j < m; ++j) t[k - m + j] = fq_.sub(t[k - m + j], fq_.mul(c, top_poly[j]));
  }
  std::vector<Coord> r(s * m);
  for (u64 j = 0; j < m; ++j)
    for (u64 k = 0; k < s; ++k) r[j * s + k] = t[j][k];
  return r;
}

inline FieldElement FieldElement::operator+(const FieldElement& o) const {
  expect(tw_ == o.tw_, errc::usage, "FieldElement: tower mismatch");
  return FieldElement(tw_, tw_->raw_add(c_, o.c_));
}
inline FieldElement FieldElement::operator-() const {
  return FieldElement(tw_, tw_->raw_neg(c_));
}
inline FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }
inline FieldElement FieldElement::operator*(const FieldElement& o) const {
  expect(tw_ == o.tw_, errc::usage, "FieldElement: tower mismatch");
  return FieldElement(tw_, tw_->raw_mul(c_, o.c_));
}

inline FieldElement FieldElement::pow(u64 e) const {
  FieldElement r = tw_->one();
  FieldElement b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

inline FieldElement FieldElement::inv() const {
  expect(!is_zero(), errc::division_by_zero, "FieldElement::inv: zero element");
  return pow(tw_->qm - 2);
}

inline FieldElement FieldElement::operator/(const FieldElement& o) const {
  expect(!o.is_zero(), errc::division_by_zero, "FieldElement: division by zero");
  return *this * o.inv();
}

inline u64 FieldElement::index() const { return tw_->index_of_coords(c_); }

inline u64 FieldElement::mult_order() const {
  expect(!is_zero(), errc::usage, "FieldElement::mult_order: zero element");
  FieldElement cur = *this;
  u64 ord = 1;
  FieldElement one = tw_->one();
  while (!(cur == one)) {
    cur = cur * *this;
    ++ord;
    expect(ord <= tw_->qm, errc::inconsistent, "mult_order: ran past group order");
  }
  return ord;
}

// x^{p^e}; e reduced mod s*m since Frobenius has that order on the tower top.
inline FieldElement frobenius(const FieldElement& x, u64 e) {
  const auto& tw = *x.tower();
  e %= tw.s * tw.m;
  FieldElement r = x;
  for (u64 i = 0; i < e; ++i) r = r.pow(tw.p);
  return r;
}

enum class ArithOp { add, mul, sub, div, neg, inv };

inline FieldElement arith(const FieldElement& x, const FieldElement& y, ArithOp op) {
  switch (op) {
    case ArithOp::add: return x + y;
    case ArithOp::mul: return x * y;
    case ArithOp::sub: return x - y;
    case ArithOp::div: return x / y;
    case ArithOp::neg: return -x;
    case ArithOp::inv: return x.inv();
  }
  fail(errc::usage, "arith: bad op");
}

inline TowerPtr FieldTower::make(u64 p, u64 s, u64 m, u64 n) {
  expect(is_prime_u64(p), errc::not_prime, "make_tower: p is not prime");
  expect(s >= 1 && m >= 1, errc::usage, "make_tower: s, m >= 1");
  auto tw = std::make_shared<FieldTower>();
  tw->p = p;
  tw->s = s;
  tw->m = m;
  tw->q = checked_pow_u64(p, s);
  tw->qm = checked_pow_u64(tw->q, m);
  expect(tw->qm <= (1ull << 20), errc::too_large, "make_tower: q^m beyond desk scale (2^20)");
  if (n != 0) {
    expect(gcd_u64(n, p) == 1, errc::usage, "make_tower: gcd(n, p) != 1");
    if (n > 1)
      expect(mult_order_mod(p, n) == s, errc::order_mismatch,
             "make_tower: multiplicative order of p mod n is not s");
    else
      expect(s == 1, errc::order_mismatch, "make_tower: n = 1 requires s = 1");
    expect((tw->q - 1) % n == 0, errc::no_such_root, "make_tower: n does not divide q-1");
  }
  tw->n = n;

  // mid field modulus over F_p
  struct FpCtx {
    u64 p;
    Coord zero() const { return 0; }
    Coord one() const { return (Coord)(1 % p); }
    bool is_zero(Coord a) const { return a == 0; }
    Coord add(Coord a, Coord b) const { return (Coord)(((u64)a + b) % p); }
    Coord sub(Coord a, Coord b) const { return (Coord)(((u64)a + p - b) % p); }
    Coord mul(Coord a, Coord b) const { return (Coord)((u64)a * b % p); }
    Coord at_index(u64 i) const { return (Coord)i; }
  } fpctx{p};
  tw->mid_poly = detail::lex_first_irreducible<FpCtx, Coord>(fpctx, p, s);

  tw->fq_.p = p;
  tw->fq_.s = s;
  tw->fq_.mid = tw->mid_poly;

  // top modulus over F_q
  {
    auto cand = detail::lex_first_irreducible<detail::FqCtx, std::vector<Coord>>(tw->fq_, tw->q, m);
    tw->top_poly = std::move(cand);
  }

  if (n != 0) {
    // smallest-index mid field element of multiplicative order exactly n
    bool found = false;
    for (u64 idx = 1; idx < tw->q && !found; ++idx) {
      auto cand = tw->fq_.at_index(idx);
      // order of cand in F_q^*
      auto cur = cand;
      u64 ord = 1;
      auto onev = tw->fq_.one();
      while (!(cur == onev)) {
        cur = tw->fq_.mul(cur, cand);
        ++ord;
      }
      if (ord == n) {
        tw->zeta_ = tw->raw_zero();
        for (u64 k = 0; k < s; ++k) tw->zeta_[k] = cand[k];
        found = true;
      }
    }
    expect(found, errc::no_such_root, "make_tower: no element of order n in F_q");
  }
  return tw;
}

inline FieldElement FieldTower::element_at(u64 idx) const {
  expect(idx < qm, errc::usage, "element_at: index out of range");
  std::vector<Coord> c(s * m);
  for (u64 i = 0; i < s * m; ++i) {
    c[i] = (Coord)(idx % p);
    idx /= p;
  }
  return FieldElement(self(), std::move(c));
}

inline u64 FieldTower::index_of_coords(const std::vector<Coord>& c) const {
  u64 idx = 0;
  for (u64 i = s * m; i-- > 0;) idx = idx * p + c[i];
  return idx;
}

inline FieldElement FieldTower::from_int(u64 v) const {
  auto c = raw_zero();
  c[0] = (Coord)(v % p);
  return FieldElement(self(), std::move(c));
}

inline FieldElement FieldTower::embed_mid(const std::vector<Coord>& mid_coords) const {
  expect(mid_coords.size() == s, errc::usage, "embed_mid: need s coordinates");
  auto c = raw_zero();
  for (u64 k = 0; k < s; ++k) c[k] = (Coord)(mid_coords[k] % p);
  return FieldElement(self(), std::move(c));
}

inline bool FieldTower::in_mid_field(const FieldElement& x) const {
  return frobenius(x, s) == x;
}

inline FieldElement FieldTower::mid_element_at(u64 idx) const {
  expect(idx < q, errc::usage, "mid_element_at: index out of range");
  return embed_mid(fq_.at_index(idx));
}

inline std::vector<u64> FieldTower::fq_coords(const FieldElement& x) const {
  std::vector<u64> r(m);
  for (u64 j = 0; j < m; ++j) {
    std::vector<Coord> block(x.coords().begin() + j * s, x.coords().begin() + (j + 1) * s);
    r[j] = fq_.index_of(block);
  }
  return r;
}

inline std::vector<FieldElement> FieldTower::all_elements() const {
  std::vector<FieldElement> r;
  r.reserve(qm);
  for (u64 i = 0; i < qm; ++i) r.push_back(element_at(i));
  return r;
}

inline TowerPtr make_tower(u64 p, u64 s, u64 m, u64 n = 0) { return FieldTower::make(p, s, m, n); }

}  // namespace ramal
