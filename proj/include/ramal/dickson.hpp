#pragma once

// Modular invariant theory of GL(d, F_q) acting on F_q[U_1..U_d]:
// Dickson invariants T_0..T_{d-1}, the GL substitution action, parabolic
// invariants along the standard flag, and the S/T ring-extension relations.

#include <string>
#include <vector>

#include "ramal/errors.hpp"
#include "ramal/linpoly.hpp"
#include "ramal/multipoly.hpp"

namespace ramal {

inline VarsPtr u_vars(u64 d) {
  std::vector<std::string> v;
  for (u64 i = 1; i <= d; ++i) v.push_back("U" + std::to_string(i));
  return make_vars(std::move(v));
}

// Invertible d x d matrix over F_q (entries in the tower mid field), acting
// on the right: U_j . A = sum_i a_{ji} U_i.
class GLMatrix {
 public:
  GLMatrix(TowerPtr tw, std::vector<std::vector<FieldElement>> rows)
      : tw_(std::move(tw)), a_(std::move(rows)) {
    u64 d = a_.size();
    for (const auto& r : a_) expect(r.size() == d, errc::usage, "GLMatrix: not square");
    expect(invertible(), errc::usage, "GLMatrix: singular matrix");
  }

  u64 dim() const { return a_.size(); }
  const FieldElement& at(u64 row, u64 col) const { return a_[row][col]; }
  const TowerPtr& tower() const { return tw_; }

 private:
  bool invertible() const {
    auto m = a_;
    u64 d = m.size();
    for (u64 col = 0; col < d; ++col) {
      u64 piv = col;
      while (piv < d && m[piv][col].is_zero()) ++piv;
      if (piv == d) return false;
      std::swap(m[piv], m[col]);
      FieldElement inv = m[col][col].inv();
      for (u64 j = 0; j < d; ++j) m[col][j] = m[col][j] * inv;
      for (u64 r = 0; r < d; ++r) {
        if (r == col || m[r][col].is_zero()) continue;
        FieldElement f = m[r][col];
        for (u64 j = 0; j < d; ++j) m[r][j] = m[r][j] - f * m[col][j];
      }
    }
    return true;
  }

  TowerPtr tw_;
  std::vector<std::vector<FieldElement>> a_;
};

// substitution U_j -> sum_i a_{ji} U_i
inline MultiPoly gl_action(const MultiPoly& poly, const GLMatrix& A) {
  u64 d = A.dim();
  expect(poly.vars()->size() == d, errc::usage, "gl_action: dimension mismatch");
  std::vector<MultiPoly> images;
  images.reserve(d);
  for (u64 j = 0; j < d; ++j) {
    MultiPoly img(poly.tower(), poly.vars());
    for (u64 i = 0; i < d; ++i)
      img = img + MultiPoly::variable(poly.tower(), poly.vars(), (*poly.vars())[i]) * A.at(j, i);
    images.push_back(std::move(img));
  }
  return poly.subst(images);
}

inline RationalMP gl_action(const RationalMP& f, const GLMatrix& A) {
  return RationalMP(gl_action(f.num(), A), gl_action(f.den(), A));
}

// every matrix of GL(d, F_q); guarded scan over all q^{d^2} candidates
inline std::vector<GLMatrix> enumerate_gl(const TowerPtr& tw, u64 d) {
  u64 total = checked_pow_u64(tw->q, d * d);
  expect(total <= 300000, errc::too_large, "enumerate_gl: q^{d^2} too large");
  std::vector<GLMatrix> out;
  for (u64 code = 0; code < total; ++code) {
    u64 t = code;
    std::vector<std::vector<FieldElement>> rows(d);
    for (u64 r = 0; r < d; ++r)
      for (u64 c = 0; c < d; ++c) {
        rows[r].push_back(tw->mid_element_at(t % tw->q));
        t /= tw->q;
      }
    try {
      out.emplace_back(tw, std::move(rows));
    } catch (const error&) {
      // singular candidates are skipped
    }
  }
  return out;
}

namespace detail {

// univariate in X with MultiPoly coefficients, dense by X-degree
using XPoly = std::vector<MultiPoly>;

inline XPoly xpoly_mul(const XPoly& a, const XPoly& b, const MultiPoly& zero) {
  XPoly r(a.size() + b.size() - 1, zero);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  return r;
}

// the literal product prod_{v in span(U_1..U_d)} (X - v) as a dense X-polynomial
inline XPoly subspace_product(const TowerPtr& tw, u64 d) {
  u64 qd = checked_pow_u64(tw->q, d);
  expect(qd <= 64, errc::too_large, "subspace_product: q^d beyond expansion bound 64");
  auto vars = u_vars(d);
  MultiPoly zero(tw, vars);
  MultiPoly one = MultiPoly::constant(tw, vars, tw->one());
  XPoly prod{one};
  std::vector<u64> coeffs(d, 0);
  for (u64 k = 0; k < qd; ++k) {
    MultiPoly v(tw, vars);
    for (u64 i = 0; i < d; ++i)
      if (coeffs[i])
        v = v + MultiPoly::variable(tw, vars, (*vars)[i]) * tw->mid_element_at(coeffs[i]);
    prod = xpoly_mul(prod, XPoly{-v, one}, zero);
    u64 i = 0;
    while (i < d && coeffs[i] + 1 == tw->q) coeffs[i++] = 0;
    if (i < d) ++coeffs[i];
  }
  return prod;
}

}  // namespace detail

// T_0..T_{d-1} in F_q[U_1..U_d], defined by
// prod_{v in span(U_i)} (X - v) = X^{q^d} + T_{d-1} X^{q^{d-1}} + ... + T_0 X.
inline std::vector<MultiPoly> dickson_invariants(const TowerPtr& tw, u64 d) {
  auto prod = detail::subspace_product(tw, d);
  u64 qd = checked_pow_u64(tw->q, d);
  std::vector<MultiPoly> T;
  std::vector<bool> claimed(prod.size(), false);
  u64 qi = 1;
  for (u64 i = 0; i < d; ++i) {
    T.push_back(prod[qi]);
    claimed[qi] = true;
    qi *= tw->q;
  }
  claimed[qd] = true;
  expect(prod[qd] == one_like(prod[0]), errc::verification_failed,
         "dickson_invariants: product is not monic");
  for (size_t k = 0; k < prod.size(); ++k)
    if (!claimed[k])
      expect(prod[k].is_zero(), errc::verification_failed,
             "dickson_invariants: non-additive exponent survived expansion");
  return T;
}

// (prod_{i=1}^{d} (q^i-1)/(q-1),  q^{d(d-1)/2} (q-1)^d)
inline std::pair<u64, u64> extension_degrees(u64 q, u64 d) {
  u64 flag = 1;
  for (u64 i = 1; i <= d; ++i) flag *= (checked_pow_u64(q, i) - 1) / (q - 1);
  u64 top = checked_pow_u64(q, d * (d - 1) / 2) * checked_pow_u64(q - 1, d);
  return {flag, top};
}

// Parabolic invariants for a partition (f_1..f_e) of d: the coefficients
// S^j_i of the normalized flag factorization
//   P*(S^e) o ... o P*(S^1) = X prod_{v != 0} (1 - v^{-1} X)
// along the standard flag span(U_1..U_{d_j}).  Each S^j_i is returned as a
// rational expression in the U's.
struct ParabolicInvariants {
  std::vector<std::vector<RationalMP>> blocks;  // blocks[j][i-1] = S^{j+1}_i
  std::vector<u64> partition;
};

inline ParabolicInvariants parabolic_invariants(const TowerPtr& tw, const std::vector<u64>& partition) {
  u64 d = 0;
  for (u64 f : partition) {
    expect(f >= 1, errc::usage, "parabolic_invariants: partition entries must be positive");
    d += f;
  }
  expect(checked_pow_u64(tw->q, d) <= 64, errc::too_large,
         "parabolic_invariants: q^d beyond expansion bound 64");
  auto vars = u_vars(d);
  const u64 q = tw->q;

  auto uvar = [&](u64 i) { return MultiPoly::variable(tw, vars, (*vars)[i]); };

  // monic annihilators P_{(k)} of span(U_1..U_k), iterated composition
  std::vector<std::vector<MultiPoly>> monic(d + 1);
  monic[0] = {MultiPoly::constant(tw, vars, tw->one())};
  for (u64 k = 0; k < d; ++k) {
    MultiPoly c = lin::eval(monic[k], uvar(k), q);
    std::vector<MultiPoly> step{-c.pow(q - 1), MultiPoly::constant(tw, vars, tw->one())};
    monic[k + 1] = lin::compose(step, monic[k], q);
  }

  // monic block factors M_j: annihilator of P_{(d_{j-1})}(span of block j vars)
  ParabolicInvariants out;
  out.partition = partition;
  std::vector<std::vector<MultiPoly>> factors;
  u64 dprev = 0;
  for (u64 f : partition) {
    std::vector<MultiPoly> M{MultiPoly::constant(tw, vars, tw->one())};
    for (u64 t = 0; t < f; ++t) {
      MultiPoly img = lin::eval(monic[dprev], uvar(dprev + t), q);
      MultiPoly c = lin::eval(M, img, q);
      std::vector<MultiPoly> step{-c.pow(q - 1), MultiPoly::constant(tw, vars, tw->one())};
      M = lin::compose(step, M, q);
    }
    factors.push_back(std::move(M));
    dprev += f;
  }

  // normalize each factor to the star form (a_0 = 1) by scalar conjugation:
  // Q_j = (mu_j X) o M_j o (mu_{j-1}^{-1} X) with mu_j = 1/(c_1...c_j),
  // c_j = a_0(M_j); then S^j_i = a_i(M_j) * (c_1..c_{j-1})^{q^i} / (c_1..c_j).
  MultiPoly cprod_prev = MultiPoly::constant(tw, vars, tw->one());
  for (const auto& M : factors) {
    const MultiPoly& cj = M[0];
    MultiPoly cprod = cprod_prev * cj;
    std::vector<RationalMP> block;
    for (u64 i = 1; i < M.size(); ++i)
      block.emplace_back(M[i] * frob_pow(cprod_prev, tw->q, i), cprod);
    out.blocks.push_back(std::move(block));
    cprod_prev = cprod;
  }
  return out;
}

// star polynomial with rational coefficients from a parabolic block
inline std::vector<RationalMP> parabolic_block_star(const TowerPtr& tw, const std::vector<RationalMP>& block) {
  std::vector<RationalMP> c;
  expect(!block.empty(), errc::usage, "parabolic_block_star: empty block");
  c.push_back(one_like(block[0]));
  for (const auto& s : block) c.push_back(s);
  return c;
}

// normalized subspace product X prod_{v != 0} (1 - v^{-1} X) as a star
// linearized polynomial with rational coefficients: a_i(P_{(d)}) / a_0(P_{(d)})
inline std::vector<RationalMP> normalized_full_product(const TowerPtr& tw, u64 d) {
  auto vars = u_vars(d);
  const u64 q = tw->q;
  std::vector<MultiPoly> monic{MultiPoly::constant(tw, vars, tw->one())};
  for (u64 k = 0; k < d; ++k) {
    MultiPoly c = lin::eval(monic, MultiPoly::variable(tw, vars, (*vars)[k]), q);
    std::vector<MultiPoly> step{-c.pow(q - 1), MultiPoly::constant(tw, vars, tw->one())};
    monic = lin::compose(step, monic, q);
  }
  std::vector<RationalMP> out;
  for (const auto& a : monic) out.emplace_back(a, monic[0]);
  return out;
}

// Minimal polynomial of S over F_q[T_1..T_d]:
//   S^{(q^d-1)/(q-1)} + sum_{i=0}^{d-1} (-1)^{d-i} T_{d-i}^{q^i} S^{(q^i-1)/(q-1)},
// verified symbolically against the coefficient identities of
// P*(S) o P*(T'_1..T'_{d-1}) = P*(T_1,...,T_d).
inline MultiPoly minimal_polynomial_S(const TowerPtr& tw, u64 d) {
  expect(d >= 2, errc::usage, "minimal_polynomial_S: d >= 2");
  const u64 q = tw->q;
  std::vector<std::string> names{"S"};
  for (u64 i = 1; i <= d; ++i) names.push_back("T" + std::to_string(i));
  auto vars = make_vars(names);
  auto S = MultiPoly::variable(tw, vars, "S");
  auto T = [&](u64 i) { return MultiPoly::variable(tw, vars, "T" + std::to_string(i)); };
  FieldElement neg_one = -(tw->one());

  MultiPoly M = S.pow((checked_pow_u64(q, d) - 1) / (q - 1));
  for (u64 i = 0; i < d; ++i) {
    FieldElement sign = neg_one.pow(d - i);
    MultiPoly term = frob_pow(T(d - i), q, i) * S.pow((checked_pow_u64(q, i) - 1) / (q - 1)) * sign;
    M = M + term;
  }

  // verification universe: S and T'_1..T'_{d-1}
  std::vector<std::string> vnames{"S"};
  for (u64 i = 1; i <= d - 1; ++i) vnames.push_back("Tp" + std::to_string(i));
  auto vvars = make_vars(vnames);
  auto Sv = MultiPoly::variable(tw, vvars, "S");
  auto Tp = [&](u64 i) { return MultiPoly::variable(tw, vvars, "Tp" + std::to_string(i)); };

  // images of S, T_1..T_d under the composition relation
  std::vector<MultiPoly> images{Sv};
  for (u64 i = 1; i <= d; ++i) {
    MultiPoly img(tw, vvars);
    if (i == 1) {
      img = Sv + Tp(1);
    } else if (i < d) {
      img = Sv * frob_pow(Tp(i - 1), q, 1) + Tp(i);
    } else {
      img = Sv * frob_pow(Tp(d - 1), q, 1);
    }
    images.push_back(std::move(img));
  }
  MultiPoly residue = M.subst(images);
  expect(residue.is_zero(), errc::verification_failed,
         "minimal_polynomial_S: substitution of the composition relation did not vanish");
  return M;
}

// Generators of the standard parabolic subgroup stabilizing the flag
// span(U_1..U_{d_1}) < span(U_1..U_{d_2}) < ...: transvections U_j -> U_j + U_i
// for block(i) <= block(j), plus the diagonal torus.
inline std::vector<GLMatrix> parabolic_generators(const TowerPtr& tw, const std::vector<u64>& partition) {
  u64 d = 0;
  std::vector<u64> block_of;
  for (u64 b = 0; b < partition.size(); ++b)
    for (u64 k = 0; k < partition[b]; ++k) {
      block_of.push_back(b);
      ++d;
    }
  auto identity_rows = [&] {
    std::vector<std::vector<FieldElement>> rows(d, std::vector<FieldElement>(d, tw->zero()));
    for (u64 i = 0; i < d; ++i) rows[i][i] = tw->one();
    return rows;
  };
  std::vector<GLMatrix> gens;
  for (u64 j = 0; j < d; ++j)
    for (u64 i = 0; i < d; ++i) {
      if (i == j || block_of[i] > block_of[j]) continue;
      auto rows = identity_rows();
      rows[j][i] = tw->one();
      gens.emplace_back(tw, std::move(rows));
    }
  if (tw->q > 2) {
    // smallest-index generator of F_q^*
    FieldElement lambda = tw->one();
    for (u64 idx = 1; idx < tw->q; ++idx)
      if (tw->mid_element_at(idx).mult_order() == tw->q - 1) {
        lambda = tw->mid_element_at(idx);
        break;
      }
    for (u64 k = 0; k < d; ++k) {
      auto rows = identity_rows();
      rows[k][k] = lambda;
      gens.emplace_back(tw, std::move(rows));
    }
  }
  return gens;
}

// homogeneity of each polynomial under the given variable weights; when
// `expected` is supplied the common weight must match it
inline bool check_grading(const std::vector<MultiPoly>& polys, const std::vector<i64>& weights,
                          const std::vector<i64>* expected = nullptr) {
  for (size_t k = 0; k < polys.size(); ++k) {
    i64 w = 0;
    if (!polys[k].is_homogeneous(weights, &w)) return false;
    if (expected && !polys[k].is_zero() && w != (*expected)[k]) return false;
  }
  return true;
}

}  // namespace ramal
