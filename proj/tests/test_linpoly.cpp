#include <catch2/catch_amalgamated.hpp>

#include "ramal/linpoly.hpp"

using namespace ramal;

namespace {

// Test oracle: ordinary dense univariate polynomials over the tower top
// field, used to expand the literal product prod_{v in V} (X - v).
struct DensePoly {
  TowerPtr tw;
  std::vector<FieldElement> c;  // c[k] * X^k

  static DensePoly one(const TowerPtr& tw) { return {tw, {tw->one()}}; }
  static DensePoly x_minus(const TowerPtr& tw, const FieldElement& v) { return {tw, {-v, tw->one()}}; }

  DensePoly operator*(const DensePoly& o) const {
    DensePoly r{tw, std::vector<FieldElement>(c.size() + o.c.size() - 1, tw->zero())};
    for (size_t i = 0; i < c.size(); ++i)
      for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] = r.c[i + j] + c[i] * o.c[j];
    return r;
  }
};

DensePoly product_oracle(const Subspace& V) {
  DensePoly r = DensePoly::one(V.tower());
  for (const auto& v : V.elements()) r = r * DensePoly::x_minus(V.tower(), v);
  return r;
}

bool matches_oracle(const LinearizedPoly& P, const Subspace& V) {
  DensePoly prod = product_oracle(V);
  const TowerPtr& tw = V.tower();
  for (size_t k = 0; k < prod.c.size(); ++k) {
    // exponent k must be a power of q to carry a nonzero coefficient
    u64 qpow = 1, i = 0;
    while (qpow < k) qpow *= tw->q, ++i;
    FieldElement expected = (qpow == k && k > 0) ? P.coeff(i) : tw->zero();
    if (!(prod.c[k] == expected)) return false;
  }
  return true;
}

template <class F>
errc thrown_kind(F&& fn) {
  try {
    fn();
  } catch (const error& e) {
    return e.kind();
  }
  FAIL("expected ramal::error");
  return errc::usage;
}

}  // namespace

TEST_CASE("eval: X^q - X kills F_q, eval at zero is zero") {
  auto tw = make_tower(2, 2, 2, 3);  // q = 4, top F_16
  auto fq_line = Subspace(tw, {tw->one()});
  auto P = from_subspace(fq_line);  // X^4 - X
  for (u64 i = 0; i < tw->q; ++i) REQUIRE(P.eval(tw->mid_element_at(i)).is_zero());
  REQUIRE(P.eval(tw->zero()).is_zero());
  REQUIRE(P.coeffs().size() == 2);
}

TEST_CASE("eval example over F_4 with q = 2: (X^2+X)(zeta) = 1") {
  auto tw = make_tower(2, 1, 2);  // q = 2, top F_4
  // zeta := an element of multiplicative order 3 in the top field
  FieldElement zeta = tw->zero();
  for (auto& x : tw->all_elements())
    if (!x.is_zero() && x.mult_order() == 3) {
      zeta = x;
      break;
    }
  LinearizedPoly P(tw, {tw->one(), tw->one()});  // X^2 + X
  REQUIRE(P.eval(zeta) == tw->one());
}

TEST_CASE("compose: identity, heights add, numeric d=2 coefficient pattern") {
  auto tw = make_tower(2, 1, 4);  // q = 2, F_16
  LinearizedPoly P(tw, {tw->one(), tw->element_at(5), tw->element_at(9)});
  REQUIRE(compose(P, lin_identity(tw)) == P);
  REQUIRE(compose(lin_identity(tw), P) == P);

  LinearizedPoly A(tw, {tw->one(), tw->element_at(3), tw->element_at(7)});   // height 2
  LinearizedPoly B(tw, {tw->one(), tw->element_at(2), tw->element_at(4), tw->element_at(6)});
  REQUIRE(compose(A, B).height() == 5);
  for (auto& x : tw->all_elements()) REQUIRE(compose(A, B).eval(x) == A.eval(B.eval(x)));

  // P*(s) o P*(t) = P*(s + t, s t^q)
  auto sv = tw->element_at(11);
  auto tv = tw->element_at(6);
  auto lhs = compose(star(tw, {sv}), star(tw, {tv}));
  REQUIRE(lhs.coeff(0) == tw->one());
  REQUIRE(lhs.coeff(1) == sv + tv);
  REQUIRE(lhs.coeff(2) == sv * tv.pow(tw->q));
}

TEST_CASE("from_subspace small cases") {
  auto tw = make_tower(2, 1, 4);
  auto P = from_subspace(Subspace(tw, {tw->one()}));  // V = {0,1}, q=2
  REQUIRE(P.coeffs() == std::vector<FieldElement>{tw->one(), tw->one()});  // X^2 + X

  auto t3 = make_tower(3, 1, 2);
  auto P3 = from_subspace(Subspace(t3, {t3->one()}));  // V = F_3
  REQUIRE(P3.coeff(1) == t3->one());
  REQUIRE(P3.coeff(0) == -(t3->one()));  // X^3 - X
}

TEST_CASE("star shapes") {
  auto tw = make_tower(2, 1, 3);
  REQUIRE(star(tw, {}) == lin_identity(tw));
  auto a1 = tw->element_at(5);
  auto P = star(tw, {a1});
  REQUIRE(P.coeff(0) == tw->one());
  REQUIRE(P.coeff(1) == a1);
  REQUIRE(P.nondegenerate());
}

TEST_CASE("kernel: X^q - X recovers F_q; roots escaping the field raise") {
  auto tw = make_tower(2, 2, 2, 3);
  auto P = from_subspace(Subspace(tw, {tw->one()}));
  auto K = kernel(P);
  REQUIRE(K.dim() == 1);
  for (const auto& e : K.elements()) REQUIRE(tw->in_mid_field(e));

  // X^4 + X^2 + zeta X over F_4 (q = 2) has only 2 rational roots
  auto f4 = make_tower(2, 1, 2);
  FieldElement zeta = f4->zero();
  for (auto& x : f4->all_elements())
    if (!x.is_zero() && x.mult_order() == 3) {
      zeta = x;
      break;
    }
  LinearizedPoly bad(f4, {zeta, f4->one(), f4->one()});
  REQUIRE(thrown_kind([&] { kernel(bad); }) == errc::roots_not_rational);
}

TEST_CASE("bijection roundtrip is exhaustive over F_2^m, m <= 4, and F_3^m, m <= 3") {
  for (auto [p, m] : {std::pair<u64, u64>{2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}}) {
    auto tw = make_tower(p, 1, m);
    for (u64 d = 0; d <= m; ++d) {
      for (const auto& basis : all_subspace_bases(tw, d)) {
        Subspace V(tw, basis);
        auto P = from_subspace(V);
        REQUIRE(matches_oracle(P, V));
        auto K = kernel(P);
        REQUIRE(K == V);
        // eval(from_subspace(V), x) = 0 iff x in V
        for (auto& x : tw->all_elements()) REQUIRE(P.eval(x).is_zero() == V.contains(x));
      }
    }
  }
}

TEST_CASE("all 35 planes of F_16 roundtrip") {
  auto tw = make_tower(2, 1, 4);
  auto bases = all_subspace_bases(tw, 2);
  REQUIRE(bases.size() == 35);
  for (const auto& b : bases) {
    Subspace V(tw, b);
    REQUIRE(kernel(from_subspace(V)) == V);
  }
}

TEST_CASE("symbolic 4-factor expansion oracle for span{u1,u2}, q=2") {
  // over F_16 pick two independent elements and compare with the literal
  // product X^4 + (u1^2+u1u2+u2^2) X^2 + (u1^2 u2 + u1 u2^2) X
  auto tw = make_tower(2, 1, 4);
  auto u1 = tw->element_at(2);
  auto u2 = tw->element_at(4);
  Subspace V(tw, {u1, u2});
  auto P = from_subspace(V);
  REQUIRE(P.coeff(2) == tw->one());
  REQUIRE(P.coeff(1) == u1 * u1 + u1 * u2 + u2 * u2);
  REQUIRE(P.coeff(0) == u1 * u1 * u2 + u1 * u2 * u2);
}

TEST_CASE("decompose_flag") {
  auto tw = make_tower(2, 1, 4);
  auto bases = all_subspace_bases(tw, 2);
  Subspace V(tw, bases[0]);

  // V_small = V_big: cofactor is the identity X
  auto [p1, p2] = decompose_flag(V, V);
  REQUIRE(p2 == lin_identity(tw));
  REQUIRE(compose(p2, p1) == from_subspace(V));

  // V_small = {0}
  Subspace zero(tw, {});
  auto [q1, q2] = decompose_flag(zero, V);
  REQUIRE(q1 == lin_identity(tw));
  REQUIRE(q2 == from_subspace(V));

  // not a subspace
  Subspace other(tw, {tw->element_at(8), tw->element_at(3)});
  bool contained = true;
  for (const auto& e : other.elements()) contained = contained && V.contains(e);
  if (!contained)
    REQUIRE(thrown_kind([&] { decompose_flag(other, V); }) == errc::not_a_subspace);

  // every chain V' <= V inside F_16: compose(decompose_flag(V', V)) = from_subspace(V)
  for (u64 dbig = 1; dbig <= 3; ++dbig)
    for (const auto& bb : all_subspace_bases(tw, dbig)) {
      Subspace big(tw, bb);
      for (u64 dsm = 0; dsm <= dbig; ++dsm)
        for (const auto& sb : all_subspace_bases(tw, dsm)) {
          Subspace sm(tw, sb);
          if (!big.contains_all(sm)) continue;
          auto [f1, f2] = decompose_flag(sm, big);
          REQUIRE(f1 == from_subspace(sm));
          REQUIRE(f2.height() == dbig - dsm);
          REQUIRE(compose(f2, f1) == from_subspace(big));
        }
    }
}

TEST_CASE("compose is associative") {
  auto tw = make_tower(2, 1, 4);
  LinearizedPoly A(tw, {tw->one(), tw->element_at(3)});
  LinearizedPoly B(tw, {tw->one(), tw->element_at(7), tw->element_at(2)});
  LinearizedPoly C(tw, {tw->one(), tw->element_at(12)});
  REQUIRE(compose(compose(A, B), C) == compose(A, compose(B, C)));
}

TEST_CASE("subspace enumeration counts match Gaussian binomials") {
  auto tw = make_tower(2, 1, 4);
  REQUIRE(all_subspace_bases(tw, 0).size() == 1);
  REQUIRE(all_subspace_bases(tw, 1).size() == 15);
  REQUIRE(all_subspace_bases(tw, 2).size() == 35);
  REQUIRE(all_subspace_bases(tw, 3).size() == 15);
  REQUIRE(all_subspace_bases(tw, 4).size() == 1);
  auto t3 = make_tower(3, 1, 3);
  REQUIRE(all_subspace_bases(t3, 1).size() == 13);
  REQUIRE(all_subspace_bases(t3, 2).size() == 13);
}
