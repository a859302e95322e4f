#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "ramal/degeneration.hpp"

using namespace ramal;

namespace {

// random nondegenerate s-parameters: star coefficients of a random rational
// (d-1)-dimensional subspace, so the kernel is rational by construction
std::vector<FieldElement> random_s_params(const TowerPtr& tw, u64 d, std::mt19937_64& rng) {
  while (true) {
    std::vector<FieldElement> basis;
    for (u64 i = 0; i + 1 < d; ++i) basis.push_back(tw->element_at(rng() % tw->qm));
    try {
      auto monic = from_subspace(Subspace(tw, basis));
      std::vector<FieldElement> s;
      for (u64 i = 1; i < d; ++i) s.push_back(monic.coeff(i) / monic.coeff(0));
      if (!s.back().is_zero()) return s;
    } catch (const error&) {
      continue;
    }
  }
}

}  // namespace

TEST_CASE("tower embedding maps arithmetic faithfully") {
  auto small = make_tower(2, 1, 2);
  auto big = make_tower(2, 1, 4);
  TowerEmbedding emb(small, big);
  for (auto& x : small->all_elements())
    for (auto& y : small->all_elements()) {
      REQUIRE(emb(x * y) == emb(x) * emb(y));
      REQUIRE(emb(x + y) == emb(x) + emb(y));
    }
}

TEST_CASE("specialize: composed kernel, type, and Q-invariance for q=2, d=2") {
  auto tw = make_tower(2, 1, 4, 1);  // q = 2, F_16, n = 1
  GroupSpec spec(tw, 2);
  FamilySpec fam = make_family(spec, {tw->one()});
  auto sp = specialize(fam, tw->one());  // t = 1
  REQUIRE(sp.action.spec.d == 2);
  REQUIRE(sp.star_coeffs.size() == 2);
  // the composed subspace has dimension 2 and the action is restrained (n, 2)
  auto filt = ramification_filtration(sp.action);
  REQUIRE(filt == std::vector<u64>{4, 4, 4, 1});
  REQUIRE(verify_action_homomorphism(sp.action));
  auto qrep = verify_Q_invariance(sp.action, sp.star_coeffs, fam.spec.n());
  REQUIRE(qrep.invariant);
}

TEST_CASE("sampled t != 0: restrained of type (n, d), roundtrip, equivariance") {
  std::mt19937_64 rng(3);
  for (auto [p, s, n] : {std::tuple<u64, u64, u64>{2, 1, 1}, {2, 2, 3}}) {
    auto tw = make_tower(p, s, (s == 1) ? 4 : 1, n);
    GroupSpec spec(tw, 2);
    FamilySpec fam = make_family(spec, random_s_params(tw, 2, rng));
    int done = 0;
    while (done < 4) {
      FieldElement t = fam.spec.tw->element_at(rng() % fam.spec.tw->qm);
      if (t.is_zero()) continue;
      auto sp = specialize(fam, t);
      auto filt = ramification_filtration(sp.action);
      u64 G = sp.action.spec.order(), qd = sp.action.spec.qd();
      REQUIRE(filt == std::vector<u64>{G, G, qd, 1});
      auto phi = birational_phi_check(fam, sp);
      REQUIRE(phi.verified_t_exponent == sp.split.field->q - 1);
      REQUIRE(phi.roundtrip_residual_val >= fam.prec / 2);
      auto eq = equivariance_check(fam, sp);
      REQUIRE(eq.holds);
      ++done;
    }
  }
}

TEST_CASE("t and ct with c in F_q^x give isomorphic specializations") {
  std::mt19937_64 rng(5);
  auto tw = make_tower(2, 2, 1, 3);  // q = 4
  GroupSpec spec(tw, 2);
  FamilySpec fam = make_family(spec, {tw->one()});
  FieldElement t = tw->zeta();
  auto sp1 = specialize(fam, t);
  for (u64 c = 1; c < tw->q; ++c) {
    FieldElement cc = tw->mid_element_at(c);
    auto sp2 = specialize(fam, cc * t);
    if (sp1.action.spec.tw == sp2.action.spec.tw)
      REQUIRE(is_isomorphic(sp1.action, sp2.action));
  }
}

TEST_CASE("eta_split invariants") {
  auto tw = make_tower(2, 1, 4, 1);
  GroupSpec spec(tw, 2);
  FamilySpec fam = make_family(spec, {tw->one()});
  auto split = eta_split(fam, tw->element_at(3));
  REQUIRE(split.u_basis.size() == 1);   // dim V' = d - 1
  REQUIRE(split.w_basis.size() == 1);
  // dim V = d: w-basis plus 1 is independent
  std::vector<FieldElement> vb = split.w_basis;
  vb.push_back(split.field->one());
  Subspace V(split.field, vb);
  REQUIRE(V.dim() == 2);
  // eta(1) = 0: V'' lies in the kernel of eta
  auto tq = frobenius(split.field->one(), split.field->s) - split.field->one();
  REQUIRE(tq.is_zero());
  // the library already verified eta's image and bijectivity on V'; check the
  // defining equation of the section explicitly
  auto w = split.w_basis[0];
  REQUIRE(frobenius(w, split.field->s) - w == split.t * split.u_basis[0]);
}

TEST_CASE("omega of the specialization agrees with recomputation from eta data") {
  std::mt19937_64 rng(9);
  auto tw = make_tower(2, 1, 4, 1);
  GroupSpec spec(tw, 2);
  FamilySpec fam = make_family(spec, random_s_params(tw, 2, rng));
  for (int it = 0; it < 6; ++it) {
    FieldElement t = tw->element_at(rng() % tw->qm);
    if (t.is_zero()) continue;
    auto sp = specialize(fam, t);
    // recompute theta from the split: e_i -> -t^{-1} w_i, e_d -> -t^{-1}
    const auto& f = sp.split.field;
    FieldElement mt = -(sp.split.t.inv());
    std::vector<FieldElement> theta;
    for (const auto& w : sp.split.w_basis) theta.push_back(mt * w);
    theta.push_back(mt);
    auto act2 = canonical_action(GroupSpec(f, 2), theta, fam.prec);
    REQUIRE(omega_invariant(act2) == omega_invariant(sp.action));
    // and the composed kernel determines it: any basis of the kernel gives
    // the same omega
    LinearizedPoly composed =
        compose(star(f, sp.split.s_params), star(f, {-(sp.split.t.pow(f->q - 1))}));
    auto act3 = canonical_action(GroupSpec(f, 2), kernel(composed).basis(), fam.prec);
    REQUIRE(omega_invariant(act3) == omega_invariant(sp.action));
  }
}

TEST_CASE("fiber at zero: components, intersections, horizontal type") {
  // q = 2: 1 + q = 3 components, intersections at W/Z in {0, 1}
  {
    auto tw = make_tower(2, 1, 4, 1);
    GroupSpec spec(tw, 2);
    FamilySpec fam = make_family(spec, {tw->one()});
    auto rep = fiber_at_zero(fam);
    REQUIRE(rep.component_count == 3);
    REQUIRE(rep.components.size() == 3);
    REQUIRE(rep.intersection_rho_indices ==
            std::vector<u64>{tw->zero().index(), tw->one().index()});
    REQUIRE(rep.horizontal_n == 1);
    REQUIRE(rep.horizontal_d == 1);
    REQUIRE(rep.normal_crossings);
    // horizontal branch filtration ends [q^{d-1}, 1]
    const auto& filt = rep.components[1].filtration;
    REQUIRE(filt == std::vector<u64>{2, 2, 2, 1});
  }
  // q = 4, n = 3: 5 components, horizontal type (3, 1)
  {
    auto tw = make_tower(2, 2, 1, 3);
    GroupSpec spec(tw, 2);
    FamilySpec fam = make_family(spec, {tw->one()});
    auto rep = fiber_at_zero(fam);
    REQUIRE(rep.component_count == 5);
    REQUIRE(rep.horizontal_n == 3);
    REQUIRE(rep.horizontal_d == 1);
    REQUIRE(rep.components[1].filtration == std::vector<u64>{12, 12, 4, 1});
    REQUIRE(rep.normal_crossings);
  }
}

TEST_CASE("inertia data on the zero fiber") {
  // (n, d, q) = (3, 2, 4)
  auto tw = make_tower(2, 2, 1, 3);
  GroupSpec spec(tw, 2);
  FamilySpec fam = make_family(spec, {tw->one()});
  auto rep = inertia_report(fam);
  REQUIRE(rep.group_order == 48);
  REQUIRE(rep.vertical_setwise_stabilizer_order == 48);   // all of G preserves the line
  REQUIRE(rep.vertical_pointwise_fixing_order == 4);      // H' only
  REQUIRE(rep.vertical_inertia_order == 12);              // H' x| T = G_{3,1}, order n q^{d-1}
  REQUIRE(rep.vertical_inertia_is_gnd1);
  REQUIRE(rep.h2_transitive_on_nodes);
  REQUIRE(rep.infinity_fixed_by_all);
  REQUIRE(rep.infinity_unique_fixed);
  REQUIRE(rep.horizontal_pointwise_fixing_order == 1);
  // s = 2 > 1: the n_x p^{t_x - 1} value of the global statement differs from
  // the chart computation and is reported, not reconciled
  REQUIRE(rep.satz_a_claimed_inertia == 3 * 8);
  REQUIRE(!rep.satz_a_matches_chart);

  // q = 2 (s = 1): the two orders agree
  auto t2 = make_tower(2, 1, 4, 1);
  FamilySpec fam2 = make_family(GroupSpec(t2, 2), {t2->one()});
  auto rep2 = inertia_report(fam2);
  REQUIRE(rep2.vertical_inertia_order == 2);
  REQUIRE(rep2.satz_a_matches_chart);
}
