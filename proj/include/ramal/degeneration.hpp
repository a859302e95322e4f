#pragma once

// The one-parameter family of restrained extensions
//   P*(s_1..s_{d-1})(t^{q-1} x^{-q} - x^{-1})^n = y^{-1}
// over t != 0, its specialization to canonical actions, the birational chart
// with coordinates (xt, rho = W/Z), the eta-splitting of the degenerating
// subspace, chart equivariance, and the t = 0 fiber with its stabilizer data.
//
// Chart conventions, fixed here once:
//  - xi is the family coordinate (the x of the display above);
//  - xt is the horizontal coordinate with xt^{-1} = t^{q-1} xi^{-q} - xi^{-1}
//    (the t-exponent is confirmed by the roundtrip check, which also tries q);
//  - rho = t / xi, so gamma: rho -> zeta^{-1} rho and sigma: rho -> rho +
//    ttheta(sigma) with ttheta = -t * theta of the specialized action.

#include <set>
#include <string>
#include <vector>

#include "ramal/errors.hpp"
#include "ramal/restrained.hpp"

namespace ramal {

// deterministic embedding of a subtower: sends the top generator to the
// smallest-index root of the source top polynomial in the target tower
class TowerEmbedding {
 public:
  TowerEmbedding(TowerPtr from, TowerPtr to) : from_(std::move(from)), to_(std::move(to)) {
    expect(from_->p == to_->p && from_->s == to_->s, errc::usage,
           "TowerEmbedding: mid fields differ");
    expect(to_->m % from_->m == 0, errc::usage, "TowerEmbedding: target degree incompatible");
    bool found = false;
    for (u64 i = 0; i < to_->qm && !found; ++i) {
      FieldElement cand = to_->element_at(i);
      // evaluate z^m + sum top[j] z^j at cand
      FieldElement val = cand.pow(from_->m);
      for (u64 j = 0; j < from_->m; ++j)
        val = val + to_->embed_mid(from_->top_poly[j]) * cand.pow(j);
      if (val.is_zero()) {
        root_ = cand;
        found = true;
      }
    }
    expect(found, errc::inconsistent, "TowerEmbedding: no root of the source modulus");
  }

  FieldElement operator()(const FieldElement& x) const {
    expect(x.tower() == from_, errc::usage, "TowerEmbedding: element from wrong tower");
    FieldElement acc = to_->zero();
    auto coords = from_->fq_coords(x);
    for (u64 j = 0; j < from_->m; ++j)
      acc = acc + to_->mid_element_at(coords[j]) * root_.pow(j);
    return acc;
  }

 private:
  TowerPtr from_, to_;
  FieldElement root_;
};

struct FamilySpec {
  GroupSpec spec;                      // d >= 2, tower with n attached
  std::vector<FieldElement> s_params;  // s_1..s_{d-1}, s_{d-1} != 0
  i64 prec = 0;
};

inline FamilySpec make_family(GroupSpec spec, std::vector<FieldElement> s_params, i64 prec = 0) {
  expect(spec.d >= 2, errc::usage, "make_family: d >= 2");
  expect(s_params.size() == spec.d - 1, errc::usage, "make_family: need s_1..s_{d-1}");
  expect(!s_params.back().is_zero(), errc::degenerate, "make_family: s_{d-1} = 0");
  // the inner star polynomial must have a rational kernel; widen m if needed
  for (int rounds = 0; rounds < 6; ++rounds) {
    try {
      kernel(star(spec.tw, s_params));
      FamilySpec fam{spec, s_params, prec ? prec : default_action_precision(spec)};
      return fam;
    } catch (const error& e) {
      if (e.kind() != errc::roots_not_rational) throw;
      auto wider = make_tower(spec.tw->p, spec.tw->s, 2 * spec.tw->m, spec.tw->n);
      TowerEmbedding emb(spec.tw, wider);
      for (auto& x : s_params) x = emb(x);
      spec = GroupSpec(wider, spec.d);
    }
  }
  fail(errc::roots_not_rational, "make_family: kernel stays irrational under widening");
}

// V = {w : w^q - w = t u, u in ker P*(s)}, V'' = F_q, eta(w) = t^{-1}(w^q - w),
// with a section taking the kernel basis u_i to chosen roots w_i.
struct EtaSplit {
  TowerPtr field;                      // possibly widened
  FieldElement t;                      // embedded into `field`
  std::vector<FieldElement> s_params;  // embedded into `field`
  std::vector<FieldElement> u_basis;   // kernel basis of star(s), dimension d-1
  std::vector<FieldElement> w_basis;   // section images, eta(w_i) = u_i
};

inline EtaSplit eta_split(const FamilySpec& fam, const FieldElement& t_in) {
  expect(!t_in.is_zero(), errc::usage, "eta_split: t must be nonzero");
  TowerPtr tw = fam.spec.tw;
  FieldElement t = t_in;
  std::vector<FieldElement> s = fam.s_params;
  for (int rounds = 0; rounds < 6; ++rounds) {
    const u64 q = tw->q;
    auto K = kernel(star(tw, s));
    std::vector<FieldElement> w_basis;
    bool all_rational = true;
    for (const auto& u : K.basis()) {
      // roots of w^q - w = t u, smallest index first
      FieldElement target = t * u;
      auto roots = solve_additive(
          tw, [&](const FieldElement& w) { return frobenius(w, tw->s) - w; }, target);
      if (roots.empty()) {
        all_rational = false;
        break;
      }
      w_basis.push_back(roots.front());
    }
    if (all_rational) {
      EtaSplit out{tw, t, s, K.basis(), w_basis};
      // image of eta is exactly the kernel of star(s): check elementwise on V
      auto eta = [&](const FieldElement& w) { return t.inv() * (frobenius(w, tw->s) - w); };
      std::vector<FieldElement> v_basis = w_basis;
      v_basis.push_back(tw->one());
      std::set<u64> kernel_set;
      for (const auto& e : K.elements()) kernel_set.insert(e.index());
      std::set<u64> image;
      for (const auto& v : Subspace::span_elements(tw, v_basis)) {
        expect(kernel_set.count(eta(v).index()) == 1, errc::verification_failed,
               "eta_split: eta image leaves the kernel of star(s)");
        image.insert(eta(v).index());
      }
      expect(image == kernel_set, errc::verification_failed,
             "eta_split: eta is not onto the kernel of star(s)");
      // eta restricted to V' = span(w_i) is a bijection onto the kernel
      std::set<u64> prime_image;
      for (const auto& v : Subspace::span_elements(tw, w_basis)) prime_image.insert(eta(v).index());
      expect(prime_image == kernel_set, errc::verification_failed,
             "eta_split: eta restricted to V' is not bijective onto the kernel");
      // eta kills V'' = F_q
      for (u64 c = 0; c < q; ++c)
        expect(eta(tw->mid_element_at(c)).is_zero(), errc::verification_failed,
               "eta_split: eta does not vanish on F_q");
      return out;
    }
    auto wider = make_tower(tw->p, tw->s, 2 * tw->m, tw->n);
    TowerEmbedding emb(tw, wider);
    t = emb(t);
    for (auto& x : s) x = emb(x);
    tw = wider;
  }
  fail(errc::roots_not_rational, "eta_split: Artin-Schreier roots stay irrational under widening");
}

struct Specialization {
  RestrainedAction action;                 // type (n, d) on the (possibly widened) tower
  std::vector<FieldElement> star_coeffs;   // a_1..a_d of the composed star polynomial
  EtaSplit split;
};

// the composed subspace is ker( star(s) o star(-t^{q-1}) ); the marked theta
// basis is e_i -> -t^{-1} w_i, e_d -> -t^{-1}
inline Specialization specialize(const FamilySpec& fam, const FieldElement& t_in) {
  EtaSplit split = eta_split(fam, t_in);
  const TowerPtr& tw = split.field;
  const u64 q = tw->q;
  const FieldElement& t = split.t;

  LinearizedPoly composed =
      compose(star(tw, split.s_params), star(tw, {-(t.pow(q - 1))}));
  expect(composed.coeff(0) == tw->one(), errc::inconsistent, "specialize: composed not in star form");
  std::vector<FieldElement> a;
  for (u64 i = 1; i <= fam.spec.d; ++i) a.push_back(composed.coeff(i));

  FieldElement mt_inv = -(t.inv());
  std::vector<FieldElement> theta;
  for (const auto& w : split.w_basis) theta.push_back(mt_inv * w);
  theta.push_back(mt_inv);

  GroupSpec gspec(tw, fam.spec.d);
  RestrainedAction act = canonical_action(gspec, theta, fam.prec);
  // theta(H) must equal the composed kernel
  auto K = kernel(composed);
  std::set<u64> kset(K.sorted_indices().begin(), K.sorted_indices().end());
  std::set<u64> tset;
  for (const auto& v : Subspace::span_elements(tw, theta)) tset.insert(v.index());
  expect(kset == tset, errc::verification_failed,
         "specialize: theta span differs from the composed kernel");
  return {act, a, split};
}

struct PhiReport {
  u64 verified_t_exponent = 0;       // q-1 or q, whichever round-trips
  i64 roundtrip_residual_val = 0;    // residual precision of xt (rho^q - rho) - t
  i64 y_relation_residual_val = 0;   // residual precision of star(s)(xt^{-1}) + Pc(xi^{-1})
};

// xt^{-1} = t^e xi^{-q} - xi^{-1} against the chart relation
// xt (rho^q - rho) = t with rho = t/xi; both exponent candidates are tried.
inline PhiReport birational_phi_check(const FamilySpec& fam, const Specialization& sp, i64 N = 0) {
  if (!N) N = fam.prec;
  const TowerPtr& tw = sp.split.field;
  const u64 q = tw->q;
  const FieldElement& t = sp.split.t;
  auto xi = TruncSeries::variable(tw, N);
  auto xi_inv = xi.inv();
  auto rho = xi_inv * t;
  auto rho_q = frob_pow(rho, q, 1);

  PhiReport rep;
  for (u64 e : {q - 1, q}) {
    TruncSeries xt_inv = frob_pow(xi_inv, q, 1) * t.pow(e) - xi_inv;
    TruncSeries res = (rho_q - rho) * xt_inv.inv() - TruncSeries::constant(tw, t, N);
    if (res.is_zero_to_precision()) {
      rep.verified_t_exponent = e;
      rep.roundtrip_residual_val = res.precision();
      // y-relation: star(s)(xt^{-1}) = -Pc(xi^{-1}) so the n-th powers agree
      TruncSeries w_tilde = lin::eval(star(tw, sp.split.s_params).coeffs(), xt_inv, q);
      LinearizedPoly composed = compose(star(tw, sp.split.s_params), star(tw, {-(t.pow(q - 1))}));
      TruncSeries w = lin::eval(composed.coeffs(), xi_inv, q);
      TruncSeries res2 = w_tilde + w;
      expect(res2.is_zero_to_precision(), errc::verification_failed,
             "birational_phi_check: y-relations disagree");
      rep.y_relation_residual_val = res2.precision();
      return rep;
    }
  }
  fail(errc::roundtrip_failed, "birational_phi_check: neither t-exponent round-trips");
}

struct EquivarianceReport {
  bool holds = false;
  int xt_denominator_sign = 0;   // +1: xt/(1 + eta(ttheta) xt) verified; -1: paper's 1 - eta form
  i64 min_residual_val = 0;
};

// The displayed chart action commutes with the birational map: for every
// generator g, transporting g through xi reproduces the claimed formulas on
// xt and rho.  ttheta := -t * theta is the embedding H -> V that the chart
// shifts use; in characteristic 2 both denominator signs coincide.
inline EquivarianceReport equivariance_check(const FamilySpec& fam, const Specialization& sp,
                                             i64 N = 0) {
  if (!N) N = fam.prec;
  const TowerPtr& tw = sp.split.field;
  const u64 q = tw->q;
  const FieldElement& t = sp.split.t;
  const RestrainedAction& act = sp.action;
  GroupSpec gspec = act.spec;

  auto xi = TruncSeries::variable(tw, N);
  auto xi_inv = xi.inv();
  auto xt_inv_of = [&](const TruncSeries& xinv) {
    return frob_pow(xinv, q, 1) * t.pow(q - 1) - xinv;
  };
  TruncSeries xt = xt_inv_of(xi_inv).inv();
  TruncSeries rho = xi_inv * t;

  auto eta = [&](const FieldElement& w) { return t.inv() * (frobenius(w, tw->s) - w); };

  std::vector<GroupElem> generators{gamma_element(gspec)};
  for (u64 i = 0; i < gspec.d; ++i) generators.push_back(h_basis_element(gspec, i));

  EquivarianceReport rep{true, 0, N};
  for (const auto& g : generators) {
    TruncSeries gxi = act_series(act, g, N);
    TruncSeries gxi_inv = gxi.inv();
    TruncSeries xt_g = xt_inv_of(gxi_inv).inv();
    TruncSeries rho_g = gxi_inv * t;

    if (g.a() != 0) {
      TruncSeries r1 = xt_g - xt * tw->zeta_pow((i64)g.a());
      TruncSeries r2 = rho_g - rho * tw->zeta_pow(-(i64)g.a());
      if (!r1.is_zero_to_precision() || !r2.is_zero_to_precision()) rep.holds = false;
      rep.min_residual_val = std::min({rep.min_residual_val, r1.precision(), r2.precision()});
      continue;
    }
    FieldElement ttheta = -(t * theta_value(act, g.sigma()));
    FieldElement u = eta(ttheta);
    TruncSeries r2 = rho_g - (rho + TruncSeries::constant(tw, ttheta, rho.precision()));
    if (!r2.is_zero_to_precision()) rep.holds = false;
    rep.min_residual_val = std::min(rep.min_residual_val, r2.precision());

    bool matched = false;
    for (int sign : {+1, -1}) {
      FieldElement c = (sign > 0) ? u : -u;
      // xt -> xt / (1 + c xt)
      TruncSeries denom = TruncSeries::constant(tw, tw->one(), xt.precision()) + xt * c;
      TruncSeries claim = xt * denom.inv();
      TruncSeries r1 = xt_g - claim;
      if (r1.is_zero_to_precision()) {
        matched = true;
        if (rep.xt_denominator_sign == 0) rep.xt_denominator_sign = sign;
        rep.min_residual_val = std::min(rep.min_residual_val, r1.precision());
        break;
      }
    }
    if (!matched) rep.holds = false;
  }
  expect(rep.holds, errc::equivariance_failed, "equivariance_check: chart action does not commute");
  return rep;
}

struct FiberComponent {
  std::string kind;              // "vertical" or "horizontal"
  u64 rho_index = 0;             // branch point W/Z as an element index (horizontal)
  std::vector<u64> filtration;   // ramification filtration of the branch action
};

struct FiberReport {
  u64 component_count = 0;                  // 1 + q
  std::vector<u64> intersection_rho_indices;  // the points W/Z in F_q
  u64 horizontal_n = 0, horizontal_d = 0;
  bool normal_crossings = false;
  std::vector<FiberComponent> components;
};

// t = 0 fiber: the vertical line x = 0 plus q horizontal branches at
// rho in F_q, each carrying the restrained (n, d-1) extension of star(s)
inline FiberReport fiber_at_zero(const FamilySpec& fam) {
  const TowerPtr& tw = fam.spec.tw;
  const u64 q = tw->q;
  FiberReport rep;
  rep.component_count = 1 + q;
  rep.horizontal_n = fam.spec.n();
  rep.horizontal_d = fam.spec.d - 1;

  auto K = kernel(star(tw, fam.s_params));
  GroupSpec hor_spec(tw, fam.spec.d - 1);
  RestrainedAction hor = canonical_action(hor_spec, K.basis(), fam.prec);
  auto filt = ramification_filtration(hor);

  FiberComponent vertical{"vertical", 0, {}};
  rep.components.push_back(vertical);
  rep.normal_crossings = true;
  for (u64 c = 0; c < q; ++c) {
    FieldElement rc = tw->mid_element_at(c);
    rep.intersection_rho_indices.push_back(rc.index());
    rep.components.push_back(FiberComponent{"horizontal", rc.index(), filt});
    // transversality at the node: the rho-derivative of rho^q - rho at c is
    // prod_{c' != c} (c - c'), nonzero exactly when the crossing is a node
    FieldElement prod = tw->one();
    for (u64 cc = 0; cc < q; ++cc) {
      if (cc == c) continue;
      prod = prod * (rc - tw->mid_element_at(cc));
    }
    if (prod.is_zero()) rep.normal_crossings = false;
  }
  std::sort(rep.intersection_rho_indices.begin(), rep.intersection_rho_indices.end());
  return rep;
}

struct InertiaReport {
  u64 group_order = 0;
  u64 vertical_setwise_stabilizer_order = 0;   // elements mapping the line to itself
  u64 vertical_pointwise_fixing_order = 0;     // elements fixing every rho (this is H')
  u64 vertical_inertia_order = 0;              // node-decomposition subgroup H' x| T
  bool vertical_inertia_is_gnd1 = false;       // isomorphic to G_{n, d-1} by type data
  bool h2_transitive_on_nodes = false;         // H'' permutes the q nodes simply transitively
  bool infinity_fixed_by_all = false;          // rho = infinity
  bool infinity_unique_fixed = false;          // no finite rho fixed by all of G
  u64 horizontal_pointwise_fixing_order = 0;   // trivial inertia of a branch
  u64 satz_a_claimed_inertia = 0;              // n p^{t_x - 1} with t_x = s d
  bool satz_a_matches_chart = false;           // equality with the enumerated order
};

// stabilizer data of the t = 0 chart action: g = (sigma, a) acts on rho by
// rho -> zeta^{-a} (rho + sigma_d) and on each horizontal branch by the
// canonical (n, d-1) maps of eta-kernel data.
inline InertiaReport inertia_report(const FamilySpec& fam) {
  const TowerPtr& tw = fam.spec.tw;
  const u64 q = tw->q;
  const u64 d = fam.spec.d;
  GroupSpec gspec = fam.spec;
  InertiaReport rep;
  rep.group_order = gspec.order();

  auto rho_map = [&](const GroupElem& g, const FieldElement& rho) {
    return tw->zeta_pow(-(i64)g.a()) * (rho + g.sigma()[d - 1]);
  };
  auto rho_map_trivial = [&](const GroupElem& g) {
    // identity on the rho-line iff zeta^{-a} = 1 and the shift vanishes
    return g.a() == 0 && g.sigma()[d - 1].is_zero();
  };

  auto K = kernel(star(tw, fam.s_params));
  auto theta_hor = K.basis();
  auto hor_theta_value = [&](const GroupElem& g) {
    FieldElement v = tw->zero();
    for (u64 i = 0; i + 1 < d; ++i) v = v + g.sigma()[i] * theta_hor[i];
    return v;
  };

  u64 setwise = 0, pointwise = 0, node0 = 0, hor0_pointwise = 0;
  for (u64 i = 0; i < gspec.order(); ++i) {
    GroupElem g = group_element_at(gspec, i);
    ++setwise;  // affine maps preserve the rho-line
    if (rho_map_trivial(g)) ++pointwise;
    bool fixes_node0 = rho_map(g, tw->zero()).is_zero();
    if (fixes_node0) {
      ++node0;
      // pointwise stabilizer of the branch through rho = 0: additionally the
      // (n, d-1) Mobius action on xt must be trivial
      if (g.a() == 0 && hor_theta_value(g).is_zero() && g.sigma()[d - 1].is_zero())
        ++hor0_pointwise;
    }
  }
  rep.vertical_setwise_stabilizer_order = setwise;
  rep.vertical_pointwise_fixing_order = pointwise;
  rep.vertical_inertia_order = node0;
  rep.horizontal_pointwise_fixing_order = hor0_pointwise;
  rep.vertical_inertia_is_gnd1 =
      (node0 == gspec.n() * checked_pow_u64(q, d - 1));

  // H'' acts simply transitively on the q nodes
  std::set<u64> images;
  for (u64 c = 0; c < q; ++c) {
    std::vector<FieldElement> sig(d, tw->zero());
    sig[d - 1] = tw->mid_element_at(c);
    GroupElem g(gspec, sig, 0);
    images.insert(rho_map(g, tw->zero()).index());
  }
  rep.h2_transitive_on_nodes = (images.size() == q);
  std::set<u64> node_set;
  for (u64 c = 0; c < q; ++c) node_set.insert(tw->mid_element_at(c).index());
  rep.h2_transitive_on_nodes = rep.h2_transitive_on_nodes && (images == node_set);

  // rho = infinity is fixed by every affine map; no finite point is fixed by all
  rep.infinity_fixed_by_all = true;
  rep.infinity_unique_fixed = true;
  for (u64 ri = 0; ri < tw->qm; ++ri) {
    FieldElement r0 = tw->element_at(ri);
    bool fixed_by_all = true;
    for (u64 i = 0; i < gspec.order() && fixed_by_all; ++i)
      fixed_by_all = rho_map(group_element_at(gspec, i), r0) == r0;
    if (fixed_by_all) rep.infinity_unique_fixed = false;
  }

  rep.satz_a_claimed_inertia =
      gspec.n() * checked_pow_u64(tw->p, tw->s * d - 1);
  rep.satz_a_matches_chart = (rep.satz_a_claimed_inertia == rep.vertical_inertia_order);
  return rep;
}

}  // namespace ramal
