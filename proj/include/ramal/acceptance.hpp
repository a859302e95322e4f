#pragma once

// The acceptance suite: ten go/no-go checks with pinned tolerances, exposed
// both to the dedicated test binary and to the CLI selftest.  All randomness
// is drawn from a single seeded mt19937_64, so a report is a pure function of
// its seed.

#include <chrono>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ramal/bounds.hpp"
#include "ramal/degeneration.hpp"
#include "ramal/dickson.hpp"
#include "ramal/restrained.hpp"

namespace ramal {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

namespace acpt {

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

struct ActionType {
  u64 p, s, n, d, m;
};

inline std::vector<ActionType> enumerate_types(u64 max_order, u64 max_field) {
  std::vector<ActionType> out;
  for (u64 p = 2; p <= max_order; ++p) {
    if (!is_prime_u64(p)) continue;
    for (u64 d = 1;; ++d) {
      u64 qd = checked_pow_u64(p, d);
      if (qd > max_order) break;
      if (checked_pow_u64(p, d) > max_field) break;
      out.push_back({p, 1, 1, d, d});
    }
    if (p > 13) continue;
    for (u64 n = 2; n <= 20; ++n) {
      if (gcd_u64(n, p) != 1) continue;
      u64 s = mult_order_mod(p, n);
      u64 q;
      try {
        q = checked_pow_u64(p, s);
      } catch (const error&) {
        continue;
      }
      if (q > max_field) continue;
      for (u64 d = 0;; ++d) {
        u64 qd = checked_pow_u64(q, d);
        if (n * qd > max_order) break;
        u64 m = std::max<u64>(d, 1);
        if (checked_pow_u64(q, m) > max_field) break;
        out.push_back({p, s, n, d, m});
      }
    }
  }
  return out;
}

inline std::vector<FieldElement> random_injective_theta(const TowerPtr& tw, u64 d,
                                                        std::mt19937_64& rng) {
  while (true) {
    std::vector<FieldElement> theta;
    for (u64 i = 0; i < d; ++i) theta.push_back(tw->element_at(rng() % tw->qm));
    std::set<u64> seen;
    bool ok = true;
    try {
      for (const auto& v : Subspace::span_elements(tw, theta)) ok &= seen.insert(v.index()).second;
    } catch (const error&) {
      ok = false;
    }
    if (ok && seen.size() == checked_pow_u64(tw->q, d)) return theta;
  }
}

}  // namespace acpt

// 1. subspace <-> polynomial bijection, exhaustive over F_2-subspaces of
// F_{2^m}, m <= 4, all dimensions; zero failures, runtime < 10 s
inline CriterionResult criterion_bijection() {
  acpt::Timer timer;
  u64 checked = 0, planes_of_f16 = 0;
  bool ok = true;
  for (u64 m = 1; m <= 4 && ok; ++m) {
    auto tw = make_tower(2, 1, m);
    for (u64 d = 0; d <= m && ok; ++d) {
      for (const auto& basis : all_subspace_bases(tw, d)) {
        Subspace V(tw, basis);
        auto P = from_subspace(V);
        if (!(kernel(P) == V)) ok = false;
        // reverse direction: the polynomial built from the recovered subspace
        // is identical
        if (!(from_subspace(kernel(P)) == P)) ok = false;
        ++checked;
        if (m == 4 && d == 2) ++planes_of_f16;
      }
    }
  }
  double sec = timer.seconds();
  std::ostringstream det;
  det << "roundtrips=" << checked << " planes_of_F16=" << planes_of_f16
      << " runtime_ok=" << (sec < 10.0);
  return {1, "subspace-polynomial bijection", ok && planes_of_f16 == 35 && sec < 10.0, det.str()};
}

// 2. Dickson invariants fixed by every element of GL(d, F_q) for
// (q,d) in {(2,2),(3,1),(2,3)}; exact values at q=2, d=2
inline CriterionResult criterion_dickson() {
  bool ok = true;
  u64 matrices = 0;
  for (auto [p, d] : {std::pair<u64, u64>{2, 2}, {3, 1}, {2, 3}}) {
    auto tw = make_tower(p, 1, 1);
    auto T = dickson_invariants(tw, d);
    auto gl = enumerate_gl(tw, d);
    matrices += gl.size();
    for (const auto& A : gl)
      for (const auto& t : T)
        if (!(gl_action(t, A) == t)) ok = false;
    if (p == 2 && d == 3 && gl.size() != 168) ok = false;
  }
  {
    auto tw = make_tower(2, 1, 1);
    auto T = dickson_invariants(tw, 2);
    auto vars = u_vars(2);
    auto U1 = MultiPoly::variable(tw, vars, "U1");
    auto U2 = MultiPoly::variable(tw, vars, "U2");
    if (!(T[0] == U1 * U1 * U2 + U1 * U2 * U2)) ok = false;
    if (!(T[1] == U1 * U1 + U1 * U2 + U2 * U2)) ok = false;
  }
  std::ostringstream det;
  det << "gl_matrices_exhausted=" << matrices;
  return {2, "Dickson invariants under GL(d, F_q)", ok, det.str()};
}

// 3. ring relations: star composition expansion coefficientwise for d <= 3,
// minimal polynomial of S on 50 random consistent specializations,
// extension_degrees(2,2) = (3,2)
inline CriterionResult criterion_ring_relations(std::mt19937_64& rng) {
  bool ok = true;
  // symbolic composition expansion
  for (u64 d : {2u, 3u}) {
    for (u64 p : {2u, 3u}) {
      auto tw = make_tower(p, 1, 1);
      std::vector<std::string> names{"S"};
      for (u64 i = 1; i < d; ++i) names.push_back("Tp" + std::to_string(i));
      auto vars = make_vars(names);
      auto S = MultiPoly::variable(tw, vars, "S");
      auto one = MultiPoly::constant(tw, vars, tw->one());
      std::vector<MultiPoly> inner{one};
      for (u64 i = 1; i < d; ++i)
        inner.push_back(MultiPoly::variable(tw, vars, "Tp" + std::to_string(i)));
      auto lhs = lin::compose(std::vector<MultiPoly>{one, S}, inner, tw->q);
      auto Tp = [&](u64 i) { return MultiPoly::variable(tw, vars, "Tp" + std::to_string(i)); };
      if (!(lhs[0] == one) || !(lhs[1] == S + Tp(1))) ok = false;
      for (u64 i = 2; i < d; ++i)
        if (!(lhs[i] == S * frob_pow(Tp(i - 1), tw->q, 1) + Tp(i))) ok = false;
      if (!(lhs[d] == S * frob_pow(Tp(d - 1), tw->q, 1))) ok = false;
    }
  }
  // minimal polynomial (verified symbolically inside the constructor) and
  // 50 random consistent specializations
  u64 specializations = 0;
  for (auto [p, d, m] : {std::tuple<u64, u64, u64>{2, 2, 4}, {3, 2, 2}}) {
    auto tw = make_tower(p, 1, m);
    MultiPoly M = minimal_polynomial_S(tw, d);
    for (int it = 0; it < 25; ++it) {
      FieldElement s0 = tw->zero();
      while (s0.is_zero()) s0 = tw->element_at(rng() % tw->qm);
      std::vector<FieldElement> tp(d - 1);
      for (auto& x : tp) x = tw->element_at(rng() % tw->qm);
      std::vector<FieldElement> point{s0};
      for (u64 i = 1; i <= d; ++i) {
        if (i == 1)
          point.push_back(s0 + tp[0]);
        else if (i < d)
          point.push_back(s0 * tp[i - 2].pow(tw->q) + tp[i - 1]);
        else
          point.push_back(s0 * tp[d - 2].pow(tw->q));
      }
      if (!M.eval(point).is_zero()) ok = false;
      ++specializations;
    }
  }
  if (extension_degrees(2, 2) != std::pair<u64, u64>{3, 2}) ok = false;
  std::ostringstream det;
  det << "specializations=" << specializations << " degrees(2,2)=(3,2)";
  return {3, "ring-extension relations", ok, det.str()};
}

// 4. canonical actions for every type with n q^d <= 200, 5 random theta each:
// homomorphism on all pairs and filtration [|G|, |G|, q^d, 1]; runtime < 30 s
inline CriterionResult criterion_canonical_actions(std::mt19937_64& rng) {
  acpt::Timer timer;
  bool ok = true;
  u64 types = 0, actions = 0;
  for (const auto& ty : acpt::enumerate_types(200, 4096)) {
    if (ty.n * checked_pow_u64(checked_pow_u64(ty.p, ty.s), ty.d) == 1) continue;  // trivial group
    auto tw = make_tower(ty.p, ty.s, ty.m, ty.n);
    GroupSpec spec(tw, ty.d);
    ++types;
    for (int rep = 0; rep < 5; ++rep) {
      auto theta = acpt::random_injective_theta(tw, ty.d, rng);
      auto act = canonical_action(spec, theta);
      if (!verify_action_homomorphism(act)) ok = false;
      std::vector<u64> expected{spec.order(), spec.order()};
      if (spec.qd() > 1) expected.push_back(spec.qd());
      expected.push_back(1);
      if (ramification_filtration(act) != expected) ok = false;
      ++actions;
      if (ty.d == 0) break;  // theta is empty; one action suffices
    }
  }
  double sec = timer.seconds();
  std::ostringstream det;
  det << "types=" << types << " actions=" << actions << " runtime_ok=" << (sec < 30.0);
  return {4, "canonical action homomorphism and G_2 = 0", ok && sec < 30.0, det.str()};
}

// 5. Q-invariance for 20 random (n, d, a) with n q^d <= 64, plus the closed
// form y = x^2/(1+x) fixed by x -> x/(1+x) at q=2, n=1, d=1
inline CriterionResult criterion_q_invariance(std::mt19937_64& rng) {
  bool ok = true;
  // closed form
  {
    auto tw = make_tower(2, 1, 1, 1);
    GroupSpec spec(tw, 1);
    auto act = canonical_action(spec, {tw->one()});
    auto rep = verify_Q_invariance(act, {tw->one()}, 1);
    if (!rep.invariant) ok = false;
  }
  std::vector<acpt::ActionType> pool;
  for (const auto& ty : acpt::enumerate_types(64, 4096))
    if (ty.d >= 1) pool.push_back(ty);
  u64 samples = 0;
  i64 min_prec = 1 << 30;
  while (samples < 20) {
    const auto& ty = pool[rng() % pool.size()];
    u64 q = checked_pow_u64(ty.p, ty.s);
    u64 m = (checked_pow_u64(q, ty.d + 1) <= 4096) ? ty.d + 1 : ty.d;
    auto tw = make_tower(ty.p, ty.s, m, ty.n);
    GroupSpec spec(tw, ty.d);
    auto theta = acpt::random_injective_theta(tw, ty.d, rng);
    // a-coefficients: normalized star form of the subspace polynomial
    auto monic = from_subspace(Subspace(tw, theta));
    std::vector<FieldElement> a;
    for (u64 i = 1; i <= ty.d; ++i) a.push_back(monic.coeff(i) / monic.coeff(0));
    auto act = canonical_action(spec, theta);
    auto rep = verify_Q_invariance(act, a, ty.n);
    if (!rep.invariant) ok = false;
    min_prec = std::min(min_prec, rep.min_residual_precision);
    ++samples;
  }
  std::ostringstream det;
  det << "samples=" << samples << " min_residual_precision=" << min_prec;
  return {5, "Q-polynomial invariance", ok && min_prec > 0, det.str()};
}

// 6. classification counts: (2,1,2,3) -> 1 class, (2,1,2,4) -> 3 classes,
// d = 1 -> 1 class for all tested m, against the naive orbit partition
inline CriterionResult criterion_classification() {
  bool ok = true;
  auto c3 = classify_all(2, 1, 2, 3);
  ok &= (c3.subspace_count == 7 && c3.class_reps.size() == 1);
  ok &= (classify_orbit_count_naive(2, 1, 2, 3) == 1);
  auto c4 = classify_all(2, 1, 2, 4);
  ok &= (c4.subspace_count == 35 && c4.class_reps.size() == 3);
  ok &= (classify_orbit_count_naive(2, 1, 2, 4) == 3);
  for (u64 m = 1; m <= 4; ++m) {
    ok &= (classify_all(2, 1, 1, m).class_reps.size() == 1);
    ok &= (classify_orbit_count_naive(2, 1, 1, m) == 1);
  }
  for (u64 m = 1; m <= 3; ++m) ok &= (classify_all(3, 1, 1, m).class_reps.size() == 1);
  return {6, "classification by scaling orbits", ok,
          "classes(2,1,2,3)=1 classes(2,1,2,4)=3 d=1 always 1"};
}

// 7. degeneration for p=2, d=2, n in {1,3} (q = 2 resp. 4), 20 random t != 0;
// runtime < 60 s
inline CriterionResult criterion_degeneration(std::mt19937_64& rng) {
  acpt::Timer timer;
  bool ok = true;
  u64 samples = 0;
  for (u64 n : {1u, 3u}) {
    auto tw = (n == 1) ? make_tower(2, 1, 4, 1) : make_tower(2, 2, 1, 3);
    GroupSpec spec(tw, 2);
    // s-parameters with rational kernel: star coefficients of a random line
    FamilySpec fam = [&] {
      while (true) {
        FieldElement b = tw->element_at(rng() % tw->qm);
        if (b.is_zero()) continue;
        auto monic = from_subspace(Subspace(tw, {b}));
        std::vector<FieldElement> s{monic.coeff(1) / monic.coeff(0)};
        try {
          return make_family(spec, s);
        } catch (const error&) {
          continue;
        }
      }
    }();
    // t = 0 fiber
    auto fiber = fiber_at_zero(fam);
    ok &= (fiber.component_count == 1 + tw->q);
    ok &= (fiber.intersection_rho_indices.size() == tw->q);
    for (u64 c = 0; c < tw->q; ++c) {
      bool found = false;
      for (u64 idx : fiber.intersection_rho_indices)
        if (idx == tw->mid_element_at(c).index()) found = true;
      ok &= found;
    }
    ok &= (fiber.horizontal_n == n && fiber.horizontal_d == 1);
    ok &= fiber.normal_crossings;
    // horizontal branches are restrained of type (n, 1)
    for (const auto& comp : fiber.components) {
      if (comp.kind != "horizontal") continue;
      std::vector<u64> expected{n * tw->q, n * tw->q};
      if (tw->q > 1) expected.push_back(tw->q);
      expected.push_back(1);
      ok &= (comp.filtration == expected);
    }
    auto inertia = inertia_report(fam);
    ok &= (inertia.vertical_inertia_order == n * tw->q);  // n q^{d-1}
    ok &= (inertia.vertical_pointwise_fixing_order == tw->q);
    ok &= inertia.vertical_inertia_is_gnd1;
    ok &= inertia.h2_transitive_on_nodes;
    ok &= inertia.infinity_fixed_by_all && inertia.infinity_unique_fixed;
    ok &= (inertia.horizontal_pointwise_fixing_order == 1);

    u64 per_n = 10;
    for (u64 it = 0; it < per_n; ++it) {
      FieldElement t = tw->zero();
      while (t.is_zero()) t = tw->element_at(rng() % tw->qm);
      auto sp = specialize(fam, t);
      u64 G = sp.action.spec.order(), qd = sp.action.spec.qd();
      ok &= (ramification_filtration(sp.action) == std::vector<u64>{G, G, qd, 1});
      ok &= verify_action_homomorphism(sp.action);
      // roundtrip and equivariance at doubled precision so the residuals are
      // certified beyond the working precision N = 4 n q^d
      i64 N = fam.prec;
      auto phi = birational_phi_check(fam, sp, 2 * N + 16);
      ok &= (phi.verified_t_exponent == sp.split.field->q - 1);
      ok &= (phi.roundtrip_residual_val >= N);
      auto eq = equivariance_check(fam, sp, 2 * N + 16);
      ok &= eq.holds && (eq.min_residual_val >= N);
      ++samples;
    }
  }
  double sec = timer.seconds();
  std::ostringstream det;
  det << "t_samples=" << samples << " runtime_ok=" << (sec < 60.0);
  return {7, "degeneration family and special fiber", ok && sec < 60.0, det.str()};
}

// 8. Hensel canonical form: q=2, n=1, d=1, alpha = 1 + yhat^2; residuals of
// the defining relation and both equivariance identities >= 24
inline CriterionResult criterion_hensel() {
  auto tw = make_tower(2, 1, 1, 1);
  i64 N = 40;
  LinearizedPoly Pstar = star(tw, {tw->one()});
  auto xhat = TruncSeries::variable(tw, N);
  auto yhat = lin::eval(Pstar.coeffs(), xhat.inv(), tw->q).inv();
  auto alpha = TruncSeries::constant(tw, tw->one(), yhat.precision() * 2) + yhat * yhat;
  auto y = yhat * alpha;
  auto lift = henselian_canonical_x(xhat, yhat, y, Pstar, 1, N);
  bool ok = lift.defining_residual_val >= 24;
  // sigma: x -> x/(1-x); gamma is trivial for n = 1 (residual identically 0)
  MobiusMap sig(tw->one(), tw->zero(), -(tw->one()), tw->one());
  auto transported = lift.x.substitute(mobius_apply(sig, xhat));
  auto direct = mobius_apply(sig, lift.x);
  i64 sigma_res = (transported - direct).val_lower_bound();
  ok &= sigma_res >= 24;
  auto gamma_res = (lift.x - lift.x).val_lower_bound();
  ok &= gamma_res >= 24;
  std::ostringstream det;
  det << "defining_residual=" << lift.defining_residual_val << " sigma_residual=" << sigma_res;
  return {8, "henselian canonical form", ok, det.str()};
}

// 9. bound arithmetic: pinned values, f_tilde linear below the crossover,
// deterministic crossover, Katz-Gabber genus 0, Satz B case II at the corner
inline CriterionResult criterion_bounds() {
  bool ok = true;
  ok &= (nakajima_bound(2) == 168);
  ok &= (nakajima_bound(3) == 504);
  auto s3 = stichtenoth_bound(3);
  ok &= (s3.exact && s3.value == 6048);
  for (u64 g = 2; g <= 100; ++g) {
    auto f = f_tilde(g);
    ok &= (f.value == 84 * (g - 1) && !f.second_term);
  }
  u64 gstar = f_tilde_crossover();
  ok &= (gstar == f_tilde_crossover());
  ok &= (!f_tilde_second_term_wins(gstar - 1) && f_tilde_second_term_wins(gstar));
  // Katz-Gabber types with n q^d <= 64 all have genus 0
  for (u64 p : {2, 3, 5, 7}) {
    for (u64 n = 1; n <= 64; ++n) {
      if (gcd_u64(n, p) != 1) continue;
      u64 s = (n == 1) ? 1 : mult_order_mod(p, n);
      u64 q;
      try {
        q = checked_pow_u64(p, s);
      } catch (const error&) {
        continue;
      }
      for (u64 d = 0;; ++d) {
        u64 qd;
        try {
          qd = checked_pow_u64(q, d);
        } catch (const error&) {
          break;
        }
        if (n * qd > 64) break;
        if (n * qd > 1) ok &= (katz_gabber_genus(n, d, q) == 0);
      }
    }
  }
  for (u64 g : {2, 5, 11, 30}) ok &= (satz_b_case_ii(g, 3 * g - 3) == 72 * (g - 1));
  std::ostringstream det;
  det << "crossover_genus=" << gstar;
  return {9, "bound arithmetic", ok, det.str()};
}

inline std::vector<CriterionResult> run_acceptance_core(u64 seed) {
  std::mt19937_64 rng(seed);
  std::vector<CriterionResult> out;
  out.push_back(criterion_bijection());
  out.push_back(criterion_dickson());
  out.push_back(criterion_ring_relations(rng));
  out.push_back(criterion_canonical_actions(rng));
  out.push_back(criterion_q_invariance(rng));
  out.push_back(criterion_classification());
  out.push_back(criterion_degeneration(rng));
  out.push_back(criterion_hensel());
  out.push_back(criterion_bounds());
  return out;
}

inline std::string acceptance_report_text(const std::vector<CriterionResult>& results) {
  std::ostringstream os;
  for (const auto& r : results)
    os << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.name << " [" << r.detail
       << "]\n";
  return os.str();
}

// 10. determinism: two full runs with the same seed produce byte-identical
// reports
inline std::vector<CriterionResult> run_acceptance(u64 seed) {
  auto first = run_acceptance_core(seed);
  auto second = run_acceptance_core(seed);
  bool identical = acceptance_report_text(first) == acceptance_report_text(second);
  auto results = first;
  results.push_back(
      {10, "selftest determinism", identical, identical ? "reports byte-identical" : "mismatch"});
  return results;
}

}  // namespace ramal
