#pragma once

// Canonical-form restrained actions of G_{n,d} on a local coordinate:
//   gamma(x) = zeta x,   sigma(x) = x / (1 - theta(sigma) x),
// their ramification filtration, the theta and omega invariants, isomorphism
// testing, the full classification by scaling orbits of subspaces, and the
// Q-polynomial construction.
//
// Composition convention: the group acts on the coordinate ring from the
// right, so the Mobius assignment satisfies act(g h) = act(h) after act(g);
// all homomorphism checks use that order.

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "ramal/bounds.hpp"
#include "ramal/errors.hpp"
#include "ramal/gnd.hpp"
#include "ramal/linpoly.hpp"
#include "ramal/multipoly.hpp"
#include "ramal/series.hpp"

namespace ramal {

struct RestrainedAction {
  GroupSpec spec;
  std::vector<FieldElement> theta;  // images of the standard basis e_1..e_d
  i64 prec = 0;                     // working precision for series checks
};

inline i64 default_action_precision(const GroupSpec& spec) {
  return 4 * (i64)spec.order();
}

// theta extended F_q-linearly to sigma in H
inline FieldElement theta_value(const RestrainedAction& act, const std::vector<FieldElement>& sigma) {
  FieldElement v = act.spec.tw->zero();
  for (u64 i = 0; i < act.spec.d; ++i) v = v + sigma[i] * act.theta[i];
  return v;
}

inline RestrainedAction canonical_action(const GroupSpec& spec,
                                         std::vector<FieldElement> theta, i64 prec = 0) {
  expect(theta.size() == spec.d, errc::usage, "canonical_action: theta needs d images");
  if (spec.d > 0) {
    // injectivity: the q^d span values must be pairwise distinct
    std::set<u64> seen;
    for (const auto& v : Subspace::span_elements(spec.tw, theta)) seen.insert(v.index());
    expect(seen.size() == spec.qd(), errc::theta_not_injective,
           "canonical_action: theta images are F_q-dependent");
  }
  RestrainedAction act{spec, std::move(theta), prec ? prec : default_action_precision(spec)};
  return act;
}

// Mobius map of g = (sigma, a): x -> zeta^a x / (1 - theta(sigma) x)
inline MobiusMap act_matrix(const RestrainedAction& act, const GroupElem& g) {
  const TowerPtr& tw = act.spec.tw;
  return MobiusMap(tw->zeta_pow((i64)g.a()), tw->zero(), -theta_value(act, g.sigma()), tw->one());
}

// the series g(x) = zeta^a sum_k theta(sigma)^k x^{k+1} to precision N
inline TruncSeries act_series(const RestrainedAction& act, const GroupElem& g, i64 N = 0) {
  if (!N) N = act.prec;
  const TowerPtr& tw = act.spec.tw;
  FieldElement za = tw->zeta_pow((i64)g.a());
  FieldElement th = theta_value(act, g.sigma());
  std::vector<FieldElement> c;
  c.reserve((size_t)N);
  FieldElement pw = tw->one();
  for (i64 k = 0; k + 1 < N; ++k) {
    c.push_back(za * pw);
    pw = pw * th;
  }
  return TruncSeries::from_coeffs(tw, 1, std::move(c), N);
}

// act(g h) = act(h) after act(g), on all pairs up to the budget, then on
// seeded random pairs
inline bool verify_action_homomorphism(const RestrainedAction& act, u64 exhaustive_budget = 200,
                                       u64 random_pairs = 512) {
  u64 order = act.spec.order();
  auto check = [&](const GroupElem& g, const GroupElem& h) {
    return act_matrix(act, g * h).same_map(act_matrix(act, h).after(act_matrix(act, g)));
  };
  if (order <= exhaustive_budget) {
    auto elems = all_group_elements(act.spec);
    for (const auto& g : elems)
      for (const auto& h : elems)
        if (!check(g, h)) return false;
  } else {
    u64 state = 0x9e3779b97f4a7c15ull;
    auto next = [&state, order] {
      state ^= state << 13;
      state ^= state >> 7;
      state ^= state << 17;
      return state % order;
    };
    for (u64 i = 0; i < random_pairs; ++i)
      if (!check(group_element_at(act.spec, next()), group_element_at(act.spec, next())))
        return false;
  }
  return true;
}

// [|G_-1|, |G_0|, |G_1|, ...] with G_i = {g : v(g(x) - x) > i}, computed from
// the series action on the canonical coordinate; the list ends at the first 1.
inline std::vector<u64> ramification_filtration(const RestrainedAction& act, i64 N = 0) {
  if (!N) N = act.prec;
  const TowerPtr& tw = act.spec.tw;
  auto x = TruncSeries::variable(tw, N);
  std::vector<i64> vals;  // valuation of g(x) - x per non-identity element
  for (u64 i = 0; i < act.spec.order(); ++i) {
    GroupElem g = group_element_at(act.spec, i);
    if (g.is_identity()) continue;
    TruncSeries diff = act_series(act, g, N) - x;
    expect(!diff.is_zero_to_precision(), errc::precision_loss,
           "ramification_filtration: displacement of a non-identity element vanishes to precision");
    vals.push_back(diff.valuation());
  }
  std::vector<u64> sizes;
  for (i64 i = -1;; ++i) {
    u64 count = 1;  // identity belongs to every G_i
    for (i64 v : vals)
      if (v > i) ++count;
    sizes.push_back(count);
    if (count == 1) break;
  }
  return sizes;
}

// filtration of the restriction to a subgroup (given by its elements)
inline std::vector<u64> ramification_filtration_subset(const RestrainedAction& act,
                                                       const std::vector<GroupElem>& subgroup,
                                                       i64 N = 0) {
  if (!N) N = act.prec;
  auto x = TruncSeries::variable(act.spec.tw, N);
  std::vector<i64> vals;
  for (const auto& g : subgroup) {
    if (g.is_identity()) continue;
    TruncSeries diff = act_series(act, g, N) - x;
    expect(!diff.is_zero_to_precision(), errc::precision_loss,
           "ramification_filtration_subset: displacement vanishes to precision");
    vals.push_back(diff.valuation());
  }
  std::vector<u64> sizes;
  for (i64 i = -1;; ++i) {
    u64 count = 1;
    for (i64 v : vals)
      if (v > i) ++count;
    sizes.push_back(count);
    if (count == 1) break;
  }
  return sizes;
}

// recover theta from series sigma(x) = x + theta(sigma) x^2 + ...; input must
// cover the standard basis of H.  Verifies additivity and the zeta-stability
// of the image set.
inline std::vector<FieldElement> theta_extract(
    const GroupSpec& spec, const std::vector<std::pair<GroupElem, TruncSeries>>& action_series) {
  const TowerPtr& tw = spec.tw;
  std::map<u64, FieldElement> theta_by_index;
  for (const auto& [g, f] : action_series) {
    expect(g.a() == 0, errc::usage, "theta_extract: series must belong to H");
    expect(!f.is_zero_to_precision() && f.valuation() >= 1 && f.coeff(1) == tw->one(),
           errc::not_normalized, "theta_extract: series is not x + O(x^2)");
    theta_by_index[g.index()] = f.coeff(2);
  }
  auto lookup = [&](const GroupElem& g) {
    auto it = theta_by_index.find(g.index());
    expect(it != theta_by_index.end(), errc::usage, "theta_extract: missing element series");
    return it->second;
  };
  // additivity on all pairs present
  for (const auto& [g1, f1] : action_series)
    for (const auto& [g2, f2] : action_series) {
      GroupElem prod = g1 * g2;
      if (theta_by_index.count(prod.index()))
        expect(lookup(prod) == lookup(g1) + lookup(g2), errc::verification_failed,
               "theta_extract: theta is not additive");
    }
  std::vector<FieldElement> basis_images;
  for (u64 i = 0; i < spec.d; ++i) basis_images.push_back(lookup(h_basis_element(spec, i)));
  // zeta^{-1} theta(H) = theta(H) as sets
  if (spec.d > 0 && theta_by_index.size() == spec.qd()) {
    std::set<u64> img;
    for (const auto& [idx, v] : theta_by_index) img.insert(v.index());
    FieldElement zi = tw->zeta_pow(-1);
    for (const auto& [idx, v] : theta_by_index)
      expect(img.count((zi * v).index()) == 1, errc::verification_failed,
             "theta_extract: image set is not zeta-stable");
  }
  return basis_images;
}

// canonical representative of theta(H) mod k^x: the lexicographically least
// sorted index list of c * theta(H) over all scalars c != 0
struct OmegaInvariant {
  u64 n = 0, d = 0;
  std::vector<u64> canonical_indices;  // sorted element indices of the representative

  bool operator==(const OmegaInvariant& o) const {
    return n == o.n && d == o.d && canonical_indices == o.canonical_indices;
  }
};

inline std::vector<u64> canonical_scaled_key(const TowerPtr& tw,
                                             const std::vector<FieldElement>& span) {
  std::vector<u64> best;
  for (u64 ci = 1; ci < tw->qm; ++ci) {
    FieldElement c = tw->element_at(ci);
    std::vector<u64> key;
    key.reserve(span.size());
    for (const auto& v : span) key.push_back((c * v).index());
    std::sort(key.begin(), key.end());
    if (best.empty() || key < best) best = std::move(key);
  }
  return best;
}

inline OmegaInvariant omega_invariant(const RestrainedAction& act) {
  auto span = Subspace::span_elements(act.spec.tw, act.theta);
  return {act.spec.n(), act.spec.d, canonical_scaled_key(act.spec.tw, span)};
}

inline bool is_isomorphic(const RestrainedAction& a, const RestrainedAction& b) {
  expect(a.spec.n() == b.spec.n() && a.spec.d == b.spec.d, errc::type_mismatch,
         "is_isomorphic: actions have different type (n, d)");
  expect(a.spec.tw == b.spec.tw, errc::usage, "is_isomorphic: actions live on different towers");
  return omega_invariant(a) == omega_invariant(b);
}

struct Classification {
  u64 subspace_count = 0;
  std::vector<std::vector<u64>> class_reps;  // canonical index lists, sorted
};

// one canonical representative per scaling orbit of d-dimensional
// F_q-subspaces of F_{q^m}
inline Classification classify_all(u64 p, u64 s, u64 d, u64 m) {
  auto tw = make_tower(p, s, m);
  expect(d >= 1 && d <= m, errc::usage, "classify_all: 1 <= d <= m");
  // Gaussian binomial guard
  u64 count = 1;
  for (u64 i = 0; i < d; ++i)
    count = count * ((checked_pow_u64(tw->q, m - i) - 1) / (checked_pow_u64(tw->q, i + 1) - 1));
  expect(count <= 1000000, errc::too_large, "classify_all: Gaussian count beyond 1e6");

  auto bases = all_subspace_bases(tw, d);
  std::set<std::vector<u64>> reps;
  for (const auto& basis : bases)
    reps.insert(canonical_scaled_key(tw, Subspace::span_elements(tw, basis)));
  Classification out;
  out.subspace_count = bases.size();
  out.class_reps.assign(reps.begin(), reps.end());
  return out;
}

// independent orbit count: visited-set sweep over explicit scaling orbits,
// no canonical minimization involved
inline u64 classify_orbit_count_naive(u64 p, u64 s, u64 d, u64 m) {
  auto tw = make_tower(p, s, m);
  auto bases = all_subspace_bases(tw, d);
  std::set<std::vector<u64>> unvisited;
  std::map<std::vector<u64>, std::vector<FieldElement>> span_of;
  for (const auto& basis : bases) {
    auto span = Subspace::span_elements(tw, basis);
    std::vector<u64> key;
    for (const auto& v : span) key.push_back(v.index());
    std::sort(key.begin(), key.end());
    span_of[key] = span;
    unvisited.insert(key);
  }
  u64 orbits = 0;
  while (!unvisited.empty()) {
    auto seed = *unvisited.begin();
    ++orbits;
    for (u64 ci = 1; ci < tw->qm; ++ci) {
      FieldElement c = tw->element_at(ci);
      std::vector<u64> key;
      for (const auto& v : span_of[seed]) key.push_back((c * v).index());
      std::sort(key.begin(), key.end());
      unvisited.erase(key);
    }
  }
  return orbits;
}

// Q(x) = x^{n q^d} - y (x^{q^d - 1} + a_1 x^{q^d - q} + ... + a_d)^n
// as a polynomial in x and y; Eisenstein in y by construction.
inline MultiPoly build_Q(const TowerPtr& tw, u64 n, const std::vector<FieldElement>& a) {
  u64 d = a.size();
  expect(d >= 1, errc::usage, "build_Q: need a_1..a_d");
  expect(!a.back().is_zero(), errc::degenerate, "build_Q: a_d = 0");
  u64 qd = checked_pow_u64(tw->q, d);
  auto vars = make_vars({"x", "y"});
  MultiPoly inner(tw, vars);
  // sum_{i=0..d} a_i x^{q^d - q^i} with a_0 = 1
  inner = inner + MultiPoly::monomial(tw, vars, {qd - 1, 0}, tw->one());
  for (u64 i = 1; i <= d; ++i)
    inner = inner + MultiPoly::monomial(tw, vars, {qd - checked_pow_u64(tw->q, i), 0}, a[i - 1]);
  MultiPoly Q = MultiPoly::monomial(tw, vars, {n * qd, 0}, tw->one()) -
                MultiPoly::monomial(tw, vars, {0, 1}, tw->one()) * inner.pow(n);
  // Eisenstein sanity: monic of degree n q^d in x, all other terms y-linear,
  // constant coefficient -y a_d^n
  for (const auto& [e, c] : Q.terms()) {
    bool lead = (e[0] == n * qd && e[1] == 0);
    expect(lead || e[1] == 1, errc::verification_failed, "build_Q: non-Eisenstein term");
  }
  expect(Q.terms().count({0, 1}) == 1, errc::verification_failed,
         "build_Q: missing constant term -y a_d^n");
  expect(Q.terms().at({0, 1}) == -(a.back().pow(n)), errc::verification_failed,
         "build_Q: wrong constant term");
  return Q;
}

struct QInvarianceReport {
  bool invariant = false;
  i64 min_residual_precision = 0;
};

// with y := P*(a)(x^{-1})^{-n} as a Laurent series, g(y) = y for all g in G
inline QInvarianceReport verify_Q_invariance(const RestrainedAction& act,
                                             const std::vector<FieldElement>& a, u64 n, i64 N = 0) {
  if (!N) N = act.prec;
  const TowerPtr& tw = act.spec.tw;
  expect(act.spec.n() == n, errc::usage, "verify_Q_invariance: n mismatch");
  LinearizedPoly Pstar = star(tw, a);
  // theta(H) must be exactly the rational kernel of P*
  auto K = kernel(Pstar);
  std::set<u64> kset(K.sorted_indices().begin(), K.sorted_indices().end());
  std::set<u64> tset;
  for (const auto& v : Subspace::span_elements(tw, act.theta)) tset.insert(v.index());
  expect(kset == tset, errc::subspace_mismatch,
         "verify_Q_invariance: theta(H) is not the kernel of P*(a)");

  auto x = TruncSeries::variable(tw, N);
  TruncSeries w = lin::eval(Pstar.coeffs(), x.inv(), tw->q);
  TruncSeries y = w.pow(n).inv();  // valuation n q^d
  QInvarianceReport rep{true, y.precision()};
  for (u64 i = 0; i < act.spec.order(); ++i) {
    GroupElem g = group_element_at(act.spec, i);
    if (g.is_identity()) continue;
    TruncSeries gy = y.substitute(act_series(act, g, N));
    TruncSeries res = gy - y;
    rep.min_residual_precision = std::min(rep.min_residual_precision, res.precision());
    if (!res.is_zero_to_precision()) rep.invariant = false;
  }
  return rep;
}

// genus of the two-point model cover (tame Z/n over 0, full G_{n,d} over
// infinity); always 0 for restrained types
inline i64 katz_gabber_genus(u64 n, u64 d, u64 q) {
  CoverSpec cover;
  cover.g_base = 0;
  cover.group_order = n * checked_pow_u64(q, d);
  if (n > 1) cover.branch.push_back(BranchPoint::tame(n));
  cover.branch.push_back(BranchPoint::restrained(n, d, q));
  return rhz_genus(cover);
}

}  // namespace ramal
