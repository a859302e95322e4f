#pragma once

// The finite group G_{n,d} = H x| Z/n with H = (F_q^d, +) and
// (sigma, a)(tau, b) = (sigma + zeta^a tau, a + b).  The tower supplies n and
// the order-n root zeta; gamma = (0, 1) is the distinguished torus generator.

#include <algorithm>
#include <functional>
#include <set>
#include <vector>

#include "ramal/errors.hpp"
#include "ramal/ff.hpp"

namespace ramal {

struct GroupSpec {
  TowerPtr tw;
  u64 d = 0;

  GroupSpec() = default;
  GroupSpec(TowerPtr tower, u64 dim) : tw(std::move(tower)), d(dim) {
    expect(tw->n >= 1, errc::usage, "GroupSpec: tower must carry n");
  }
  u64 n() const { return tw->n; }
  u64 qd() const { return checked_pow_u64(tw->q, d); }
  u64 order() const { return n() * qd(); }
  bool operator==(const GroupSpec& o) const { return tw == o.tw && d == o.d; }
};

class GroupElem {
 public:
  GroupElem() = default;
  GroupElem(GroupSpec spec, std::vector<FieldElement> sigma, i64 a)
      : spec_(std::move(spec)), sigma_(std::move(sigma)) {
    expect(sigma_.size() == spec_.d, errc::usage, "GroupElem: sigma must have d components");
    for (const auto& c : sigma_)
      expect(spec_.tw->in_mid_field(c), errc::usage, "GroupElem: sigma components must lie in F_q");
    i64 n = (i64)spec_.n();
    a_ = (u64)(((a % n) + n) % n);
  }

  const GroupSpec& spec() const { return spec_; }
  const std::vector<FieldElement>& sigma() const { return sigma_; }
  u64 a() const { return a_; }

  bool is_identity() const {
    if (a_ != 0) return false;
    for (const auto& c : sigma_)
      if (!c.is_zero()) return false;
    return true;
  }

  GroupElem operator*(const GroupElem& o) const {
    expect(spec_ == o.spec_, errc::usage, "GroupElem: spec mismatch");
    FieldElement za = spec_.tw->zeta_pow((i64)a_);
    std::vector<FieldElement> s;
    s.reserve(spec_.d);
    for (u64 i = 0; i < spec_.d; ++i) s.push_back(sigma_[i] + za * o.sigma_[i]);
    return GroupElem(spec_, std::move(s), (i64)(a_ + o.a_));
  }

  GroupElem inverse() const {
    FieldElement zia = spec_.tw->zeta_pow(-(i64)a_);
    std::vector<FieldElement> s;
    s.reserve(spec_.d);
    for (const auto& c : sigma_) s.push_back(-(zia * c));
    return GroupElem(spec_, std::move(s), -(i64)a_);
  }

  u64 order() const {
    GroupElem cur = *this;
    u64 ord = 1;
    while (!cur.is_identity()) {
      cur = cur * *this;
      ++ord;
      expect(ord <= spec_.order(), errc::inconsistent, "GroupElem::order: ran past group order");
    }
    return ord;
  }

  // enumeration index: a * q^d + base-q digits of sigma
  u64 index() const {
    u64 idx = 0;
    for (u64 i = spec_.d; i-- > 0;) idx = idx * spec_.tw->q + sigma_[i].index();
    return a_ * spec_.qd() + idx;
  }

  bool operator==(const GroupElem& o) const { return a_ == o.a_ && sigma_ == o.sigma_; }
  bool operator<(const GroupElem& o) const { return index() < o.index(); }

 private:
  GroupSpec spec_;
  std::vector<FieldElement> sigma_;
  u64 a_ = 0;
};

inline GroupElem group_identity(const GroupSpec& spec) {
  return GroupElem(spec, std::vector<FieldElement>(spec.d, spec.tw->zero()), 0);
}

inline GroupElem group_element_at(const GroupSpec& spec, u64 idx) {
  expect(idx < spec.order(), errc::usage, "group_element_at: index out of range");
  u64 a = idx / spec.qd();
  u64 rem = idx % spec.qd();
  std::vector<FieldElement> s;
  s.reserve(spec.d);
  for (u64 i = 0; i < spec.d; ++i) {
    s.push_back(spec.tw->mid_element_at(rem % spec.tw->q));
    rem /= spec.tw->q;
  }
  return GroupElem(spec, std::move(s), (i64)a);
}

inline std::vector<GroupElem> all_group_elements(const GroupSpec& spec) {
  std::vector<GroupElem> out;
  out.reserve(spec.order());
  for (u64 i = 0; i < spec.order(); ++i) out.push_back(group_element_at(spec, i));
  return out;
}

// standard basis vector e_i of H as a group element
inline GroupElem h_basis_element(const GroupSpec& spec, u64 i) {
  expect(i < spec.d, errc::usage, "h_basis_element: index out of range");
  std::vector<FieldElement> s(spec.d, spec.tw->zero());
  s[i] = spec.tw->one();
  return GroupElem(spec, std::move(s), 0);
}

inline GroupElem gamma_element(const GroupSpec& spec) {
  return GroupElem(spec, std::vector<FieldElement>(spec.d, spec.tw->zero()), 1);
}

// The q^d elements with a = 0.  The optional uniqueness scan enumerates all
// subgroups of order q^d generated by p-torsion elements and checks H is the
// only one; feasible for n q^d <= 500.
inline std::vector<GroupElem> sylow_p(const GroupSpec& spec, bool verify_unique = false) {
  expect(spec.order() <= 100000, errc::too_large, "sylow_p: group order beyond 1e5");
  std::vector<GroupElem> H;
  for (u64 i = 0; i < spec.qd(); ++i) H.push_back(group_element_at(spec, i));
  if (verify_unique) {
    expect(spec.order() <= 500, errc::too_large, "sylow_p: uniqueness scan bound is 500");
    auto sorted_indices = [](const std::vector<GroupElem>& v) {
      std::vector<u64> r;
      r.reserve(v.size());
      for (const auto& g : v) r.push_back(g.index());
      std::sort(r.begin(), r.end());
      return r;
    };
    auto closure = [&](std::vector<GroupElem> gens) {
      std::set<u64> seen;
      std::vector<GroupElem> elems{group_identity(spec)};
      seen.insert(elems[0].index());
      std::vector<GroupElem> frontier = elems;
      while (!frontier.empty()) {
        std::vector<GroupElem> next;
        for (const auto& f : frontier)
          for (const auto& g : gens) {
            GroupElem prod = f * g;
            if (seen.insert(prod.index()).second) {
              elems.push_back(prod);
              next.push_back(prod);
            }
            if (elems.size() > spec.qd()) return std::vector<GroupElem>{};  // too big already
          }
        frontier = std::move(next);
      }
      return elems;
    };
    // all p-torsion elements (order p or 1), found by honest order computation
    std::vector<GroupElem> ptors;
    for (const auto& g : all_group_elements(spec))
      if (g.is_identity() || g.order() == spec.tw->p) ptors.push_back(g);
    u64 k = 0;
    while (checked_pow_u64(spec.tw->p, k) < spec.qd()) ++k;  // generators needed
    std::set<std::vector<u64>> found;
    std::vector<u64> pick;
    std::function<void(u64)> rec = [&](u64 from) {
      if (!pick.empty()) {
        std::vector<GroupElem> gens;
        for (u64 idx : pick) gens.push_back(ptors[idx]);
        auto cl = closure(gens);
        if (cl.size() == spec.qd()) found.insert(sorted_indices(cl));
      }
      if (pick.size() == k) return;
      for (u64 i = from; i < ptors.size(); ++i) {
        pick.push_back(i);
        rec(i + 1);
        pick.pop_back();
      }
    };
    rec(0);
    expect(found.size() == 1 && *found.begin() == sorted_indices(H), errc::verification_failed,
           "sylow_p: subgroup of order q^d is not unique");
  }
  return H;
}

struct TorusPart {
  std::vector<GroupElem> elements;  // sorted by index
  GroupElem generator;              // gamma' with gamma' sigma gamma'^-1 = zeta sigma
  std::vector<u64> sorted_indices;
};

// all subgroups of order n; each is cyclic, found by single-generator closures
inline std::vector<TorusPart> torus_parts(const GroupSpec& spec) {
  expect(spec.order() <= 10000, errc::too_large, "torus_parts: group order beyond 1e4");
  expect(spec.n() > 1, errc::usage, "torus_parts: n > 1 required");
  std::set<std::vector<u64>> seen;
  std::vector<TorusPart> out;
  for (const auto& g : all_group_elements(spec)) {
    if (g.is_identity() || g.order() != spec.n()) continue;
    std::vector<GroupElem> elems{group_identity(spec)};
    GroupElem cur = g;
    while (!cur.is_identity()) {
      elems.push_back(cur);
      cur = cur * g;
    }
    std::vector<u64> key;
    for (const auto& e : elems) key.push_back(e.index());
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second) continue;

    // canonical generator: gamma' with gamma' sigma gamma'^-1 = zeta sigma on basis
    GroupElem gen = g;
    bool found_gen = false;
    for (const auto& cand : elems) {
      if (cand.is_identity()) continue;
      bool ok = true;
      for (u64 i = 0; i < spec.d && ok; ++i) {
        GroupElem sigma = h_basis_element(spec, i);
        GroupElem conj = cand * sigma * cand.inverse();
        std::vector<FieldElement> zs;
        for (const auto& c : sigma.sigma()) zs.push_back(spec.tw->zeta() * c);
        ok = conj == GroupElem(spec, zs, 0);
      }
      if (ok) {
        gen = cand;
        found_gen = true;
        break;
      }
    }
    expect(found_gen || spec.d == 0, errc::verification_failed,
           "torus_parts: no generator acts as multiplication by zeta");
    std::sort(elems.begin(), elems.end());
    out.push_back(TorusPart{elems, gen, key});
  }
  return out;
}

// sigma in H with sigma T sigma^-1 = T', by the explicit formula
// sigma = (1 - zeta)^{-1} tau where tau gamma generates T'.
inline GroupElem conjugating_element(const GroupSpec& spec, const TorusPart& T, const TorusPart& Tp) {
  if (T.sorted_indices == Tp.sorted_indices)
    return group_identity(spec);
  const GroupElem& gamma = T.generator;
  // find tau in H with tau * gamma in T' and generating it
  for (u64 i = 0; i < spec.qd(); ++i) {
    GroupElem tau = group_element_at(spec, i);
    GroupElem cand = tau * gamma;
    if (!std::binary_search(Tp.sorted_indices.begin(), Tp.sorted_indices.end(), cand.index()))
      continue;
    if (cand.order() != spec.n()) continue;
    FieldElement coef = (spec.tw->one() - spec.tw->zeta()).inv();
    std::vector<FieldElement> s;
    for (const auto& c : tau.sigma()) s.push_back(coef * c);
    GroupElem sig(spec, std::move(s), 0);
    // verify by direct conjugation
    bool ok = true;
    for (const auto& t : T.elements) {
      GroupElem conj = sig * t * sig.inverse();
      if (!std::binary_search(Tp.sorted_indices.begin(), Tp.sorted_indices.end(), conj.index())) {
        ok = false;
        break;
      }
    }
    if (ok) return sig;
  }
  fail(errc::not_conjugate, "conjugating_element: no conjugator found");
}

// the automorphism (sigma, a) -> (h(sigma), a) induced by an invertible
// F_q-linear map h on H, given as a d x d matrix acting by h(e_j) = column j
class GroupAutomorphism {
 public:
  GroupAutomorphism(GroupSpec spec, std::vector<std::vector<FieldElement>> h)
      : spec_(std::move(spec)), h_(std::move(h)) {
    u64 d = spec_.d;
    expect(h_.size() == d, errc::not_linear, "extend_automorphism: matrix must be d x d");
    for (auto& row : h_) expect(row.size() == d, errc::not_linear, "extend_automorphism: matrix must be d x d");
    expect(invertible(), errc::not_linear, "extend_automorphism: matrix is singular");
  }

  GroupElem operator()(const GroupElem& g) const {
    std::vector<FieldElement> s(spec_.d, spec_.tw->zero());
    for (u64 i = 0; i < spec_.d; ++i)
      for (u64 j = 0; j < spec_.d; ++j) s[i] = s[i] + h_[i][j] * g.sigma()[j];
    return GroupElem(spec_, std::move(s), (i64)g.a());
  }

 private:
  bool invertible() const {
    auto m = h_;
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

  GroupSpec spec_;
  std::vector<std::vector<FieldElement>> h_;
};

inline GroupAutomorphism extend_automorphism(const GroupSpec& spec,
                                             std::vector<std::vector<FieldElement>> h) {
  return GroupAutomorphism(spec, std::move(h));
}

}  // namespace ramal
