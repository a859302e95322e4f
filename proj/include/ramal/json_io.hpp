#pragma once

// JSON interchange: elements as F_p coefficient vectors (constant term
// first), towers with their moduli, and the report structures.  Integers that
// may exceed 2^53 are emitted as decimal strings.

#include <json.hpp>

#include "ramal/bounds.hpp"
#include "ramal/degeneration.hpp"
#include "ramal/dickson.hpp"
#include "ramal/restrained.hpp"

namespace ramal {

using json = nlohmann::json;

inline json json_u64(u64 v) {
  if (v > (1ull << 53)) return std::to_string(v);
  return v;
}

inline json element_to_json(const FieldElement& x) {
  json a = json::array();
  for (Coord c : x.coords()) a.push_back(c);
  return a;
}

inline FieldElement element_from_json(const TowerPtr& tw, const json& j) {
  expect(j.is_array(), errc::usage, "element_from_json: expected array");
  std::vector<Coord> c;
  for (const auto& v : j) c.push_back(v.get<Coord>());
  return FieldElement(tw, std::move(c));
}

inline json tower_to_json(const TowerPtr& tw) {
  json j;
  j["p"] = tw->p;
  j["s"] = tw->s;
  j["m"] = tw->m;
  if (tw->n) j["n"] = tw->n;
  j["mid_poly"] = tw->mid_poly;
  json top = json::array();
  for (const auto& c : tw->top_poly) top.push_back(c);
  j["top_poly"] = top;
  return j;
}

inline json linpoly_to_json(const LinearizedPoly& P) {
  json j;
  j["q"] = P.tower()->q;
  json coeffs = json::array();
  for (const auto& c : P.coeffs()) coeffs.push_back(element_to_json(c));
  j["coeffs"] = coeffs;
  return j;
}

inline json subspace_to_json(const Subspace& V) {
  json j;
  json basis = json::array();
  for (const auto& b : V.basis()) basis.push_back(element_to_json(b));
  j["basis"] = basis;
  return j;
}

inline json series_to_json(const TruncSeries& f) {
  json j;
  j["precision"] = f.precision();
  if (f.is_zero_to_precision()) {
    j["valuation"] = nullptr;
    j["coeffs"] = json::array();
    return j;
  }
  j["valuation"] = f.valuation();
  json coeffs = json::array();
  for (i64 k = f.valuation(); k < f.precision(); ++k) coeffs.push_back(element_to_json(f.coeff(k)));
  j["coeffs"] = coeffs;
  return j;
}

inline json multipoly_to_json(const MultiPoly& p) {
  // canonical order: descending graded lex
  json terms = json::array();
  std::vector<std::pair<std::vector<u64>, FieldElement>> items(p.terms().begin(), p.terms().end());
  for (auto it = items.rbegin(); it != items.rend(); ++it) {
    json t;
    t["exp"] = it->first;
    t["coeff"] = element_to_json(it->second);
    terms.push_back(t);
  }
  return terms;
}

inline json group_elem_to_json(const GroupElem& g) {
  json j;
  json sigma = json::array();
  for (const auto& c : g.sigma()) sigma.push_back(element_to_json(c));
  j["sigma"] = sigma;
  j["a"] = g.a();
  return j;
}

inline json mobius_to_json(const MobiusMap& m) {
  json j;
  j["a"] = element_to_json(m.a);
  j["b"] = element_to_json(m.b);
  j["c"] = element_to_json(m.c);
  j["e"] = element_to_json(m.e);
  return j;
}

inline json omega_to_json(const OmegaInvariant& w) {
  json j;
  j["n"] = w.n;
  j["d"] = w.d;
  j["canonical_indices"] = w.canonical_indices;
  return j;
}

inline CoverSpec cover_from_json(const json& j) {
  CoverSpec cover;
  expect(j.contains("g_base") && j.contains("group_order") && j.contains("branch"), errc::usage,
         "cover_from_json: need g_base, group_order, branch");
  cover.g_base = j.at("g_base").get<i64>();
  cover.group_order = j.at("group_order").get<u64>();
  for (const auto& b : j.at("branch")) {
    std::string kind = b.at("kind").get<std::string>();
    if (kind == "tame") {
      cover.branch.push_back(BranchPoint::tame(b.at("e").get<u64>()));
    } else if (kind == "restrained") {
      cover.branch.push_back(
          BranchPoint::restrained(b.at("n").get<u64>(), b.at("d").get<u64>(), b.at("q").get<u64>()));
    } else {
      fail(errc::usage, "cover_from_json: unknown branch kind " + kind);
    }
  }
  return cover;
}

inline ImmobileDescriptor immobile_from_json(const json& j) {
  ImmobileDescriptor d;
  expect(j.contains("restrained") && j.contains("p") && j.contains("quotient_genus") &&
             j.contains("branch_points"),
         errc::incomplete_descriptor,
         "immobile_from_json: need restrained, p, quotient_genus, branch_points");
  d.restrained = j.at("restrained").get<bool>();
  d.p = j.at("p").get<u64>();
  d.quotient_genus = j.at("quotient_genus").get<i64>();
  for (const auto& b : j.at("branch_points")) {
    ImmobileBranch br;
    br.wild = b.at("wild").get<bool>();
    if (br.wild) {
      br.n = b.value("n", (u64)0);
      br.s = b.value("s", (u64)0);
      br.t = b.value("t", (u64)0);
    } else {
      br.e = b.value("e", (u64)0);
    }
    d.branch.push_back(br);
  }
  return d;
}

inline json bound_report_to_json(const BoundReport& r) {
  json j;
  j["g"] = r.g;
  j["hurwitz"] = json_u64(r.hurwitz);
  j["nakajima"] = json_u64(r.nakajima);
  j["stichtenoth"] = json_u64(r.stichtenoth.value);
  j["stichtenoth_mode"] = r.stichtenoth.exact ? "exact" : "ceiling";
  j["f_tilde"] = json_u64(r.f_tilde_v.value);
  j["f_tilde_mode"] = r.f_tilde_v.exact ? "exact" : "ceiling";
  j["f_tilde_term"] = r.f_tilde_v.second_term ? "sqrt" : "linear";
  return j;
}

inline json fiber_report_to_json(const FiberReport& r) {
  json j;
  j["component_count"] = r.component_count;
  j["intersection_rho_indices"] = r.intersection_rho_indices;
  j["horizontal_type"] = {{"n", r.horizontal_n}, {"d", r.horizontal_d}};
  j["normal_crossings"] = r.normal_crossings;
  json comps = json::array();
  for (const auto& c : r.components) {
    json cj;
    cj["kind"] = c.kind;
    if (c.kind == "horizontal") cj["rho_index"] = c.rho_index;
    cj["filtration"] = c.filtration;
    comps.push_back(cj);
  }
  j["components"] = comps;
  return j;
}

inline json inertia_report_to_json(const InertiaReport& r) {
  json j;
  j["group_order"] = r.group_order;
  j["vertical_setwise_stabilizer_order"] = r.vertical_setwise_stabilizer_order;
  j["vertical_pointwise_fixing_order"] = r.vertical_pointwise_fixing_order;
  j["vertical_inertia_order"] = r.vertical_inertia_order;
  j["vertical_inertia_is_gnd1"] = r.vertical_inertia_is_gnd1;
  j["h2_transitive_on_nodes"] = r.h2_transitive_on_nodes;
  j["infinity_fixed_by_all"] = r.infinity_fixed_by_all;
  j["infinity_unique_fixed"] = r.infinity_unique_fixed;
  j["horizontal_pointwise_fixing_order"] = r.horizontal_pointwise_fixing_order;
  j["satz_a_claimed_inertia"] = r.satz_a_claimed_inertia;
  j["satz_a_matches_chart"] = r.satz_a_matches_chart;
  return j;
}

}  // namespace ramal
