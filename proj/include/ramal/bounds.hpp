#pragma once

// Genus computation for covers with tame and restrained branch points, and
// the automorphism-bound arithmetic.  Every square-root comparison is decided
// exactly by squaring over integers; non-square radicands produce explicit
// ceiling-mode upper bounds, never floating point.

#include <algorithm>
#include <functional>
#include <vector>

#include "ramal/errors.hpp"
#include "ramal/int_util.hpp"

namespace ramal {

inline i128 isqrt_i128(i128 n) {
  expect(n >= 0, errc::usage, "isqrt_i128: negative");
  if (n < 2) return n;
  i128 x = n, y = (x + 1) / 2;
  while (y < x) {
    x = y;
    y = (x + n / x) / 2;
  }
  while ((x + 1) * (x + 1) <= n) ++x;
  while (x * x > n) --x;
  return x;
}

struct BranchPoint {
  enum class Kind { tame, restrained };
  Kind kind;
  u64 e = 0;            // tame ramification index
  u64 n = 0, d = 0, q = 0;  // restrained type data

  static BranchPoint tame(u64 e) { return {Kind::tame, e, 0, 0, 0}; }
  static BranchPoint restrained(u64 n, u64 d, u64 q) { return {Kind::restrained, 0, n, d, q}; }
  u64 decomposition_order() const {
    return kind == Kind::tame ? e : n * checked_pow_u64(q, d);
  }
};

struct CoverSpec {
  i64 g_base = 0;
  u64 group_order = 1;
  std::vector<BranchPoint> branch;
};

// 2g - 2 = |G| (2g_Y - 2) + sum (|G|/|G_x|) d_x, with d_x = e - 1 at tame
// points and d_x = (n q^d - 1) + (q^d - 1) at restrained points (G_2 = 0).
inline i64 rhz_genus(const CoverSpec& cover) {
  expect(cover.group_order >= 1, errc::usage, "rhz_genus: group order >= 1");
  i128 total = (i128)cover.group_order * (2 * (i128)cover.g_base - 2);
  for (const auto& b : cover.branch) {
    u64 gx = b.decomposition_order();
    expect(gx >= 1 && cover.group_order % gx == 0, errc::non_integral_genus,
           "rhz_genus: decomposition group order does not divide |G|");
    i128 dx;
    if (b.kind == BranchPoint::Kind::tame) {
      dx = (i128)b.e - 1;
    } else {
      expect(gcd_u64(b.n, b.q) == 1 || b.n == 1, errc::usage,
             "rhz_genus: restrained point needs gcd(n, p) = 1");
      u64 qd = checked_pow_u64(b.q, b.d);
      dx = (i128)(b.n * qd - 1) + (i128)(qd - 1);
    }
    total += (i128)(cover.group_order / gx) * dx;
  }
  expect(total % 2 == 0, errc::non_integral_genus, "rhz_genus: 2g - 2 is odd");
  i128 g = total / 2 + 1;
  expect(g >= 0, errc::non_integral_genus, "rhz_genus: negative genus");
  expect(g <= (i128)1 << 62, errc::too_large, "rhz_genus: genus overflow");
  return (i64)g;
}

inline u64 nakajima_bound(u64 g) {
  expect(g >= 2, errc::bad_genus, "nakajima_bound: g >= 2");
  return 84 * g * (g - 1);
}

inline u64 hurwitz_linear_bound(u64 g) {
  expect(g >= 2, errc::bad_genus, "hurwitz_linear_bound: g >= 2");
  return 84 * (g - 1);
}

struct ExactOrCeiling {
  u64 value = 0;
  bool exact = true;  // false: value is the integer ceiling of the real bound
};

// 16 g^4 + 56 g^3 + 32 g^2 + 4 g + 4 sqrt(1+8g) (4 g^3 + 4 g^2 + g)
inline ExactOrCeiling stichtenoth_bound(u64 g) {
  expect(g >= 2, errc::bad_genus, "stichtenoth_bound: g >= 2");
  i128 G = g;
  i128 poly = 16 * G * G * G * G + 56 * G * G * G + 32 * G * G + 4 * G;
  i128 T = 4 * G * G * G + 4 * G * G + G;
  i128 rad = (1 + 8 * G) * 16 * T * T;  // (4 sqrt(1+8g) T)^2
  i128 r = isqrt_i128(rad);
  bool exact = (r * r == rad);
  i128 root_term = exact ? r : r + 1;  // ceiling keeps it an upper bound
  i128 val = poly + root_term;
  expect(val <= (i128)~0ull >> 1, errc::too_large, "stichtenoth_bound: overflow");
  return {(u64)val, exact};
}

struct FTildeValue {
  u64 value = 0;
  bool exact = true;
  bool second_term = false;  // true when 2 sqrt(g) (sqrt(g)-1)^2 is the max
};

// exact comparator: 2 sqrt(g)(sqrt(g)-1)^2 > 84(g-1)  iff  g(g+1)^2 > 4(22g-21)^2
inline bool f_tilde_second_term_wins(u64 g) {
  i128 G = g;
  return G * (G + 1) * (G + 1) > 4 * (22 * G - 21) * (22 * G - 21);
}

// max{ 84(g-1), 2 sqrt(g) (sqrt(g)-1)^2 }
inline FTildeValue f_tilde(u64 g) {
  expect(g >= 2, errc::bad_genus, "f_tilde: g >= 2");
  if (!f_tilde_second_term_wins(g)) return {84 * (g - 1), true, false};
  // second term: 2 (g+1) sqrt(g) - 4g, exact iff g is a perfect square
  i128 G = g;
  i128 rad = 4 * G * (G + 1) * (G + 1);
  i128 r = isqrt_i128(rad);
  bool exact = (r * r == rad);
  i128 val = (exact ? r : r + 1) - 4 * G;
  return {(u64)val, exact, true};
}

// least g >= 2 where the second term strictly exceeds 84(g-1); deterministic
// integer scan with the squared comparator
inline u64 f_tilde_crossover(u64 limit = 1u << 20) {
  for (u64 g = 2; g <= limit; ++g)
    if (f_tilde_second_term_wins(g)) return g;
  fail(errc::inconsistent, "f_tilde_crossover: no crossover below limit");
}

struct ImmobileBranch {
  bool wild = false;
  u64 e = 0;                    // tame ramification index (ignored for wild)
  u64 n = 0, s = 0, t = 0;      // wild data: n_x, s_x, t_x
};

struct ImmobileDescriptor {
  bool restrained = false;
  u64 p = 0;
  i64 quotient_genus = -1;
  std::vector<ImmobileBranch> branch;
};

// conjunction of the five conditions: restrained quotient P^1, two branch
// points or (p odd and profile (2,2,.)), a wild point with n_x != 1, and
// s_x = t_x at every wild point
inline bool is_immobile(const ImmobileDescriptor& desc) {
  expect(desc.p >= 2 && is_prime_u64(desc.p), errc::incomplete_descriptor,
         "is_immobile: characteristic p missing or not prime");
  expect(!desc.branch.empty(), errc::incomplete_descriptor, "is_immobile: no branch data");
  for (const auto& b : desc.branch) {
    if (b.wild) {
      expect(b.n >= 1 && b.t >= 1, errc::incomplete_descriptor,
             "is_immobile: wild point needs (n_x, s_x, t_x)");
      expect(gcd_u64(b.n, desc.p) == 1, errc::incomplete_descriptor,
             "is_immobile: wild point with p | n_x");
      if (b.n > 1)
        expect(b.s == mult_order_mod(desc.p, b.n), errc::incomplete_descriptor,
               "is_immobile: s_x is not the order of p mod n_x");
    } else {
      expect(b.e >= 2, errc::incomplete_descriptor, "is_immobile: tame point needs e >= 2");
    }
  }

  if (!desc.restrained) return false;                  // (i)
  if (desc.quotient_genus != 0) return false;          // (ii)
  // (iii): two points, or p != 2 and three points with indices (2,2,.)
  auto ram_index = [&](const ImmobileBranch& b) {
    return b.wild ? b.n * checked_pow_u64(desc.p, b.t) : b.e;
  };
  if (desc.branch.size() == 2) {
    // ok
  } else if (desc.branch.size() == 3 && desc.p != 2) {
    std::vector<u64> idx;
    for (const auto& b : desc.branch) idx.push_back(ram_index(b));
    std::sort(idx.begin(), idx.end());
    if (!(idx[0] == 2 && idx[1] == 2)) return false;   // third entry unconstrained
  } else {
    return false;
  }
  // (iv)
  bool wild_with_n = false;
  for (const auto& b : desc.branch)
    if (b.wild && b.n != 1) wild_with_n = true;
  if (!wild_with_n) return false;
  // (v)
  for (const auto& b : desc.branch)
    if (b.wild && b.s != b.t) return false;
  return true;
}

// case II: |Aut| <= 24 delta with delta <= 3g-3, hence <= 72(g-1)
inline u64 satz_b_case_ii(u64 g, u64 delta) {
  expect(g >= 2, errc::bad_genus, "satz_b_case_ii: g >= 2");
  expect(delta >= 1, errc::usage, "satz_b_case_ii: delta >= 1");
  expect(delta <= 3 * g - 3, errc::hypothesis_violated,
         "satz_b_case_ii: delta exceeds 3g - 3");
  return std::min(24 * delta, 72 * (g - 1));
}

// case III: (g-1)/(gtilde-1) * f(gtilde), requiring f(x)/(x-1) nondecreasing
// on [gtilde, g] (checked by cross multiplication)
inline u64 satz_b_case_iii(u64 g, u64 gtilde, const std::function<u64(u64)>& f) {
  expect(gtilde >= 2, errc::bad_genus, "satz_b_case_iii: gtilde >= 2");
  expect(g >= gtilde, errc::usage, "satz_b_case_iii: g >= gtilde");
  for (u64 x = gtilde; x + 1 <= g; ++x)
    expect((i128)f(x + 1) * (x - 1) >= (i128)f(x) * x, errc::hypothesis_violated,
           "satz_b_case_iii: f(g)/(g-1) is not nondecreasing on [gtilde, g]");
  return (u64)(((i128)(g - 1) * f(gtilde)) / (gtilde - 1));
}

// g - 1 = n_gtilde (gtilde - 1) - n_0 + delta; every component meets a node,
// so delta >= n_0
inline i64 nodal_genus_check(u64 n_gtilde, u64 gtilde, u64 n0, u64 delta) {
  expect(delta >= n0, errc::inconsistent, "nodal_genus_check: n_0 exceeds delta");
  i128 g = (i128)n_gtilde * ((i128)gtilde - 1) - (i128)n0 + (i128)delta + 1;
  expect(g >= 0, errc::inconsistent, "nodal_genus_check: negative genus");
  return (i64)g;
}

struct BoundReport {
  u64 g = 0;
  u64 hurwitz = 0;
  u64 nakajima = 0;
  ExactOrCeiling stichtenoth;
  FTildeValue f_tilde_v;
};

inline BoundReport bound_report(u64 g) {
  return {g, hurwitz_linear_bound(g), nakajima_bound(g), stichtenoth_bound(g), f_tilde(g)};
}

}  // namespace ramal
