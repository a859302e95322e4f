#pragma once

#include <cstdint>
#include <limits>

#include "ramal/errors.hpp"

namespace ramal {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline u64 gcd_u64(u64 a, u64 b) {
  while (b) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// a^e with overflow detection; desk-scale guard, not a bignum substitute.
inline u64 checked_pow_u64(u64 a, u64 e) {
  u64 r = 1;
  while (e) {
    if (e & 1) {
      expect(a == 0 || r <= std::numeric_limits<u64>::max() / (a ? a : 1), errc::too_large,
             "checked_pow_u64: overflow");
      r *= a;
    }
    e >>= 1;
    if (e) {
      expect(a <= std::numeric_limits<u64>::max() / (a ? a : 1), errc::too_large,
             "checked_pow_u64: overflow");
      a *= a;
    }
  }
  return r;
}

inline u64 pow_mod_u64(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = (u64)((i128)r * a % m);
    a = (u64)((i128)a * a % m);
    e >>= 1;
  }
  return r;
}

// Multiplicative order of a modulo n; requires gcd(a, n) = 1.
inline u64 mult_order_mod(u64 a, u64 n) {
  expect(n >= 1, errc::usage, "mult_order_mod: n >= 1");
  if (n == 1) return 1;
  expect(gcd_u64(a % n, n) == 1, errc::usage, "mult_order_mod: not coprime");
  u64 x = a % n;
  u64 ord = 1;
  u64 cur = x;
  while (cur != 1) {
    cur = (u64)((i128)cur * x % n);
    ++ord;
    expect(ord <= n, errc::inconsistent, "mult_order_mod: order search overran modulus");
  }
  return ord;
}

// floor(sqrt(n)) by Newton steps on integers.
inline u64 isqrt_u64(u64 n) {
  if (n < 2) return n;
  u64 x = n;
  u64 y = (x + 1) / 2;
  while (y < x) {
    x = y;
    y = (x + n / x) / 2;
  }
  while ((i128)(x + 1) * (x + 1) <= (i128)n) ++x;
  while ((i128)x * x > (i128)n) --x;
  return x;
}

inline bool is_perfect_square_u64(u64 n) {
  u64 r = isqrt_u64(n);
  return r * r == n;
}

}  // namespace ramal
