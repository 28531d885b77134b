#pragma once

#include <cstdint>
#include <numeric>
#include <tuple>
#include <utility>
#include <vector>

#include "x0n/error.hpp"

namespace x0n {

using i64 = std::int64_t;
using i128 = __int128;

/// Least nonnegative residue of a modulo n (n > 0).
inline i64 mod(i64 a, i64 n) {
  i64 r = a % n;
  return r < 0 ? r + n : r;
}

inline i64 gcd(i64 a, i64 b) { return std::gcd(a, b); }

inline i64 checked_add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) throw Error("overflow", "int64 addition");
  return r;
}

inline i64 checked_mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error("overflow", "int64 multiplication");
  return r;
}

inline i64 narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw Error("overflow", "value exceeds int64");
  return static_cast<i64>(v);
}

struct ExtGcd {
  i64 g;
  i64 x;
  i64 y;
};

/// g = gcd(a, b) >= 0 and a*x + b*y = g.
inline ExtGcd ext_gcd(i64 a, i64 b) {
  i64 old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    i64 q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

/// Inverse of a modulo n; requires gcd(a, n) = 1.
inline i64 inverse_mod(i64 a, i64 n) {
  auto e = ext_gcd(mod(a, n), n);
  if (e.g != 1) throw Error("invalid-argument", "element is not a unit");
  return mod(e.x, n);
}

struct PrimePower {
  i64 prime;
  int exponent;
};

/// Trial-division factorization, primes ascending.
inline std::vector<PrimePower> factorize(i64 n) {
  std::vector<PrimePower> out;
  for (i64 p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

inline int valuation(i64 n, i64 p) {
  int v = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline i64 ipow(i64 base, int exp) {
  i64 r = 1;
  while (exp-- > 0) r = checked_mul(r, base);
  return r;
}

/// Positive divisors of n, ascending.
inline std::vector<i64> divisors(i64 n) {
  std::vector<i64> small, large;
  for (i64 d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

inline i64 euler_phi(i64 n) {
  i64 r = n;
  for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

/// Kronecker symbol (a/n) for n >= 1.
inline int kronecker(i64 a, i64 n) {
  if (n <= 0) throw Error("invalid-argument", "kronecker symbol needs n >= 1");
  int result = 1;
  while (n % 2 == 0) {
    n /= 2;
    i64 r = mod(a, 8);
    if (r == 0 || r == 2 || r == 4 || r == 6) return 0;
    if (r == 3 || r == 5) result = -result;
  }
  // Jacobi symbol for odd n.
  a = mod(a, n);
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      i64 r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

}  // namespace x0n
