#pragma once

#include <vector>

#include "x0n/arith.hpp"

namespace x0n::gamma0 {

/// Galois orbit of cusps of X0(N) with a fixed denominator d | N.
struct CuspOrbit {
  i64 denominator;
  i64 degree;  // phi(gcd(d, N/d))

  bool operator==(const CuspOrbit&) const = default;
};

struct Gamma0Profile {
  i64 level = 1;
  i64 index = 1;
  i64 nu2 = 0;
  i64 nu3 = 0;
  std::vector<CuspOrbit> cusp_orbits;
  i64 genus = 0;

  /// Number of geometric cusps.
  i64 cusp_count() const {
    i64 total = 0;
    for (const auto& o : cusp_orbits) total += o.degree;
    return total;
  }
  i64 rational_cusp_count() const {
    i64 n = 0;
    for (const auto& o : cusp_orbits) n += (o.degree == 1);
    return n;
  }
};

inline void require_level(i64 level) {
  if (level < 1) throw Error("invalid-argument", "level must be positive");
}

/// [PSL2(Z) : Gamma0(N)] = N * prod_{p | N} (1 + 1/p).
inline i64 index(i64 level) {
  require_level(level);
  i64 r = level;
  for (auto [p, e] : factorize(level)) r = r / p * (p + 1);
  return r;
}

inline i64 elliptic_points_order2(i64 level) {
  if (level % 4 == 0) return 0;
  i64 r = 1;
  for (auto [p, e] : factorize(level)) r *= 1 + kronecker(-4, p);
  return r;
}

inline i64 elliptic_points_order3(i64 level) {
  if (level % 9 == 0) return 0;
  i64 r = 1;
  for (auto [p, e] : factorize(level)) r *= 1 + kronecker(-3, p);
  return r;
}

inline std::vector<CuspOrbit> cusp_orbits(i64 level) {
  require_level(level);
  std::vector<CuspOrbit> out;
  for (i64 d : divisors(level)) out.push_back({d, euler_phi(gcd(d, level / d))});
  return out;
}

inline Gamma0Profile profile(i64 level) {
  Gamma0Profile p;
  p.level = level;
  p.index = index(level);
  p.nu2 = elliptic_points_order2(level);
  p.nu3 = elliptic_points_order3(level);
  p.cusp_orbits = cusp_orbits(level);
  // 12(g - 1) = index - 3 nu2 - 4 nu3 - 6 cusps
  i64 twelve_g = 12 + p.index - 3 * p.nu2 - 4 * p.nu3 - 6 * p.cusp_count();
  if (twelve_g < 0 || twelve_g % 12 != 0)
    throw Error("invariant", "genus formula is not a nonnegative integer");
  p.genus = twelve_g / 12;
  return p;
}

inline i64 genus(i64 level) { return profile(level).genus; }

/// Coefficient of t^d in prod over orbits of 1 / (1 - t^deg): the number of
/// effective rational cuspidal divisors of degree d.
inline i64 count_cuspidal_divisors(i64 level, i64 degree) {
  if (degree < 0) throw Error("invalid-argument", "degree must be nonnegative");
  std::vector<i64> coeff(static_cast<std::size_t>(degree) + 1, 0);
  coeff[0] = 1;
  for (const auto& orbit : cusp_orbits(level))
    for (i64 j = orbit.degree; j <= degree; ++j)
      coeff[j] = checked_add(coeff[j], coeff[j - orbit.degree]);
  return coeff[degree];
}

/// Least integer strictly greater than (325 / 2^15) * index(N); a lower bound
/// for the complex gonality of X0(N).
inline i64 abramovich_lower_bound(i64 level) {
  i128 scaled = static_cast<i128>(325) * index(level);
  return narrow(scaled / 32768 + 1);
}

/// All m | N with gcd(m, N/m) = 1, ascending.
inline std::vector<i64> atkin_lehner_divisors(i64 level) {
  require_level(level);
  std::vector<i64> out;
  for (i64 m : divisors(level))
    if (gcd(m, level / m) == 1) out.push_back(m);
  return out;
}

}  // namespace x0n::gamma0
