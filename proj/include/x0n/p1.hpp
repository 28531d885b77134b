#pragma once

#include <compare>
#include <optional>
#include <vector>

#include "x0n/arith.hpp"
#include "x0n/mat2.hpp"

namespace x0n::modsym {

/// Element (c : d) of P^1(Z/N) in canonical form: the lexicographically least
/// pair among all unit multiples, residues in [0, N).
struct P1Class {
  i64 c = 0;
  i64 d = 1;

  auto operator<=>(const P1Class&) const = default;
};

inline std::vector<i64> units_mod(i64 level) {
  std::vector<i64> out;
  for (i64 u = 0; u < level; ++u)
    if (gcd(u, level) == 1) out.push_back(u);
  if (level == 1) out = {0};
  return out;
}

/// Canonical representative of (c : d); O(N) scan over units.
inline P1Class p1_normalize(i64 level, i64 c, i64 d) {
  if (level < 1) throw Error("invalid-argument", "level must be positive");
  c = mod(c, level);
  d = mod(d, level);
  if (gcd(gcd(c, d), level) != 1)
    throw Error("invalid-argument", "gcd(c, d, N) > 1: not a point of P1(Z/N)");
  P1Class best{c, d};
  for (i64 u : units_mod(level)) {
    P1Class cand{c * u % level, d * u % level};
    if (cand < best) best = cand;
  }
  return best;
}

/// Enumeration of P^1(Z/N) with O(1) lookup of arbitrary pairs.
class P1List {
 public:
  explicit P1List(i64 level) : level_(level), table_(static_cast<std::size_t>(level * level), -1) {
    if (level < 1) throw Error("invalid-argument", "level must be positive");
    const auto units = units_mod(level);
    for (i64 c = 0; c < level; ++c) {
      for (i64 d = 0; d < level; ++d) {
        if (gcd(gcd(c, d), level) != 1 || table_[slot(c, d)] >= 0) continue;
        const int k = static_cast<int>(classes_.size());
        classes_.push_back({c, d});
        for (i64 u : units) table_[slot(c * u % level, d * u % level)] = k;
      }
    }
  }

  i64 level() const { return level_; }
  std::size_t size() const { return classes_.size(); }
  const P1Class& operator[](std::size_t i) const { return classes_[i]; }
  const std::vector<P1Class>& classes() const { return classes_; }

  std::optional<std::size_t> find(i64 c, i64 d) const {
    int k = table_[slot(mod(c, level_), mod(d, level_))];
    if (k < 0) return std::nullopt;
    return static_cast<std::size_t>(k);
  }

  std::size_t index(i64 c, i64 d) const {
    auto k = find(c, d);
    if (!k) throw Error("invalid-argument", "gcd(c, d, N) > 1: not a point of P1(Z/N)");
    return *k;
  }

  /// (c : d) * S = (d : -c), S = [[0, -1], [1, 0]].
  std::size_t apply_s(std::size_t i) const { return index(classes_[i].d, -classes_[i].c); }

  /// (c : d) * T = (d : -c - d), T = [[0, -1], [1, -1]] of order 3.
  std::size_t apply_t(std::size_t i) const {
    return index(classes_[i].d, -classes_[i].c - classes_[i].d);
  }

  /// Some gamma in SL2(Z) whose bottom row reduces to (c : d).
  Mat2 lift_to_sl2z(std::size_t i) const { return lift_to_sl2z(level_, classes_[i].c, classes_[i].d); }

  static Mat2 lift_to_sl2z(i64 level, i64 c, i64 d) {
    if (level == 1) return {1, 0, 0, 1};
    c = mod(c, level);
    d = mod(d, level);
    if (c == 0) c = level;
    // gcd(c, d + tN) = 1 for some 0 <= t < c since gcd(c, d, N) = 1.
    for (i64 t = 0;; ++t) {
      i64 dd = d + t * level;
      auto e = ext_gcd(c, dd);
      if (e.g == 1) {
        // a*dd - b*c = 1  with a = e.y, b = -e.x
        return {e.y, -e.x, c, dd};
      }
      if (t > c) throw Error("invariant", "no SL2(Z) lift found");
    }
  }

 private:
  std::size_t slot(i64 c, i64 d) const { return static_cast<std::size_t>(c * level_ + d); }

  i64 level_;
  std::vector<int> table_;
  std::vector<P1Class> classes_;
};

}  // namespace x0n::modsym
