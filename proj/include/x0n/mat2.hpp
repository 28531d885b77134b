#pragma once

#include <ostream>

#include "x0n/arith.hpp"

namespace x0n {

/// Point of P^1(Q): num/den in lowest terms with den >= 0; infinity is 1/0.
struct Cusp {
  i64 num = 1;
  i64 den = 0;

  static Cusp make(i64 num, i64 den) {
    if (num == 0 && den == 0) throw Error("invalid-argument", "0/0 is not a cusp");
    i64 g = gcd(num, den);
    num /= g;
    den /= g;
    if (den < 0 || (den == 0 && num < 0)) {
      num = -num;
      den = -den;
    }
    return {num, den};
  }
  static Cusp infinity() { return {1, 0}; }
  static Cusp integer(i64 n) { return {n, 1}; }

  bool is_infinity() const { return den == 0; }
  bool operator==(const Cusp&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const Cusp& c) {
  if (c.is_infinity()) return os << "oo";
  if (c.den == 1) return os << c.num;
  return os << c.num << '/' << c.den;
}

/// Integral 2x2 matrix [[a, b], [c, d]].
struct Mat2 {
  i64 a = 1, b = 0, c = 0, d = 1;

  i64 det() const { return narrow(static_cast<i128>(a) * d - static_cast<i128>(b) * c); }

  Mat2 operator*(const Mat2& o) const {
    auto dot = [](i64 x, i64 y, i64 z, i64 w) {
      return narrow(static_cast<i128>(x) * y + static_cast<i128>(z) * w);
    };
    return {dot(a, o.a, b, o.c), dot(a, o.b, b, o.d), dot(c, o.a, d, o.c), dot(c, o.b, d, o.d)};
  }

  /// Moebius action on a cusp.
  Cusp act(const Cusp& z) const {
    i128 num = static_cast<i128>(a) * z.num + static_cast<i128>(b) * z.den;
    i128 den = static_cast<i128>(c) * z.num + static_cast<i128>(d) * z.den;
    // Reduce in 128 bits before narrowing.
    i128 x = num < 0 ? -num : num, y = den < 0 ? -den : den;
    while (y != 0) {
      i128 t = x % y;
      x = y;
      y = t;
    }
    if (x == 0) throw Error("invalid-argument", "degenerate matrix action");
    return Cusp::make(narrow(num / x), narrow(den / x));
  }

  bool in_gamma0(i64 level) const { return det() == 1 && mod(c, level) == 0; }

  bool operator==(const Mat2&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const Mat2& m) {
  return os << "[[" << m.a << ", " << m.b << "], [" << m.c << ", " << m.d << "]]";
}

}  // namespace x0n
