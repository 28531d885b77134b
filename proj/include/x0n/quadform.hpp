#pragma once

#include <gmpxx.h>

#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "x0n/arith.hpp"

namespace x0n::degrees {

/// scale * sum_{i <= j} c_ij x_i x_j over Z^nvars.
class QuadraticForm {
 public:
  using Monomial = std::pair<int, int>;

  QuadraticForm() = default;
  QuadraticForm(int nvars, std::map<Monomial, i64> coeffs, i64 scale = 1)
      : nvars_(nvars), scale_(scale) {
    if (nvars < 1) throw Error("invalid-argument", "form needs at least one variable");
    if (scale < 1) throw Error("invalid-argument", "scale must be positive");
    for (auto [m, c] : coeffs) {
      auto [i, j] = m;
      if (i > j) std::swap(i, j);
      if (i < 0 || j >= nvars) throw Error("invalid-argument", "monomial index out of range");
      if (c != 0) coeffs_[{i, j}] += c;
    }
  }

  int nvars() const { return nvars_; }
  i64 scale() const { return scale_; }
  const std::map<Monomial, i64>& coefficients() const { return coeffs_; }

  i64 coefficient(int i, int j) const {
    if (i > j) std::swap(i, j);
    auto it = coeffs_.find({i, j});
    return it == coeffs_.end() ? 0 : it->second;
  }

  /// gcd of all coefficients times the scale; divides every value.
  i64 content() const {
    i64 g = 0;
    for (auto [m, c] : coeffs_) g = gcd(g, c);
    return checked_mul(g, scale_);
  }

  /// Value of the unscaled form.
  i64 inner_value(const std::vector<i64>& x) const {
    i128 v = 0;
    for (auto [m, c] : coeffs_) v += static_cast<i128>(c) * x[m.first] * x[m.second];
    return narrow(v);
  }
  i64 value(const std::vector<i64>& x) const { return checked_mul(scale_, inner_value(x)); }

  /// Symmetric Gram matrix G with Q(x) = x^T G x (unscaled).
  std::vector<std::vector<mpq_class>> gram() const {
    std::vector<std::vector<mpq_class>> g(nvars_, std::vector<mpq_class>(nvars_, 0));
    for (auto [m, c] : coeffs_) {
      auto [i, j] = m;
      if (i == j) {
        g[i][i] = c;
      } else {
        g[i][j] = mpq_class(c, 2);
        g[j][i] = g[i][j];
      }
    }
    return g;
  }

  /// Positive leading principal minors of the Gram matrix.
  bool is_positive_definite() const {
    auto g = gram();
    // Gaussian elimination without pivoting: pivots are ratios of successive minors.
    for (int k = 0; k < nvars_; ++k) {
      if (g[k][k] <= 0) return false;
      for (int r = k + 1; r < nvars_; ++r) {
        mpq_class f = g[r][k] / g[k][k];
        for (int c = k; c < nvars_; ++c) g[r][c] -= f * g[k][c];
      }
    }
    return true;
  }

  void require_positive_definite() const {
    if (!is_positive_definite()) throw Error("not-positive-definite", "quadratic form is not positive definite");
  }

  /// Calls visit(x) for every nonzero integer vector with inner value <= bound.
  /// Fincke-Pohst enumeration on the exact rational completion of squares.
  void for_each_short_vector(i64 bound, const std::function<void(const std::vector<i64>&)>& visit) const {
    require_positive_definite();
    if (bound < 1) return;
    const int n = nvars_;
    // q[i][i] diagonal, q[i][j] (i < j) the completion-of-squares coefficients.
    auto q = gram();
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        q[j][i] = q[i][j];
        q[i][j] = q[i][j] / q[i][i];
      }
      for (int k = i + 1; k < n; ++k)
        for (int l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
    }
    std::vector<i64> x(n, 0);
    std::function<void(int, const mpq_class&)> descend = [&](int i, const mpq_class& remaining) {
      if (i < 0) {
        for (i64 xi : x)
          if (xi != 0) {
            visit(x);
            return;
          }
        return;
      }
      mpq_class center = 0;
      for (int j = i + 1; j < n; ++j) center += q[i][j] * x[j];
      const mpq_class radius_sq = remaining / q[i][i];
      const double r = std::sqrt(radius_sq.get_d()), c = center.get_d();
      const i64 lo = static_cast<i64>(std::floor(-c - r)) - 1;
      const i64 hi = static_cast<i64>(std::ceil(-c + r)) + 1;
      for (i64 xi = lo; xi <= hi; ++xi) {
        mpq_class t = center + xi;
        mpq_class used = q[i][i] * t * t;
        if (used > remaining) continue;
        x[i] = xi;
        descend(i - 1, remaining - used);
      }
      x[i] = 0;
    };
    descend(n - 1, mpq_class(bound));
  }

  /// Nonzero values <= bound attained on Z^nvars (scaled), ascending.
  std::set<i64> represented_values(i64 bound) const {
    std::set<i64> out;
    for_each_short_vector(bound / scale_, [&](const std::vector<i64>& x) { out.insert(value(x)); });
    return out;
  }

  bool admits_degree(i64 degree) const {
    require_positive_definite();
    if (degree < 1) throw Error("invalid-argument", "degree must be positive");
    if (degree % content() != 0) return false;
    return represented_values(degree).count(degree) != 0;
  }

  /// Human-readable rendering, e.g. "8(2x0^2 - x0x1 + 2x1^2)".
  std::string to_string() const {
    std::string body;
    for (auto [m, c] : coeffs_) {
      const i64 a = c < 0 ? -c : c;
      if (body.empty()) {
        if (c < 0) body += "-";
      } else {
        body += c < 0 ? " - " : " + ";
      }
      if (a != 1) body += std::to_string(a);
      auto var = [](int i) { return "x" + std::to_string(i); };
      body += m.first == m.second ? var(m.first) + "^2" : var(m.first) + var(m.second);
    }
    return scale_ == 1 ? body : std::to_string(scale_) + "(" + body + ")";
  }

 private:
  int nvars_ = 1;
  i64 scale_ = 1;
  std::map<Monomial, i64> coeffs_;
};

}  // namespace x0n::degrees
