#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <vector>

#include "x0n/arith.hpp"

namespace x0n {

/// Dense square integer matrix, row-major, with overflow-checked products.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t n) : n_(n), data_(n * n, 0) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t size() const { return n_; }
  i64& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  i64 operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }
  std::span<const i64> data() const { return data_; }

  bool is_identity() const {
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = 0; c < n_; ++c)
        if ((*this)(r, c) != (r == c ? 1 : 0)) return false;
    return true;
  }

  i64 trace() const {
    i64 t = 0;
    for (std::size_t i = 0; i < n_; ++i) t = checked_add(t, (*this)(i, i));
    return t;
  }

  IntMatrix operator*(const IntMatrix& o) const {
    if (o.n_ != n_) throw Error("invalid-argument", "matrix size mismatch");
    IntMatrix out(n_);
    std::vector<i128> acc(n_);
    for (std::size_t r = 0; r < n_; ++r) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t k = 0; k < n_; ++k) {
        const i64 x = (*this)(r, k);
        if (x == 0) continue;
        const i64* row = &o.data_[k * n_];
        for (std::size_t c = 0; c < n_; ++c) acc[c] += static_cast<i128>(x) * row[c];
      }
      for (std::size_t c = 0; c < n_; ++c) out(r, c) = narrow(acc[c]);
    }
    return out;
  }

  std::vector<i64> apply(std::span<const i64> v) const {
    std::vector<i64> out(n_);
    for (std::size_t r = 0; r < n_; ++r) {
      i128 acc = 0;
      for (std::size_t c = 0; c < n_; ++c) acc += static_cast<i128>((*this)(r, c)) * v[c];
      out[r] = narrow(acc);
    }
    return out;
  }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull;
    for (i64 x : data_) {
      h ^= static_cast<std::size_t>(x);
      h *= 1099511628211ull;
    }
    return h;
  }

  bool operator==(const IntMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<i64> data_;
};

/// Reduced row echelon form over Q with deterministic pivoting: columns are
/// scanned left to right and the pivot is the lowest-index remaining row with a
/// nonzero entry. Rows are kept sparse and eliminated fraction-free over Z
/// (content removed after each update); pivot rows are normalized to rationals
/// at the end.
class SparseEchelon {
 public:
  using Row = std::map<std::size_t, mpz_class>;

  SparseEchelon(std::vector<Row> rows, std::size_t ncols) : rows_(std::move(rows)), ncols_(ncols) {
    reduce();
  }

  std::size_t ncols() const { return ncols_; }
  std::size_t rank() const { return normalized_.size(); }
  /// pivot column -> normalized row (pivot entry 1, other entries on free columns)
  const std::map<std::size_t, std::map<std::size_t, mpq_class>>& pivot_rows() const { return normalized_; }
  bool is_pivot(std::size_t col) const { return normalized_.count(col) != 0; }

  std::vector<std::size_t> free_columns() const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < ncols_; ++c)
      if (!is_pivot(c)) out.push_back(c);
    return out;
  }

 private:
  static void remove_content(Row& row) {
    mpz_class g = 0;
    for (auto& [c, v] : row) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g > 1)
      for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  }

  void reduce() {
    std::vector<std::set<std::size_t>> rows_in_col(ncols_);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      remove_content(rows_[r]);
      for (auto& [c, v] : rows_[r]) rows_in_col[c].insert(r);
    }
    std::vector<bool> used(rows_.size(), false);
    std::map<std::size_t, std::size_t> pivot_row;
    for (std::size_t col = 0; col < ncols_; ++col) {
      std::size_t p = rows_.size();
      for (std::size_t r : rows_in_col[col])
        if (!used[r]) {
          p = r;
          break;
        }
      if (p == rows_.size()) continue;
      used[p] = true;
      pivot_row[col] = p;
      const mpz_class a = rows_[p].at(col);
      std::vector<std::size_t> targets(rows_in_col[col].begin(), rows_in_col[col].end());
      for (std::size_t r : targets) {
        if (r == p) continue;
        Row& row = rows_[r];
        const mpz_class f = row.at(col);
        mpz_class g = gcd(a, f);
        mpz_class ma = a / g, mf = f / g;
        // row <- ma * row - mf * pivot
        for (auto& [c, v] : row) v *= ma;
        for (const auto& [c, v] : rows_[p]) {
          auto it = row.find(c);
          if (it == row.end()) {
            row.emplace(c, -mf * v);
            rows_in_col[c].insert(r);
          } else {
            it->second -= mf * v;
          }
        }
        for (auto it = row.begin(); it != row.end();) {
          if (it->second == 0) {
            rows_in_col[it->first].erase(r);
            it = row.erase(it);
          } else {
            ++it;
          }
        }
        remove_content(row);
      }
    }
    for (const auto& [col, r] : pivot_row) {
      const mpq_class a = mpq_class(rows_[r].at(col));
      auto& out = normalized_[col];
      for (const auto& [c, v] : rows_[r]) {
        mpq_class q(v);
        q /= a;
        out.emplace(c, q);
      }
    }
  }

  std::vector<Row> rows_;
  std::size_t ncols_;
  std::map<std::size_t, std::map<std::size_t, mpq_class>> normalized_;
};

/// Rank over F_p of a dense integer matrix (p < 2^31).
inline std::size_t rank_mod_p(const IntMatrix& m, i64 p) {
  const std::size_t n = m.size();
  std::vector<i64> a(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a[r * n + c] = mod(m(r, c), p);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < n; ++col) {
    std::size_t piv = n;
    for (std::size_t r = rank; r < n; ++r)
      if (a[r * n + col] != 0) {
        piv = r;
        break;
      }
    if (piv == n) continue;
    for (std::size_t c = 0; c < n; ++c) std::swap(a[piv * n + c], a[rank * n + c]);
    const i64 inv = inverse_mod(a[rank * n + col], p);
    for (std::size_t r = rank + 1; r < n; ++r) {
      const i64 f = a[r * n + col] * inv % p;
      if (f == 0) continue;
      for (std::size_t c = col; c < n; ++c) a[r * n + c] = mod(a[r * n + c] - f * a[rank * n + c], p);
    }
    ++rank;
  }
  return rank;
}

}  // namespace x0n
