#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "x0n/arith.hpp"
#include "x0n/linalg.hpp"
#include "x0n/mat2.hpp"
#include "x0n/p1.hpp"

namespace x0n::modsym {

/// Geodesic path {alpha, beta} between two cusps.
struct PathSymbol {
  Cusp alpha;
  Cusp beta;
};

/// Coordinates with respect to the free Manin-symbol basis of the quotient.
using Vector = std::vector<i64>;

/// Action of a normalizer element on cuspidal coordinates (size 2g).
using HomologyMatrix = IntMatrix;

struct BuildOptions {
  i64 max_level = 1000;
};

/// Weight-2 modular symbols for Gamma0(N): the free module on P^1(Z/N) modulo
/// x + xS = 0 and x + xT + xT^2 = 0, together with the boundary map to cusp
/// classes and its kernel (the cuspidal subspace, isomorphic to H1(X0(N), Q)).
///
/// Every Manin symbol is expressed in the free basis with integer
/// coefficients; build() rejects a level whose presentation is not integral,
/// which keeps every action matrix on the cuspidal lattice integral.
class ModularSymbolSpace {
 public:
  static ModularSymbolSpace build(i64 level, BuildOptions opts = {}) {
    if (level < 1) throw Error("invalid-argument", "level must be positive");
    if (level > opts.max_level)
      throw Error("resource-limit", "level " + std::to_string(level) + " exceeds ceiling " +
                                        std::to_string(opts.max_level));
    ModularSymbolSpace s(level);
    s.present_quotient();
    s.index_cusps();
    s.build_boundary();
    return s;
  }

  i64 level() const { return level_; }
  const P1List& p1() const { return p1_; }
  std::size_t num_generators() const { return p1_.size(); }
  /// Dimension of the full modular symbol space.
  std::size_t dimension() const { return free_.size(); }
  /// Manin symbol index underlying each free basis vector.
  const std::vector<std::size_t>& free_generators() const { return free_; }

  /// Expansion of Manin symbol i as sparse (basis index, coefficient) pairs.
  std::span<const std::pair<std::size_t, i64>> expansion(std::size_t symbol) const {
    return expansion_[symbol];
  }

  std::size_t cusp_class_count() const { return cusp_count_; }
  std::size_t boundary_rank() const { return boundary_pivots_.size(); }
  std::size_t cuspidal_dimension() const { return cuspidal_basis_.size(); }
  const std::vector<Vector>& cuspidal_basis() const { return cuspidal_basis_; }

  /// Gamma0(N)-class of a cusp: invariant (gcd(q, N), p * q/gcd(q, N) mod gcd(d, N/d)).
  std::size_t cusp_class(const Cusp& z) const {
    const i64 d = gcd(z.den, level_);
    const i64 t = gcd(d, level_ / d);
    const i64 u = static_cast<i64>(static_cast<i128>(mod(z.num, t)) * mod(z.den / d, t) % t);
    for (const auto& block : cusp_blocks_)
      if (block.denominator == d) return static_cast<std::size_t>(block.ids[u]);
    throw Error("invariant", "cusp denominator not found");
  }

  Vector manin_symbol_vector(std::size_t symbol) const {
    Vector v(dimension(), 0);
    add_symbol(v, symbol, 1);
    return v;
  }

  /// {alpha, beta} in the free basis via continued fractions (Manin's trick).
  Vector path_to_vector(const PathSymbol& path) const {
    Vector v(dimension(), 0);
    add_zero_to(v, path.beta, 1);
    add_zero_to(v, path.alpha, -1);
    return v;
  }

  /// Boundary image over cusp classes.
  std::vector<i64> boundary_of(std::span<const i64> v) const {
    std::vector<i64> out(cusp_count_, 0);
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (v[j] == 0) continue;
      const auto [to, from] = boundary_cols_[j];
      out[to] = checked_add(out[to], v[j]);
      out[from] = checked_add(out[from], -v[j]);
    }
    return out;
  }

  bool is_cuspidal(std::span<const i64> v) const {
    for (i64 x : boundary_of(v))
      if (x != 0) return false;
    return true;
  }

  /// Coordinates of a cuspidal vector in cuspidal_basis(): its entries on the
  /// non-pivot columns of the boundary echelon form.
  std::vector<i64> cuspidal_coordinates(std::span<const i64> v) const {
    if (!is_cuspidal(v)) throw Error("invalid-argument", "vector is not cuspidal");
    std::vector<i64> out;
    out.reserve(kernel_columns_.size());
    for (std::size_t c : kernel_columns_) out.push_back(v[c]);
    return out;
  }

  /// Action of an integral matrix with positive determinant on the cuspidal
  /// subspace. The induced map on all Manin symbols is checked against both
  /// Manin relations and against a second choice of lifts; failure means the
  /// matrix does not normalize Gamma0(N) (up to scalars).
  HomologyMatrix action_matrix(const Mat2& m) const {
    if (m.det() <= 0) throw Error("non-positive-determinant", "det(M) must be positive");
    const std::size_t n = num_generators();
    std::vector<Vector> image(n);
    const Mat2 shift{1, 1, 0, 1};
    for (std::size_t i = 0; i < n; ++i) {
      const Mat2 g = p1_.lift_to_sl2z(i);
      image[i] = path_to_vector({m.act(g.act(Cusp::integer(0))), m.act(g.act(Cusp::infinity()))});
      const Mat2 h = shift * g;
      if (image[i] != path_to_vector({m.act(h.act(Cusp::integer(0))), m.act(h.act(Cusp::infinity()))}))
        throw Error("not-normalizing", "induced map depends on the lift of a Manin symbol");
    }
    const std::size_t k = dimension();
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t s = p1_.apply_s(i), t = p1_.apply_t(i), tt = p1_.apply_t(t);
      for (std::size_t j = 0; j < k; ++j) {
        if (image[i][j] + image[s][j] != 0 || image[i][j] + image[t][j] + image[tt][j] != 0)
          throw Error("not-normalizing", "induced map violates a Manin relation");
      }
    }
    const std::size_t dim = cuspidal_dimension();
    HomologyMatrix out(dim);
    Vector acc(k);
    for (std::size_t col = 0; col < dim; ++col) {
      std::fill(acc.begin(), acc.end(), 0);
      const Vector& v = cuspidal_basis_[col];
      for (std::size_t j = 0; j < k; ++j) {
        if (v[j] == 0) continue;
        const Vector& img = image[free_[j]];
        for (std::size_t r = 0; r < k; ++r) acc[r] = checked_add(acc[r], checked_mul(v[j], img[r]));
      }
      if (!is_cuspidal(acc)) throw Error("not-normalizing", "image of a cuspidal symbol is not cuspidal");
      for (std::size_t r = 0; r < dim; ++r) out(r, col) = acc[kernel_columns_[r]];
    }
    return out;
  }

 private:
  explicit ModularSymbolSpace(i64 level) : level_(level), p1_(level) {}

  void add_symbol(Vector& v, std::size_t symbol, i64 sign) const {
    for (const auto& [j, c] : expansion_[symbol]) v[j] = checked_add(v[j], checked_mul(sign, c));
  }

  // v += sign * {0, z}
  void add_zero_to(Vector& v, const Cusp& z, i64 sign) const {
    const std::size_t identity = p1_.index(0, 1);
    if (z.is_infinity()) {
      add_symbol(v, identity, sign);
      return;
    }
    if (z.num == 0) return;
    add_symbol(v, identity, sign);
    // Convergents p_k/q_k of z; (p_{-2}, q_{-2}) = (0, 1), (p_{-1}, q_{-1}) = (1, 0).
    i64 p_prev2 = 0, q_prev2 = 1, p_prev = 1, q_prev = 0;
    i64 num = z.num, den = z.den;
    i64 parity = -1;  // (-1)^(k-1) at k = 0
    while (den != 0) {
      i64 a = num / den;
      if (num % den != 0 && (num < 0) != (den < 0)) --a;  // floor
      const i64 rem = num - a * den;
      const i64 p = checked_add(checked_mul(a, p_prev), p_prev2);
      const i64 q = checked_add(checked_mul(a, q_prev), q_prev2);
      add_symbol(v, p1_.index(mod(parity * q, level_), mod(q_prev, level_)), sign);
      p_prev2 = p_prev;
      q_prev2 = q_prev;
      p_prev = p;
      q_prev = q;
      num = den;
      den = rem;
      parity = -parity;
    }
  }

  void present_quotient() {
    const std::size_t n = p1_.size();
    // Two-term relations: x = -xS, or x = 0 when x = xS.
    std::vector<long> rep(n, -2);
    std::vector<i64> sign(n, 0);
    std::vector<std::size_t> reps;
    std::vector<long> rep_index(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
      if (rep[i] != -2) continue;
      const std::size_t j = p1_.apply_s(i);
      if (j == i) {
        rep[i] = -1;
        continue;
      }
      rep[i] = static_cast<long>(i);
      sign[i] = 1;
      rep[j] = static_cast<long>(i);
      sign[j] = -1;
      rep_index[i] = static_cast<long>(reps.size());
      reps.push_back(i);
    }
    // Three-term relations on the S-representatives.
    std::vector<SparseEchelon::Row> rows;
    std::vector<bool> seen(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      if (seen[i]) continue;
      const std::size_t t = p1_.apply_t(i), tt = p1_.apply_t(t);
      seen[i] = seen[t] = seen[tt] = true;
      std::map<std::size_t, i64> acc;
      for (std::size_t x : {i, t, tt}) {
        if (rep[x] < 0) continue;
        acc[static_cast<std::size_t>(rep_index[rep[x]])] += sign[x];
      }
      SparseEchelon::Row row;
      for (auto [c, v] : acc)
        if (v != 0) row.emplace(c, mpz_class(static_cast<long>(v)));
      if (!row.empty()) rows.push_back(std::move(row));
    }
    SparseEchelon ech(std::move(rows), reps.size());
    const auto free_cols = ech.free_columns();
    std::vector<long> free_pos(reps.size(), -1);
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
      free_pos[free_cols[k]] = static_cast<long>(k);
      free_.push_back(reps[free_cols[k]]);
    }
    // Expansion of each S-representative.
    std::vector<std::vector<std::pair<std::size_t, i64>>> rep_expansion(reps.size());
    for (std::size_t c = 0; c < reps.size(); ++c) {
      if (free_pos[c] >= 0) {
        rep_expansion[c] = {{static_cast<std::size_t>(free_pos[c]), 1}};
        continue;
      }
      for (const auto& [col, q] : ech.pivot_rows().at(c)) {
        if (col == c) continue;
        mpq_class coeff = -q;
        if (coeff.get_den() != 1)
          throw Error("non-integral-presentation",
                      "level " + std::to_string(level_) + " has a non-integral Manin symbol expansion");
        if (!coeff.get_num().fits_slong_p()) throw Error("overflow", "expansion coefficient");
        rep_expansion[c].emplace_back(static_cast<std::size_t>(free_pos[col]), coeff.get_num().get_si());
      }
    }
    expansion_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (rep[i] < 0) continue;
      for (auto [j, c] : rep_expansion[static_cast<std::size_t>(rep_index[rep[i]])])
        expansion_[i].emplace_back(j, c * sign[i]);
    }
  }

  void index_cusps() {
    int next = 0;
    for (i64 d : divisors(level_)) {
      CuspBlock block{d, std::vector<int>(static_cast<std::size_t>(gcd(d, level_ / d)), -1)};
      const i64 t = gcd(d, level_ / d);
      for (i64 u = 0; u < t; ++u)
        if (gcd(u, t) == 1 || t == 1) block.ids[u] = next++;
      cusp_blocks_.push_back(std::move(block));
    }
    cusp_count_ = static_cast<std::size_t>(next);
  }

  void build_boundary() {
    const std::size_t k = dimension();
    boundary_cols_.resize(k);
    std::vector<SparseEchelon::Row> rows(cusp_count_);
    for (std::size_t j = 0; j < k; ++j) {
      const Mat2 g = p1_.lift_to_sl2z(free_[j]);
      const std::size_t to = cusp_class(g.act(Cusp::infinity()));
      const std::size_t from = cusp_class(g.act(Cusp::integer(0)));
      boundary_cols_[j] = {to, from};
      if (to == from) continue;
      rows[to][j] += 1;
      rows[from][j] -= 1;
    }
    std::erase_if(rows, [](const auto& r) { return r.empty(); });
    SparseEchelon ech(std::move(rows), k);
    for (const auto& [col, row] : ech.pivot_rows()) boundary_pivots_.push_back(col);
    kernel_columns_ = ech.free_columns();
    for (std::size_t fc : kernel_columns_) {
      Vector v(k, 0);
      v[fc] = 1;
      for (const auto& [pcol, row] : ech.pivot_rows()) {
        auto it = row.find(fc);
        if (it == row.end()) continue;
        if (it->second.get_den() != 1) throw Error("invariant", "boundary echelon form is not integral");
        v[pcol] = -it->second.get_num().get_si();
      }
      cuspidal_basis_.push_back(std::move(v));
    }
  }

  struct CuspBlock {
    i64 denominator;
    std::vector<int> ids;  // residue u mod t -> class id
  };

  i64 level_;
  P1List p1_;
  std::vector<std::size_t> free_;
  std::vector<std::vector<std::pair<std::size_t, i64>>> expansion_;
  std::vector<CuspBlock> cusp_blocks_;
  std::size_t cusp_count_ = 0;
  std::vector<std::pair<std::size_t, std::size_t>> boundary_cols_;
  std::vector<std::size_t> boundary_pivots_;
  std::vector<std::size_t> kernel_columns_;
  std::vector<Vector> cuspidal_basis_;
};

}  // namespace x0n::modsym
