#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "x0n/arith.hpp"
#include "x0n/gamma0.hpp"
#include "x0n/linalg.hpp"
#include "x0n/mat2.hpp"
#include "x0n/modsym.hpp"

namespace x0n::autgroup {

using modsym::HomologyMatrix;

struct NormalizerGenerator {
  std::string label;
  Mat2 matrix;
  i64 determinant;
};

/// [[Qa, b], [Nc, Qd]] with determinant Q, for Q || N. Different variants pick
/// different solutions of Q^2 ad - N bc = Q.
inline Mat2 atkin_lehner_matrix(i64 level, i64 q, i64 variant = 0) {
  if (q < 1 || level % q != 0 || gcd(q, level / q) != 1)
    throw Error("invalid-argument", "Q must be an Atkin-Lehner divisor of N");
  const i64 cofactor = level / q;
  if (q == level) return {checked_mul(level, variant), -1, level, 0};
  // c = d = 1: Q a - (N/Q) b = 1
  const auto e = ext_gcd(q, cofactor);
  const i64 a = e.x + variant * cofactor;
  const i64 b = -e.y + variant * q;
  return {checked_mul(q, a), b, level, q};
}

/// v(N) = 2^min(3, floor(v2/2)) * 3^min(1, floor(v3/2)).
inline i64 translation_order(i64 level) {
  const int mu = std::min(3, valuation(level, 2) / 2);
  const int omega = std::min(1, valuation(level, 3) / 2);
  return ipow(2, mu) * ipow(3, omega);
}

/// Generators of Norm(Gamma0(N)) / Gamma0(N): one Atkin-Lehner involution per
/// prime power exactly dividing N, plus S_v = [1, 1/v; 0, 1] (scaled to
/// [[v, 1], [0, v]]) when v(N) > 1.
inline std::vector<NormalizerGenerator> generators(i64 level, i64 variant = 0) {
  gamma0::require_level(level);
  std::vector<NormalizerGenerator> out;
  for (auto [p, e] : factorize(level)) {
    const i64 q = ipow(p, e);
    out.push_back({"w_" + std::to_string(q), atkin_lehner_matrix(level, q, variant), q});
  }
  if (const i64 v = translation_order(level); v > 1)
    out.push_back({"S_" + std::to_string(v), Mat2{v, 1, 0, v}, v * v});
  return out;
}

struct AutElement {
  std::string word;
  HomologyMatrix action;
};

struct InvolutionReport {
  std::string label;
  std::size_t fixed_dim = 0;
  std::size_t quotient_genus = 0;
};

struct AutGroupReport {
  i64 level = 0;
  i64 genus = 0;
  std::size_t group_order = 0;
  std::vector<InvolutionReport> involutions;
  std::optional<std::size_t> min_quotient_genus;
  std::vector<AutElement> elements;  // BFS order, identity first
};

struct ClosureOptions {
  std::size_t cap = std::size_t{1} << 20;
  i64 variant = 0;
  /// Overrides the default generator list.
  std::optional<std::vector<NormalizerGenerator>> generators;
  modsym::BuildOptions build;
};

inline bool is_exceptional_level(i64 level) { return level == 37 || level == 63 || level == 108; }

inline void check_scope(i64 level, i64 genus) {
  if (is_exceptional_level(level))
    throw Error("exceptional-level",
                "Aut X0(" + std::to_string(level) + ") is larger than the normalizer quotient");
  if (genus <= 1)
    throw Error("genus-too-small", "X0(" + std::to_string(level) + ") has genus " + std::to_string(genus));
}

namespace detail {

struct SparseEntry {
  std::size_t row;
  std::size_t col;
  i64 value;
};

inline std::vector<SparseEntry> sparse(const HomologyMatrix& g) {
  std::vector<SparseEntry> out;
  for (std::size_t r = 0; r < g.size(); ++r)
    for (std::size_t c = 0; c < g.size(); ++c)
      if (g(r, c) != 0) out.push_back({r, c, g(r, c)});
  return out;
}

// a * g with g sparse
inline HomologyMatrix multiply(const HomologyMatrix& a, const std::vector<SparseEntry>& g) {
  const std::size_t n = a.size();
  HomologyMatrix out(n);
  std::vector<i128> acc(n);
  for (std::size_t r = 0; r < n; ++r) {
    std::fill(acc.begin(), acc.end(), 0);
    for (const auto& e : g) acc[e.col] += static_cast<i128>(a(r, e.row)) * e.value;
    for (std::size_t c = 0; c < n; ++c) out(r, c) = narrow(acc[c]);
  }
  return out;
}

inline HomologyMatrix shifted(const HomologyMatrix& a, i64 lambda) {
  HomologyMatrix m = a;
  for (std::size_t i = 0; i < m.size(); ++i) m(i, i) = checked_add(m(i, i), -lambda);
  return m;
}

}  // namespace detail

/// Closure of the generator actions under multiplication, deduplicated by
/// exact homology matrix. Each element keeps a shortest witness word.
inline AutGroupReport group_closure(i64 level, const modsym::ModularSymbolSpace& space,
                                    const ClosureOptions& opts = {}) {
  const i64 genus = static_cast<i64>(space.cuspidal_dimension() / 2);
  check_scope(level, genus);
  const auto gens = opts.generators ? *opts.generators : generators(level, opts.variant);
  std::vector<HomologyMatrix> gen_actions;
  std::vector<std::vector<detail::SparseEntry>> gen_sparse;
  for (const auto& g : gens) {
    gen_actions.push_back(space.action_matrix(g.matrix));
    gen_sparse.push_back(detail::sparse(gen_actions.back()));
  }

  AutGroupReport report;
  report.level = level;
  report.genus = genus;
  std::unordered_map<std::size_t, std::vector<std::size_t>> seen;
  auto insert = [&](HomologyMatrix m, std::string word) {
    const std::size_t h = m.hash();
    auto& bucket = seen[h];
    for (std::size_t idx : bucket)
      if (report.elements[idx].action == m) return;
    if (report.elements.size() >= opts.cap)
      throw Error("closure-limit", "group exceeds " + std::to_string(opts.cap) + " elements");
    bucket.push_back(report.elements.size());
    report.elements.push_back({std::move(word), std::move(m)});
  };
  insert(HomologyMatrix::identity(space.cuspidal_dimension()), "1");
  for (std::size_t head = 0; head < report.elements.size(); ++head) {
    for (std::size_t k = 0; k < gens.size(); ++k) {
      HomologyMatrix prod = detail::multiply(report.elements[head].action, gen_sparse[k]);
      const std::string& w = report.elements[head].word;
      insert(std::move(prod), w == "1" ? gens[k].label : w + "*" + gens[k].label);
    }
  }
  report.group_order = report.elements.size();
  return report;
}

/// dim ker(A - I) for an involution A. Over F_p, rank(A - I) + rank(A + I)
/// can only drop below the rational value n; when it equals n both ranks
/// agree with their rational counterparts.
inline std::size_t involution_fixed_dimension(const HomologyMatrix& a) {
  const std::size_t n = a.size();
  for (i64 p : {2147483629LL, 2147483587LL, 2147483579LL, 2147483563LL}) {
    const std::size_t minus = rank_mod_p(detail::shifted(a, 1), p);
    const std::size_t plus = rank_mod_p(detail::shifted(a, -1), p);
    if (minus + plus == n) return n - minus;
  }
  throw Error("invariant", "could not certify the fixed-space dimension");
}

/// Marks elements of exact order 2 and computes their quotient genera.
inline void analyze_involutions(AutGroupReport& report) {
  std::mt19937_64 rng(0x5eed);
  report.involutions.clear();
  report.min_quotient_genus.reset();
  for (const auto& el : report.elements) {
    const std::size_t n = el.action.size();
    if (el.action.is_identity()) continue;
    std::vector<i64> v(n);
    for (auto& x : v) x = static_cast<i64>(rng() % 1000) - 500;
    if (el.action.apply(el.action.apply(v)) != v) continue;
    if (!(el.action * el.action).is_identity()) continue;
    const std::size_t fixed = involution_fixed_dimension(el.action);
    if (fixed % 2 != 0) throw Error("invariant", "odd fixed-space dimension for " + el.word);
    report.involutions.push_back({el.word, fixed, fixed / 2});
    if (!report.min_quotient_genus || fixed / 2 < *report.min_quotient_genus)
      report.min_quotient_genus = fixed / 2;
  }
}

/// Builds the modular symbol space, the group closure, and the involution table.
inline AutGroupReport involutions(i64 level, const ClosureOptions& opts = {}) {
  check_scope(level, gamma0::genus(level));
  const auto space = modsym::ModularSymbolSpace::build(level, opts.build);
  auto report = group_closure(level, space, opts);
  analyze_involutions(report);
  return report;
}

}  // namespace x0n::autgroup
