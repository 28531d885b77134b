#include <gtest/gtest.h>

#include <gmpxx.h>

#include <random>
#include <set>

#include "tables.hpp"
#include "x0n/autgroup.hpp"

namespace x0n::autgroup {
namespace {

using modsym::ModularSymbolSpace;

// Rational kernel dimension of the stacked matrices, by dense elimination.
std::size_t rational_kernel_dim(const std::vector<HomologyMatrix>& blocks) {
  const std::size_t n = blocks.front().size();
  std::vector<std::vector<mpq_class>> a;
  for (const auto& b : blocks)
    for (std::size_t r = 0; r < n; ++r) {
      std::vector<mpq_class> row(n);
      for (std::size_t c = 0; c < n; ++c) row[c] = static_cast<long>(b(r, c));
      a.push_back(std::move(row));
    }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n && rank < a.size(); ++c) {
    std::size_t p = rank;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const mpq_class f = a[r][c] / a[rank][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return n - rank;
}

HomologyMatrix minus_identity(HomologyMatrix a) {
  for (std::size_t i = 0; i < a.size(); ++i) a(i, i) -= 1;
  return a;
}

TEST(AutGroup, AtkinLehnerMatricesNormalize) {
  for (i64 n = 2; n <= 300; ++n)
    for (i64 q : gamma0::atkin_lehner_divisors(n))
      for (i64 variant : {0, 1, -2}) {
        const Mat2 w = atkin_lehner_matrix(n, q, variant);
        EXPECT_EQ(w.det(), q);
        EXPECT_EQ(w.a % q, 0);
        EXPECT_EQ(w.c % n, 0);
        EXPECT_EQ(w.d % q, 0);
      }
  EXPECT_THROW(atkin_lehner_matrix(72, 4), Error);
}

TEST(AutGroup, AtkinLehnerSquaresAndProducts) {
  for (i64 n = 2; n <= 100; ++n) {
    if (gamma0::genus(n) < 1) continue;
    const auto s = ModularSymbolSpace::build(n);
    const auto al = gamma0::atkin_lehner_divisors(n);
    std::map<i64, HomologyMatrix> act;
    for (i64 q : al) act.emplace(q, s.action_matrix(atkin_lehner_matrix(n, q)));
    EXPECT_TRUE(act.at(1).is_identity()) << n;
    for (i64 q : al) {
      EXPECT_TRUE((act.at(q) * act.at(q)).is_identity()) << n << " w_" << q;
      for (i64 r : al) {
        if (gcd(q, r) != 1) continue;
        EXPECT_EQ(act.at(q) * act.at(r), act.at(q * r)) << n << " " << q << " " << r;
        EXPECT_EQ(act.at(q) * act.at(r), act.at(r) * act.at(q));
      }
    }
  }
}

TEST(AutGroup, ActionIsIndependentOfGamma0Representative) {
  std::mt19937_64 rng(31);
  for (i64 n : {22, 60, 72, 87, 96, 108, 144, 180, 188, 210}) {
    const auto s = ModularSymbolSpace::build(n);
    std::vector<NormalizerGenerator> gens = generators(n);
    for (const auto& g : gens) {
      const HomologyMatrix base = s.action_matrix(g.matrix);
      for (int t = 0; t < 50; ++t) {
        const Mat2 h = testing::random_gamma0(n, rng);
        EXPECT_EQ(s.action_matrix(h * g.matrix), base) << n << " " << g.label;
        EXPECT_EQ(s.action_matrix(g.matrix * h), base) << n << " " << g.label;
      }
    }
  }
}

TEST(AutGroup, ClosureDoesNotDependOnMatrixVariant) {
  for (i64 n : {60, 72, 96, 144, 180}) {
    std::set<std::vector<i64>> first, second;
    for (i64 variant : {0, 3}) {
      ClosureOptions opts;
      opts.variant = variant;
      const auto r = involutions(n, opts);
      auto& target = variant == 0 ? first : second;
      for (const auto& el : r.elements) {
        std::vector<i64> flat;
        for (std::size_t i = 0; i < el.action.size(); ++i)
          for (std::size_t j = 0; j < el.action.size(); ++j) flat.push_back(el.action(i, j));
        target.insert(flat);
      }
    }
    EXPECT_EQ(first, second) << n;
  }
}

TEST(AutGroup, OrderIsPowerOfTwoWithoutTranslations) {
  for (i64 n = 2; n <= 200; ++n) {
    if (translation_order(n) != 1 || is_exceptional_level(n) || gamma0::genus(n) <= 1) continue;
    const auto r = involutions(n);
    EXPECT_EQ(static_cast<i64>(r.group_order), ipow(2, static_cast<int>(factorize(n).size()))) << n;
  }
}

TEST(AutGroup, TranslationOrderValues) {
  EXPECT_EQ(translation_order(720), 12);
  EXPECT_EQ(translation_order(16), 4);
  EXPECT_EQ(translation_order(64), 8);
  EXPECT_EQ(translation_order(256), 8);
  EXPECT_EQ(translation_order(9), 3);
  EXPECT_EQ(translation_order(87), 1);
}

TEST(AutGroup, FixedDimensionMatchesTraceAndRationalKernel) {
  for (i64 n : {60, 72, 87, 96, 144, 180, 252}) {
    const auto r = involutions(n);
    std::size_t checked = 0;
    for (const auto& el : r.elements) {
      if (!(el.action * el.action).is_identity() || el.action.is_identity()) continue;
      const std::size_t fixed = involution_fixed_dimension(el.action);
      const i64 dim = static_cast<i64>(el.action.size());
      EXPECT_EQ(2 * static_cast<i64>(fixed), dim + el.action.trace()) << n << " " << el.word;
      EXPECT_EQ(fixed, rational_kernel_dim({minus_identity(el.action)})) << n << " " << el.word;
      ++checked;
    }
    EXPECT_EQ(checked, r.involutions.size());
    EXPECT_GT(checked, 0u);
  }
}

// For a Klein four-group {1, a, b, c}: g(X) + 2 g(X/V) = g(X/a) + g(X/b) + g(X/c).
TEST(AutGroup, AccolaRelationForKleinGroupAt87) {
  const auto s = ModularSymbolSpace::build(87);
  const auto a = s.action_matrix(atkin_lehner_matrix(87, 3));
  const auto b = s.action_matrix(atkin_lehner_matrix(87, 29));
  const auto c = a * b;
  const auto ga = involution_fixed_dimension(a) / 2, gb = involution_fixed_dimension(b) / 2,
             gc = involution_fixed_dimension(c) / 2;
  const std::size_t gv = rational_kernel_dim({minus_identity(a), minus_identity(b)}) / 2;
  EXPECT_EQ(gamma0::genus(87) + 2 * static_cast<i64>(gv), static_cast<i64>(ga + gb + gc));
  const auto r = involutions(87);
  EXPECT_EQ(r.group_order, 4u);
  EXPECT_EQ(r.involutions.size(), 3u);
}

TEST(AutGroup, ScopeAndLimitErrors) {
  auto code_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return std::string("none");
  };
  EXPECT_EQ(code_of([] { involutions(37); }), "exceptional-level");
  EXPECT_EQ(code_of([] { involutions(63); }), "exceptional-level");
  EXPECT_EQ(code_of([] { involutions(108); }), "exceptional-level");
  EXPECT_EQ(code_of([] { involutions(11); }), "genus-too-small");
  EXPECT_EQ(code_of([] { involutions(24); }), "genus-too-small");
  ClosureOptions small;
  small.cap = 3;
  EXPECT_EQ(code_of([&] { involutions(144, small); }), "closure-limit");
  ClosureOptions bad;
  bad.generators = std::vector<NormalizerGenerator>{{"bogus", Mat2{2, 0, 0, 1}, 2}};
  EXPECT_EQ(code_of([&] { involutions(87, bad); }), "not-normalizing");
  ClosureOptions ceiling;
  ceiling.build.max_level = 100;
  EXPECT_EQ(code_of([&] { involutions(144, ceiling); }), "resource-limit");
}

}  // namespace
}  // namespace x0n::autgroup
