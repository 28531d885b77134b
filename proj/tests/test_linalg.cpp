#include <gtest/gtest.h>

#include <random>

#include "x0n/linalg.hpp"

namespace x0n {
namespace {

// Dense rational Gaussian elimination.
std::size_t dense_rank(std::vector<std::vector<mpq_class>> a) {
  std::size_t rank = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const mpq_class f = a[r][c] / a[rank][c];
      for (std::size_t k = 0; k < cols; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

TEST(Linalg, SparseEchelonRankMatchesDenseElimination) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + rng() % 9, cols = 1 + rng() % 9;
    std::vector<SparseEchelon::Row> sparse(rows);
    std::vector<std::vector<mpq_class>> dense(rows, std::vector<mpq_class>(cols, 0));
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) {
        if (rng() % 3 == 0) continue;
        const long v = static_cast<long>(rng() % 7) - 3;
        if (v == 0) continue;
        sparse[r][c] = v;
        dense[r][c] = v;
      }
    // duplicate a combination so rank deficiency is common
    if (rows > 2) {
      for (std::size_t c = 0; c < cols; ++c) dense[rows - 1][c] = 2 * dense[0][c] - dense[1][c];
      sparse[rows - 1].clear();
      for (std::size_t c = 0; c < cols; ++c)
        if (dense[rows - 1][c] != 0) sparse[rows - 1][c] = dense[rows - 1][c].get_num();
    }
    const SparseEchelon e(sparse, cols);
    EXPECT_EQ(e.rank(), dense_rank(dense));
    EXPECT_EQ(e.rank() + e.free_columns().size(), cols);
    for (const auto& [pc, row] : e.pivot_rows()) {
      EXPECT_EQ(row.at(pc), 1);
      for (const auto& [c, v] : row)
        if (c != pc) {
          EXPECT_FALSE(e.is_pivot(c));
        }
    }
  }
}

TEST(Linalg, ModularRankMatchesRationalRankForLargePrime) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    IntMatrix m(n);
    std::vector<std::vector<mpq_class>> dense(n, std::vector<mpq_class>(n, 0));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        const i64 v = (rng() % 2) ? static_cast<i64>(rng() % 5) - 2 : 0;
        m(r, c) = v;
        dense[r][c] = static_cast<long>(v);
      }
    EXPECT_EQ(rank_mod_p(m, 2147483629LL), dense_rank(dense));
  }
  IntMatrix two(2);
  two(0, 0) = 2;
  two(1, 1) = 2;
  EXPECT_EQ(rank_mod_p(two, 2), 0u);
  EXPECT_EQ(rank_mod_p(two, 3), 2u);
}

TEST(Linalg, IntMatrixProductAndHash) {
  IntMatrix a(2), b(2);
  a(0, 0) = 1, a(0, 1) = 2, a(1, 0) = 3, a(1, 1) = 4;
  b(0, 0) = 0, b(0, 1) = 1, b(1, 0) = -1, b(1, 1) = 0;
  const IntMatrix ab = a * b;
  EXPECT_EQ(ab(0, 0), -2);
  EXPECT_EQ(ab(0, 1), 1);
  EXPECT_EQ(ab(1, 0), -4);
  EXPECT_EQ(ab(1, 1), 3);
  EXPECT_EQ((b * b * b * b).is_identity(), true);
  EXPECT_EQ(a.hash(), IntMatrix(a).hash());
  EXPECT_EQ(a.trace(), 5);
}

}  // namespace
}  // namespace x0n
