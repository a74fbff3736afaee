#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "orbitspace/errors.hpp"
#include "orbitspace/linalg.hpp"
#include "orbitspace/textio.hpp"
#include "support/oracle.hpp"

using namespace orbitspace;

namespace {

RationalMatrix random_matrix(oracle::Random& rng, std::size_t r, std::size_t c, long bound) {
  RationalMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.rational(bound);
  }
  return m;
}

// Leibniz expansion.
Rational leibniz(const RationalMatrix& m) {
  std::vector<std::size_t> perm(m.rows());
  std::iota(perm.begin(), perm.end(), 0);
  Rational total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
      for (std::size_t j = i + 1; j < perm.size(); ++j) inversions += perm[i] > perm[j];
    }
    Rational term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < perm.size(); ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

PolynomialMatrix random_poly_matrix(oracle::Random& rng, const RingPtr& ring, std::size_t n) {
  PolynomialMatrix m(ring, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.polynomial(ring, 2, 2);
  }
  return m;
}

}  // namespace

TEST(Solve, Identity) {
  const std::vector<Rational> b{1, 2, 3};
  EXPECT_EQ(solve_unique(RationalMatrix::identity(3), b), b);
  EXPECT_EQ(solve_unique(RationalMatrix::identity(3), b, SolverLane::kModular), b);
}

TEST(Solve, OneByOne) {
  RationalMatrix a(1, 1);
  a(0, 0) = 2;
  const std::vector<Rational> b{5};
  EXPECT_EQ(solve_unique(a, b), std::vector<Rational>{Rational(5, 2)});
}

TEST(Solve, Inconsistent) {
  RationalMatrix a(3, 2);
  a(0, 0) = 1;
  a(1, 1) = 1;
  a(2, 0) = 1;
  a(2, 1) = 1;
  const std::vector<Rational> b{1, 1, 3};
  EXPECT_EQ(solve_linear(a, b).status, SolveStatus::kInconsistent);
  EXPECT_EQ(solve_linear(a, b, SolverLane::kModular).status, SolveStatus::kInconsistent);
  EXPECT_THROW(solve_unique(a, b), InconsistentSystemError);
}

TEST(Solve, Underdetermined) {
  RationalMatrix a(2, 2);
  a(0, 0) = 1;
  a(0, 1) = 2;
  a(1, 0) = 2;
  a(1, 1) = 4;
  const std::vector<Rational> b{1, 2};
  const auto s = solve_linear(a, b);
  EXPECT_EQ(s.status, SolveStatus::kUnderdetermined);
  EXPECT_EQ(s.rank, 1u);
  EXPECT_THROW(solve_unique(a, b, SolverLane::kModular), UnderdeterminedSystemError);
}

TEST(SolveProperty, RecoversPlantedSolution) {
  oracle::Random rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + trial % 7;
    const std::size_t rows = n + static_cast<std::size_t>(rng.integer(0, 4));
    const RationalMatrix a = random_matrix(rng, rows, n, 1000);
    if (rank(a) != n) continue;
    const auto v = rng.point(n, 100000);
    const auto b = a * std::span<const Rational>(v);
    EXPECT_EQ(solve_unique(a, b, SolverLane::kExact), v);
    EXPECT_EQ(solve_unique(a, b, SolverLane::kModular), v);
  }
}

TEST(SolveProperty, ModularHandlesLargeEntries) {
  oracle::Random rng(22);
  const std::size_t n = 12;
  RationalMatrix a(n + 1, n);
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = oracle::frac(power(Integer(rng.integer(2, 9)), 40 + i + j), rng.integer(1, 50));
    }
  }
  std::vector<Rational> v;
  for (std::size_t j = 0; j < n; ++j) v.push_back(oracle::frac(power(Integer(3), 30 + j), 7 + j));
  const auto b = a * std::span<const Rational>(v);
  EXPECT_EQ(solve_unique(a, b, SolverLane::kModular), v);
}

TEST(Determinant, MatchesLeibniz) {
  oracle::Random rng(23);
  for (std::size_t n = 1; n <= 6; ++n) {
    const RationalMatrix m = random_matrix(rng, n, n, 30);
    EXPECT_EQ(determinant(m), leibniz(m)) << n;
  }
  RationalMatrix singular(2, 2);
  singular(0, 0) = 1;
  singular(0, 1) = 2;
  singular(1, 0) = 3;
  singular(1, 1) = 6;
  EXPECT_EQ(determinant(singular), 0);
  EXPECT_EQ(rank(singular), 1u);
}

TEST(Definiteness, PrincipalMinors) {
  RationalMatrix ones(2, 2);
  ones(0, 0) = ones(0, 1) = ones(1, 0) = ones(1, 1) = 1;
  EXPECT_TRUE(is_positive_semidefinite(ones));
  EXPECT_FALSE(is_positive_definite(ones));
  RationalMatrix neg(2, 2);
  neg(1, 1) = -1;
  EXPECT_FALSE(is_positive_semidefinite(neg));
  EXPECT_TRUE(is_positive_definite(RationalMatrix::identity(3)));
}

TEST(PolyDet, Diagonal) {
  const RingPtr x = GradedRing::uniform("x", 2);
  PolynomialMatrix m(x, 2);
  m(0, 0) = parse_polynomial("x1^2 + 3", x);
  m(1, 1) = parse_polynomial("x2 - x1", x);
  EXPECT_EQ(poly_det(m), m(0, 0) * m(1, 1));
}

TEST(PolyDetProperty, Multiplicative) {
  oracle::Random rng(24);
  const RingPtr x = GradedRing::uniform("x", 2);
  for (std::size_t n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 3; ++trial) {
      const PolynomialMatrix a = random_poly_matrix(rng, x, n);
      const PolynomialMatrix b = random_poly_matrix(rng, x, n);
      EXPECT_EQ(poly_det(a * b), poly_det(a) * poly_det(b));
    }
  }
}

TEST(PolyDetProperty, AgreesWithNumericDeterminant) {
  oracle::Random rng(25);
  const RingPtr x = GradedRing::uniform("x", 2);
  const PolynomialMatrix a = random_poly_matrix(rng, x, 4);
  for (int trial = 0; trial < 5; ++trial) {
    const auto pt = rng.point(2);
    EXPECT_EQ(poly_det(a).evaluate(pt), determinant(a.evaluate(pt)));
  }
}

TEST(Minors, CountsAndOrder) {
  oracle::Random rng(26);
  const RingPtr x = GradedRing::uniform("x", 2);
  const PolynomialMatrix a = random_poly_matrix(rng, x, 4);
  EXPECT_EQ(poly_minors(a, 2).size(), 36u);
  EXPECT_EQ(poly_minors(a, 2, true).size(), 21u);
  EXPECT_EQ(poly_minors(a, 4).size(), 1u);
  EXPECT_EQ(poly_minors(a, 4)[0].value, poly_det(a));
  const auto principal = poly_principal_minors(a, 1);
  ASSERT_EQ(principal.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(principal[i].value, a(i, i));
  const auto minors = poly_minors(a, 3);
  const auto pt = rng.point(2);
  const RationalMatrix at = a.evaluate(pt);
  for (const auto& m : minors) {
    EXPECT_EQ(m.value.evaluate(pt), determinant(at.submatrix(m.rows, m.cols)));
  }
}

TEST(RankAt, ZeroMatrix) {
  const RingPtr x = GradedRing::uniform("x", 3);
  const PolynomialMatrix z(x, 3);
  EXPECT_EQ(rank_at(z, std::vector<Rational>{1, 2, 3}), 0u);
}

TEST(RankAtProperty, InvariantUnderSymmetricPermutation) {
  oracle::Random rng(27);
  const RingPtr x = GradedRing::uniform("x", 2);
  for (int trial = 0; trial < 10; ++trial) {
    PolynomialMatrix b = random_poly_matrix(rng, x, 2);
    PolynomialMatrix m = b.transposed() * b;  // 2x2 Gram, embed in 4x4
    PolynomialMatrix big(x, 4);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) big(i, j) = m(i % 2, j % 2);
    }
    std::vector<std::size_t> perm{0, 1, 2, 3};
    const auto pt = rng.point(2);
    const std::size_t r = rank_at(big, pt);
    do {
      PolynomialMatrix p(x, 4);
      for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) p(i, j) = big(perm[i], perm[j]);
      }
      EXPECT_EQ(rank_at(p, pt), r);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST(Subsets, Lexicographic) {
  const auto s = index_subsets(4, 2);
  ASSERT_EQ(s.size(), 6u);
  EXPECT_EQ(s.front(), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(s.back(), (std::vector<std::size_t>{2, 3}));
  EXPECT_EQ(index_subsets(3, 0).size(), 1u);
}
