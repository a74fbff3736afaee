#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "orbitspace/polynomial.hpp"
#include "orbitspace/rational.hpp"

namespace orbitspace {

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  std::span<const Rational> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  RationalMatrix transposed() const;
  // Square submatrix on the given (sorted) row and column indices.
  RationalMatrix submatrix(std::span<const std::size_t> rows,
                           std::span<const std::size_t> cols) const;

  bool is_zero() const;
  bool is_symmetric() const;

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend std::vector<Rational> operator*(const RationalMatrix& a,
                                         std::span<const Rational> v);
  bool operator==(const RationalMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

enum class SolveStatus { kUnique, kInconsistent, kUnderdetermined };

struct LinearSolution {
  SolveStatus status = SolveStatus::kUnique;
  std::vector<Rational> x;  // filled only for kUnique
  std::size_t rank = 0;
};

enum class SolverLane {
  kExact,     // fraction-free elimination over the integers
  kModular,   // multi-modular solve + rational reconstruction, verified exactly
};

// Exact solve of A x = b with A allowed to be overdetermined. Surplus rows are
// checked for consistency, never dropped.
LinearSolution solve_linear(const RationalMatrix& a, std::span<const Rational> b,
                            SolverLane lane = SolverLane::kExact);

// Same contract; the result of the modular lane is accepted only after an
// exact check against every row, otherwise the exact lane decides.
LinearSolution solve_linear_modular(const RationalMatrix& a,
                                    std::span<const Rational> b);

// Throws InconsistentSystemError / UnderdeterminedSystemError.
std::vector<Rational> solve_unique(const RationalMatrix& a, std::span<const Rational> b,
                                   SolverLane lane = SolverLane::kExact);

std::size_t rank(const RationalMatrix& m);
Rational determinant(const RationalMatrix& m);

// All principal minors are >= 0.
bool is_positive_semidefinite(const RationalMatrix& m);
// All leading principal minors are > 0 (Sylvester).
bool is_positive_definite(const RationalMatrix& m);

// Square matrix of polynomials over one ring.
class PolynomialMatrix {
 public:
  PolynomialMatrix(RingPtr ring, std::size_t n);

  std::size_t size() const { return n_; }
  const RingPtr& ring() const { return ring_; }
  Polynomial& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  const Polynomial& operator()(std::size_t r, std::size_t c) const {
    return data_[r * n_ + c];
  }

  RationalMatrix evaluate(std::span<const Rational> point) const;
  PolynomialMatrix transposed() const;
  bool is_symmetric() const;

  friend PolynomialMatrix operator*(const PolynomialMatrix& a, const PolynomialMatrix& b);
  bool operator==(const PolynomialMatrix& other) const;

 private:
  RingPtr ring_;
  std::size_t n_;
  std::vector<Polynomial> data_;
};

struct PolynomialMinor {
  std::vector<std::size_t> rows;  // 0-based, increasing
  std::vector<std::size_t> cols;
  Polynomial value;
};

Polynomial poly_det(const PolynomialMatrix& m);

// Minors of the given order over all row/column subsets, rows then columns in
// lexicographic order. With symmetric_only the pairs with cols < rows are
// skipped (they repeat the transposed minor).
std::vector<PolynomialMinor> poly_minors(const PolynomialMatrix& m, std::size_t order,
                                         bool symmetric_only = false);

// Principal minors of the given order (rows == cols), lexicographic.
std::vector<PolynomialMinor> poly_principal_minors(const PolynomialMatrix& m,
                                                   std::size_t order);

std::size_t rank_at(const PolynomialMatrix& m, std::span<const Rational> point);

// Increasing k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> index_subsets(std::size_t n, std::size_t k);

}  // namespace orbitspace
