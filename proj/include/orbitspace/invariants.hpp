#pragma once

// Basic invariants p_a(x) = c_a Σ_r (f_r·x)^{d_a} of a catalog group, with a
// closed-form evaluator for values and gradients at rational points.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "orbitspace/groups.hpp"
#include "orbitspace/linalg.hpp"
#include "orbitspace/polynomial.hpp"

namespace orbitspace {

inline constexpr std::size_t kDefaultTermBudget = 50000;

struct InvariantEvaluation {
  std::vector<Rational> values;  // p_a(x)
  RationalMatrix jacobian;       // j_ia = ∂p_a/∂x_i
};

class BasicInvariantSet {
 public:
  explicit BasicInvariantSet(const ReflectionGroupData& group);

  const ReflectionGroupData& group() const { return *group_; }
  std::size_t rank() const { return group_->rank; }
  const RingPtr& x_ring() const { return x_ring_; }
  // p1..pl with the Coxeter degrees as weights.
  const RingPtr& p_ring() const { return p_ring_; }

  std::vector<Rational> values(std::span<const Rational> x) const;
  RationalMatrix gradient_rows(std::span<const Rational> x) const;
  InvariantEvaluation evaluate(std::span<const Rational> x) const;

  // Symbolic polynomials, present only if materialize() succeeded.
  const std::optional<std::vector<Polynomial>>& polys() const { return polys_; }

  // Expands every p_a in the x-ring. Throws Error if the estimated number of
  // terms of some (f·x)^{d_a} exceeds the budget.
  void materialize(std::size_t term_budget = kDefaultTermBudget);

 private:
  const ReflectionGroupData* group_;
  RingPtr x_ring_;
  RingPtr p_ring_;
  std::optional<std::vector<Polynomial>> polys_;
};

BasicInvariantSet build_basic_invariants(const ReflectionGroupData& group,
                                         bool materialize = false,
                                         std::size_t term_budget = kDefaultTermBudget);

// Upper bound on the number of terms of a degree-d form in n variables.
std::size_t dense_term_count(std::size_t variables, int degree);

}  // namespace orbitspace
