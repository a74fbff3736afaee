#pragma once

// Triangular changes of integrity basis, the transformation rule of the
// P̂-matrix, flat bases and their normalization.

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "orbitspace/linalg.hpp"
#include "orbitspace/phat.hpp"

namespace orbitspace {

// q_a = maps[a](v) with v the variables of `from`; the result names the
// variables of `to`. Both rings carry the same weights.
struct BasisTransform {
  RingPtr from;
  RingPtr to;
  std::vector<Polynomial> maps;

  std::size_t size() const { return maps.size(); }
  // Coefficient of from-variable a in maps[a].
  Rational leading(std::size_t a) const;
  // J_ab = ∂maps[b]/∂v_a, in the `from` ring.
  PolynomialMatrix jacobian() const;
  // maps[a] evaluated at a point of the `from` space.
  std::vector<Rational> apply(std::span<const Rational> point) const;

  bool operator==(const BasisTransform& other) const;
};

// Throws DataIntegrityError unless maps[a] is homogeneous of degree w_a,
// depends only on v_1..v_a and has a nonzero leading coefficient.
void check_transform(const BasisTransform& t);

BasisTransform identity_transform(const RingPtr& from, const RingPtr& to);

// q_a = scales[a] * v_a.
BasisTransform scaling_transform(const RingPtr& from, const RingPtr& to,
                                 std::span<const Rational> scales);

struct TransformParameter {
  std::size_t target;  // index a of the map the parameter belongs to
  Monomial monomial;   // monomial of degree w_a in v_1..v_{a-1}
};

// q_a = v_a + Σ z_k m_k over every monomial of degree w_a in v_1..v_{a-1}.
struct ParameterizedTransform {
  RingPtr from;
  RingPtr to;
  std::vector<TransformParameter> parameters;

  std::size_t count() const { return parameters.size(); }
  BasisTransform instantiate(std::span<const Rational> z) const;
};

// Throws Error if the weights are not strictly increasing.
ParameterizedTransform generic_unit_transform(const RingPtr& from, const RingPtr& to);

// The polynomial inverse (from `to` back to `from`), by back-substitution.
BasisTransform invert_transform(const BasisTransform& t);

// second ∘ first: from first.from to second.to.
BasisTransform compose(const BasisTransform& first, const BasisTransform& second);

// P̂(q) = Jᵀ P̂(v) J with v replaced by the inverse map.
PhatMatrix transform_phat(const PhatMatrix& phat, const BasisTransform& t);

struct FlatMetric {
  PolynomialMatrix a;  // A_ab = ∂P̂_ab/∂v_l
  bool constant = false;
  bool nondegenerate = false;
  bool flat() const { return constant && nondegenerate; }
};

FlatMetric flat_metric(const PhatMatrix& phat);

struct FlatnessResult {
  BasisTransform transform;  // unit-leading, from the P̂ ring to q1..ql
  std::size_t parameters = 0;
  std::vector<std::size_t> stage_equations;  // equations per coordinate
};

// Finds the unique unit-leading triangular transform to a flat basis. Each
// flat coordinate t_c = v_c + Σ z_k m_k solves the linear system
// ∂_a∂_b t - Σ_e Γ^e_ab ∂_e t = 0, with Γ the Levi-Civita connection of the
// metric whose inverse is A = ∂P̂/∂v_l. Throws InconsistentSystemError or
// UnderdeterminedSystemError (with the coordinate index) on failure.
FlatnessResult solve_flatness(const PhatMatrix& phat, SolverLane lane = SolverLane::kExact);

struct ScaleConvention {
  // Constant of v_l in the anti-diagonal entries; 0 means 2 d_l.
  Rational anti_diagonal = 0;
  // Prescribed leading coefficients, by 0-based variable index.
  std::map<std::size_t, Rational> leading;
};

// Variables whose scale the anti-diagonal constraint leaves free once q_1 is
// fixed: q_l and the first member of each pair (a, l+1-a), 1 < a < l+1-a.
// 0-based.
std::vector<std::size_t> free_scale_indices(std::size_t l);

// Rescales a flat transform so every anti-diagonal entry of the flat
// P̂-matrix has v_l-coefficient equal to the target. q_1 keeps leading
// coefficient 1 unless prescribed. Free scales come from the convention or
// default to leading coefficient 1 (for odd l, q_l is chosen so that the
// middle variable keeps leading coefficient 1); the partner of each pair
// follows from the constraint. Throws Error if the convention is
// unreachable or inconsistent.
BasisTransform normalize_scales(const BasisTransform& flat, const PhatMatrix& phat,
                                const ScaleConvention& convention = {});

}  // namespace orbitspace
