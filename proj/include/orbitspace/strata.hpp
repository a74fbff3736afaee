#pragma once

// Semialgebraic description of the strata of the orbit space through rank
// and positivity conditions on the P̂-matrix.

#include <cstddef>
#include <span>
#include <vector>

#include "orbitspace/linalg.hpp"
#include "orbitspace/phat.hpp"

namespace orbitspace {

struct StratumSystem {
  std::size_t rank = 0;
  // Minors of order rank+1 that must vanish. P̂ is symmetric, so of each
  // pair of transposed minors only the one with rows <= cols is listed.
  std::vector<PolynomialMinor> equations;
  // Principal minors of orders 1..rank that must be non-negative.
  std::vector<PolynomialMinor> nonneg;
  // Minors of order rank, at least one of which must be nonzero.
  std::vector<PolynomialMinor> witnesses;
};

StratumSystem stratum_system(const PhatMatrix& phat, std::size_t k);

// Restriction to the hyperplane v_1 = 1.
Polynomial section_p1(const Polynomial& p);
StratumSystem section_p1(const StratumSystem& system);

// Inverse of section_p1 for a polynomial that came from a homogeneous one of
// the given weighted degree: each term is completed with a power of v_1.
// Throws Error if some term cannot be completed.
Polynomial rehomogenize(const Polynomial& p, int degree);

struct PointClass {
  std::size_t rank = 0;
  bool psd = false;                // every principal minor >= 0
  bool positive_definite = false;  // psd and of full rank
};

PointClass classify_point(const PhatMatrix& phat, std::span<const Rational> point);

}  // namespace orbitspace
