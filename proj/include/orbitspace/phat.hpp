#pragma once

// P(x) = jᵀ(x) j(x) at points and its re-expression P̂(p) in the basic
// invariants, recovered by exact interpolation.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "orbitspace/invariants.hpp"
#include "orbitspace/linalg.hpp"

namespace orbitspace {

inline constexpr std::uint64_t kDefaultSeed = 20071;
inline constexpr double kDefaultSurplus = 1.05;

// Symmetric l×l matrix of graded polynomials.
class PhatMatrix {
 public:
  explicit PhatMatrix(PolynomialMatrix entries);

  std::size_t size() const { return m_.size(); }
  const RingPtr& ring() const { return m_.ring(); }
  const Polynomial& operator()(std::size_t a, std::size_t b) const { return m_(a, b); }
  const PolynomialMatrix& matrix() const { return m_; }

  bool operator==(const PhatMatrix& other) const { return m_ == other.m_; }

 private:
  PolynomialMatrix m_;
};

struct PhatCheck {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

// Symmetry, homogeneity of entry (a,b) in degree d_a + d_b - 2 (ring
// weights), and optionally the first row P̂_1a = 2 d_a v_a.
PhatCheck check_phat(const PhatMatrix& m, bool expect_euler_row = true);

RationalMatrix gram_at(const BasicInvariantSet& s, std::span<const Rational> x);

inline constexpr int kDefaultCoordinateBound = 9;

// `count` integer points with coordinates in [-bound, bound], off every
// reflecting hyperplane (det j(x) != 0) and every hyperplane f_r·x = 0, from a
// seeded 64-bit Mersenne twister.
std::vector<std::vector<Rational>> interpolation_points(
    const ReflectionGroupData& g, std::size_t count, std::uint64_t seed,
    int bound = kDefaultCoordinateBound);

// Finds ĝ of the given weighted degree with ĝ(basis_values[k]) = values[k]
// for every sample k. Requires at least 5% more samples than monomials.
// Throws InconsistentSystemError / UnderdeterminedSystemError.
Polynomial express_in_basis(std::span<const std::vector<Rational>> basis_values,
                            std::span<const Rational> values, int degree,
                            const RingPtr& ring, SolverLane lane = SolverLane::kExact);

struct PhatOptions {
  std::uint64_t seed = kDefaultSeed;
  double surplus = kDefaultSurplus;
  unsigned jobs = 1;
  SolverLane lane = SolverLane::kModular;
  int coordinate_bound = kDefaultCoordinateBound;
};

// A rank-deficient system makes compute_phat retry with the coordinate bound
// doubled (the mirror-free points of a small box can be degenerate, as for E8
// in [-9, 9]); the bound actually used is reported.
struct PhatResult {
  PhatMatrix matrix;
  std::size_t points = 0;
  int coordinate_bound = kDefaultCoordinateBound;
};

PhatResult compute_phat(const BasicInvariantSet& s, const PhatOptions& options = {});

struct DefiningPropertyReport {
  std::size_t points = 0;
  std::vector<std::string> mismatches;
  bool ok() const { return mismatches.empty(); }
};

// Checks P̂_ab(p(x)) = P_ab(x) at `count` points drawn from a seed.
DefiningPropertyReport check_defining_property(const PhatMatrix& m,
                                               const BasicInvariantSet& s,
                                               std::size_t count, std::uint64_t seed);

}  // namespace orbitspace
