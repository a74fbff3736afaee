#pragma once

// Catalog of the crystallographic reflection groups the pipeline supports.

#include <string>
#include <string_view>
#include <vector>

#include "orbitspace/rational.hpp"

namespace orbitspace {

struct ReflectionGroupData {
  std::string name;
  std::size_t rank = 0;
  std::vector<int> degrees;                 // Coxeter degrees d_1 < ... < d_l
  std::vector<Rational> coeffs;             // c_a in p_a = c_a Σ_r f_r^{d_a}
  std::vector<std::vector<int>> forms;      // f_r as integer coefficient vectors
  Integer order = 0;
  int reflections = 0;                      // N
};

// Looks a group up by name, case-insensitively (E7, E8, B2, B3, A3).
// Throws Error for unknown or non-crystallographic names.
const ReflectionGroupData& catalog(std::string_view name);

std::vector<std::string> catalog_names();

struct GroupNumericsReport {
  Integer computed_order;   // Π d_a
  int computed_reflections; // l d_l / 2
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

// Checks Π d_a = |W|, Σ d_a = N + l, d_a + d_{l-a+1} = d_l + 2 and N = l d_l / 2.
GroupNumericsReport verify_group_numerics(const ReflectionGroupData& g);

// Checks the form list: correct vector length, no zero or duplicate vectors,
// closed under negation when every degree is even. Throws DataIntegrityError.
void validate_forms(const ReflectionGroupData& g);

}  // namespace orbitspace
