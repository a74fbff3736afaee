#pragma once

// End-to-end runs shared by the command-line tool and the acceptance suite.

#include <filesystem>
#include <string>

#include "orbitspace/flatten.hpp"
#include "orbitspace/phat.hpp"
#include "orbitspace/refdata.hpp"

namespace orbitspace {

// Leading coefficients of the free scales (see free_scale_indices) of a
// known flat transform.
ScaleConvention convention_from(const BasisTransform& reference);

struct FlatRun {
  PhatResult phat;
  FlatnessResult flatness;
  BasisTransform transform;  // normalized p -> q
  BasisTransform inverse;    // q -> p
  PhatMatrix flat_phat;
  FlatMetric metric;
};

FlatRun run_flat_pipeline(const BasicInvariantSet& s, const PhatOptions& options,
                          const ScaleConvention& convention);

struct VerifyReport {
  std::string group;
  std::size_t parameters = 0;
  CompareReport reference_phat;  // P̂(p) pushed through the reference transform
  CompareReport flat_transform;  // independent flat solve vs reference transform
  CompareReport flat_phat;       // independent flat P̂(q) vs reference matrix
  bool ok() const { return reference_phat.ok() && flat_transform.ok() && flat_phat.ok(); }
};

VerifyReport verify_group(const std::string& group, const PhatOptions& options,
                          const std::filesystem::path& reference_dir = default_reference_dir());

}  // namespace orbitspace
