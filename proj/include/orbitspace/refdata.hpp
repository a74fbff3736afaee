#pragma once

// Reference flat bases and flat P̂-matrices of E7 and E8, loaded from the
// transcriptions under reference/, and exact comparison reports.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "orbitspace/flatten.hpp"
#include "orbitspace/phat.hpp"

namespace orbitspace {

struct ReferenceBundle {
  std::string group;
  RingPtr p_ring;
  RingPtr q_ring;
  BasisTransform transform;  // p -> q
  PhatMatrix flat_phat;      // row 1 rebuilt as 2 d_a q_a
};

std::filesystem::path default_reference_dir();

// Reads <dir>/<group>/transform.txt and flat_phat.txt. Throws ParseError or
// DataIntegrityError (checksum, degree, Euler row, anti-diagonal or
// triangularity violation), naming the offending entry.
ReferenceBundle load_reference(std::string_view group,
                               const std::filesystem::path& dir = default_reference_dir());

bool has_reference(std::string_view group,
                   const std::filesystem::path& dir = default_reference_dir());

struct EntryMismatch {
  std::string entry;
  // "monomial: computed vs reference" for every differing coefficient.
  std::vector<std::string> differences;
};

struct CompareReport {
  std::size_t compared = 0;
  std::size_t matched = 0;
  std::vector<EntryMismatch> mismatches;
  bool ok() const { return mismatches.empty() && compared == matched; }
};

// Entries a <= b.
CompareReport compare(const PhatMatrix& computed, const PhatMatrix& reference);
CompareReport compare(const BasisTransform& computed, const BasisTransform& reference);

}  // namespace orbitspace
