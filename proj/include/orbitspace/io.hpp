#pragma once

// Statement files for P̂-matrices (`P[a,b] = ...`, a <= b) and basis
// transforms (`q1 = ...`), with `# key: value` metadata headers.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbitspace/flatten.hpp"
#include "orbitspace/phat.hpp"
#include "orbitspace/textio.hpp"

namespace orbitspace {

using Header = std::vector<std::pair<std::string, std::string>>;

std::string format_header(const Header& header);
std::string format_matrix(const PhatMatrix& m, const Header& header = {});
std::string format_transform(const BasisTransform& t, const Header& header = {});

// Parses every P[a,b] with a <= b; missing or duplicate entries are errors.
PhatMatrix parse_matrix(const Document& doc, const RingPtr& ring);

// Parses `name_a = ...` for every variable of `to`, as polynomials over `from`.
BasisTransform parse_transform(const Document& doc, const RingPtr& from, const RingPtr& to);

// Degrees from a `# degrees: 2,4,...` header line, if present.
std::optional<std::vector<int>> header_degrees(const Document& doc);

std::string join_ints(const std::vector<int>& values, char sep = ',');

}  // namespace orbitspace
