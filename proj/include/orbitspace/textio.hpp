#pragma once

// Canonical text form of polynomials and of statement files.
//
//   NAME = TERM +/- TERM ...
//   TERM = [coef][*]var^exp[*var^exp...]      (coef: integer or a/b)
//
// Terms print in descending graded-lex order. The parser accepts a superset
// (parentheses, implicit multiplication, division by constants, powers), so
// factored transcriptions expand to the same canonical value.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "orbitspace/polynomial.hpp"

namespace orbitspace {

std::string format_polynomial(const Polynomial& p);

Polynomial parse_polynomial(std::string_view text, const RingPtr& ring);

struct Statement {
  std::string name;
  std::string expression;
  std::size_t line = 0;
};

// A statement file: `#` header lines followed by `NAME = expression` lines.
struct Document {
  std::vector<std::string> header;  // without the leading '#'
  std::vector<Statement> statements;

  // Value of a `# key: value` header line, empty if absent.
  std::string header_value(std::string_view key) const;
  const Statement* find(std::string_view name) const;
};

Document parse_document(std::string_view text);
Document read_document(const std::filesystem::path& path);

// FNV-1a over the statement lines (name, " = ", expression, '\n'), used to
// detect edits of transcribed data files.
std::uint64_t statement_checksum(const Document& doc);
std::string checksum_hex(std::uint64_t value);

}  // namespace orbitspace
