#include "orbitspace/io.hpp"

#include <cstdio>
#include <set>
#include <sstream>

#include "orbitspace/errors.hpp"

namespace orbitspace {

std::string format_header(const Header& header) {
  std::string out;
  for (const auto& [k, v] : header) out += "# " + k + ": " + v + "\n";
  return out;
}

std::string format_matrix(const PhatMatrix& m, const Header& header) {
  std::string out = format_header(header);
  for (std::size_t a = 0; a < m.size(); ++a) {
    for (std::size_t b = a; b < m.size(); ++b) {
      out += "P[" + std::to_string(a + 1) + "," + std::to_string(b + 1) +
             "] = " + format_polynomial(m(a, b)) + "\n";
    }
  }
  return out;
}

std::string format_transform(const BasisTransform& t, const Header& header) {
  std::string out = format_header(header);
  for (std::size_t a = 0; a < t.size(); ++a) {
    out += t.to->name(a) + " = " + format_polynomial(t.maps[a]) + "\n";
  }
  return out;
}

namespace {

bool parse_entry_name(const std::string& name, std::size_t& a, std::size_t& b) {
  unsigned x = 0;
  unsigned y = 0;
  char tail = 0;
  if (std::sscanf(name.c_str(), "P[%u,%u]%c", &x, &y, &tail) != 2) return false;
  a = x;
  b = y;
  return true;
}

}  // namespace

PhatMatrix parse_matrix(const Document& doc, const RingPtr& ring) {
  const std::size_t l = ring->arity();
  PolynomialMatrix m(ring, l);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& st : doc.statements) {
    std::size_t a = 0;
    std::size_t b = 0;
    if (!parse_entry_name(st.name, a, b) || a < 1 || b < a || b > l) {
      throw ParseError("line " + std::to_string(st.line) + ": '" + st.name +
                       "' is not a matrix entry P[a,b] with 1 <= a <= b <= " +
                       std::to_string(l));
    }
    if (!seen.emplace(a, b).second) {
      throw ParseError("line " + std::to_string(st.line) + ": duplicate entry " + st.name);
    }
    try {
      m(a - 1, b - 1) = parse_polynomial(st.expression, ring);
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(st.line) + " (" + st.name + "): " + e.what());
    }
    m(b - 1, a - 1) = m(a - 1, b - 1);
  }
  for (std::size_t a = 1; a <= l; ++a) {
    for (std::size_t b = a; b <= l; ++b) {
      if (!seen.contains({a, b})) {
        throw ParseError("missing entry P[" + std::to_string(a) + "," + std::to_string(b) + "]");
      }
    }
  }
  return PhatMatrix(std::move(m));
}

BasisTransform parse_transform(const Document& doc, const RingPtr& from, const RingPtr& to) {
  BasisTransform t{from, to, std::vector<Polynomial>(to->arity(), Polynomial(from))};
  std::vector<bool> seen(to->arity(), false);
  for (const auto& st : doc.statements) {
    const auto idx = to->find(st.name);
    if (!idx) {
      throw ParseError("line " + std::to_string(st.line) + ": unknown target variable '" +
                       st.name + "'");
    }
    if (seen[*idx]) throw ParseError("line " + std::to_string(st.line) + ": duplicate " + st.name);
    seen[*idx] = true;
    try {
      t.maps[*idx] = parse_polynomial(st.expression, from);
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(st.line) + " (" + st.name + "): " + e.what());
    }
  }
  for (std::size_t a = 0; a < seen.size(); ++a) {
    if (!seen[a]) throw ParseError("missing definition of " + to->name(a));
  }
  return t;
}

std::optional<std::vector<int>> header_degrees(const Document& doc) {
  const std::string value = doc.header_value("degrees");
  if (value.empty()) return std::nullopt;
  std::vector<int> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw ParseError("bad degree list '" + value + "'");
    }
  }
  return out;
}

std::string join_ints(const std::vector<int>& values, char sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace orbitspace
