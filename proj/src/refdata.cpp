#include "orbitspace/refdata.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "orbitspace/errors.hpp"
#include "orbitspace/groups.hpp"
#include "orbitspace/io.hpp"

#ifndef ORBITSPACE_REFERENCE_DIR
#define ORBITSPACE_REFERENCE_DIR "reference"
#endif

namespace orbitspace {

std::filesystem::path default_reference_dir() { return ORBITSPACE_REFERENCE_DIR; }

namespace {

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

Document read_checked(const std::filesystem::path& path) {
  Document doc = read_document(path);
  const std::string stored = doc.header_value("checksum");
  const std::string actual = checksum_hex(statement_checksum(doc));
  if (stored.empty()) throw DataIntegrityError(path.string() + ": no checksum header");
  if (stored != actual) {
    throw DataIntegrityError(path.string() + ": checksum " + actual + " differs from recorded " +
                             stored + " (the transcription was edited)");
  }
  return doc;
}

}  // namespace

bool has_reference(std::string_view group, const std::filesystem::path& dir) {
  const auto base = dir / upper(group);
  return std::filesystem::exists(base / "transform.txt") &&
         std::filesystem::exists(base / "flat_phat.txt");
}

ReferenceBundle load_reference(std::string_view group, const std::filesystem::path& dir) {
  const std::string name = upper(group);
  const ReflectionGroupData& g = catalog(name);
  const auto base = dir / name;
  if (!has_reference(name, dir)) {
    throw Error("no reference data for " + name + " under " + dir.string());
  }
  const std::size_t l = g.rank;
  const RingPtr p_ring = GradedRing::graded("p", g.degrees);
  const RingPtr q_ring = GradedRing::graded("q", g.degrees);

  const Document tdoc = read_checked(base / "transform.txt");
  BasisTransform transform = parse_transform(tdoc, p_ring, q_ring);
  try {
    check_transform(transform);
  } catch (const DataIntegrityError& e) {
    throw DataIntegrityError(name + " reference transform: " + e.what());
  }

  Document pdoc = read_checked(base / "flat_phat.txt");
  for (const auto& st : pdoc.statements) {
    if (st.name.rfind("P[1,", 0) == 0) {
      throw DataIntegrityError(name + " reference: " + st.name +
                               " is implied by the Euler row and must not be listed");
    }
  }
  std::vector<Statement> euler;
  for (std::size_t a = 0; a < l; ++a) {
    euler.push_back({"P[1," + std::to_string(a + 1) + "]",
                     std::to_string(2 * g.degrees[a]) + "*" + q_ring->name(a), 0});
  }
  pdoc.statements.insert(pdoc.statements.begin(), euler.begin(), euler.end());
  PhatMatrix flat = parse_matrix(pdoc, q_ring);

  const PhatCheck check = check_phat(flat, true);
  if (!check.ok()) throw DataIntegrityError(name + " reference: " + check.problems.front());
  const Rational target = 2 * g.degrees.back();
  for (std::size_t a = 0; a < l; ++a) {
    for (std::size_t b = a; b < l; ++b) {
      const Polynomial d = flat(a, b).derivative(l - 1);
      const bool anti = a + b + 1 == l;
      const bool ok = anti ? d == Polynomial::constant(q_ring, target) : d.is_zero();
      if (!ok) {
        throw DataIntegrityError(name + " reference: P[" + std::to_string(a + 1) + "," +
                                 std::to_string(b + 1) + "] has " + q_ring->name(l - 1) +
                                 "-part " + format_polynomial(d) + ", expected " +
                                 (anti ? to_string(target) : std::string("0")));
      }
    }
  }
  return {name, p_ring, q_ring, std::move(transform), std::move(flat)};
}

namespace {

EntryMismatch diff(const std::string& entry, const Polynomial& computed,
                   const Polynomial& reference) {
  EntryMismatch m{entry, {}};
  std::map<Monomial, std::pair<Rational, Rational>, std::greater<>> coeffs;
  for (const auto& t : computed.terms()) coeffs[t.monomial].first = t.coefficient;
  for (const auto& t : reference.terms()) coeffs[t.monomial].second = t.coefficient;
  for (const auto& [mono, pair] : coeffs) {
    if (pair.first == pair.second) continue;
    m.differences.push_back(format_polynomial(Polynomial::monomial(computed.ring(), mono)) +
                            ": computed " + to_string(pair.first) + " vs reference " +
                            to_string(pair.second));
  }
  return m;
}

}  // namespace

CompareReport compare(const PhatMatrix& computed, const PhatMatrix& reference) {
  require_same_ring(computed.ring(), reference.ring(), "compare");
  CompareReport r;
  for (std::size_t a = 0; a < computed.size(); ++a) {
    for (std::size_t b = a; b < computed.size(); ++b) {
      ++r.compared;
      if (computed(a, b) == reference(a, b)) {
        ++r.matched;
      } else {
        r.mismatches.push_back(diff("P[" + std::to_string(a + 1) + "," + std::to_string(b + 1) + "]",
                                    computed(a, b), reference(a, b)));
      }
    }
  }
  return r;
}

CompareReport compare(const BasisTransform& computed, const BasisTransform& reference) {
  require_same_ring(computed.from, reference.from, "compare");
  require_same_ring(computed.to, reference.to, "compare");
  CompareReport r;
  for (std::size_t a = 0; a < computed.size(); ++a) {
    ++r.compared;
    if (computed.maps[a] == reference.maps[a]) {
      ++r.matched;
    } else {
      r.mismatches.push_back(diff(computed.to->name(a), computed.maps[a], reference.maps[a]));
    }
  }
  return r;
}

}  // namespace orbitspace
